#ifndef SFP_COMPLEX_HPP
#define SFP_COMPLEX_HPP

#include <optional>
#include <string>
#include <vector>

#include "sfp/algebra.hpp"

namespace sfp {

/// Matrix with entries in an algebra's ambient polynomial ring (kept in normal form).
template <Field K>
class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(const AlgebraPtr<K>& A, std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, A->zero()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Poly<K>& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Poly<K>& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Poly<K>> column(std::size_t c) const {
        std::vector<Poly<K>> v;
        for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
        return v;
    }
    void append_column(const std::vector<Poly<K>>& col) {
        std::vector<Poly<K>> next;
        next.reserve(rows_ * (cols_ + 1));
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) next.push_back((*this)(r, c));
            next.push_back(col[r]);
        }
        data_ = std::move(next);
        ++cols_;
    }
    bool is_zero() const {
        for (const auto& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Rows of "[a, b; c, d]" form.
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r) s += "; ";
            for (std::size_t c = 0; c < cols_; ++c) s += (c ? ", " : "") + (*this)(r, c).to_string();
        }
        return s + "]";
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Poly<K>> data_;
};

/// a * b, reduced in A.
template <Field K>
PolyMatrix<K> multiply(const AlgebraPtr<K>& A, const PolyMatrix<K>& a, const PolyMatrix<K>& b) {
    if (a.cols() != b.rows()) throw InvariantError("matrix shape mismatch in product");
    PolyMatrix<K> c(A, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Poly<K> s = A->zero();
            for (std::size_t k = 0; k < a.cols(); ++k)
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) s += a(i, k) * b(k, j);
            c(i, j) = A->normal_form(s);
        }
    return c;
}

/// Graded free complex F_0 <- F_1 <- ... <- F_n over an algebra. F_i has basis
/// elements of internal degrees shifts[i]; diffs[i-1] is d_i : F_i -> F_{i-1}.
template <Field K>
struct FreeComplex {
    AlgebraPtr<K> algebra;
    std::vector<std::vector<int>> shifts;
    std::vector<PolyMatrix<K>> diffs;
    bool verified = false;
    bool minimal = false;

    std::size_t length() const { return diffs.size(); }
    std::size_t rank(std::size_t i) const { return i < shifts.size() ? shifts[i].size() : 0; }
    const PolyMatrix<K>& d(std::size_t i) const { return diffs.at(i - 1); }
    std::vector<std::size_t> ranks() const {
        std::vector<std::size_t> r;
        for (const auto& s : shifts) r.push_back(s.size());
        return r;
    }
};

/// First failure of d_{i-1} d_i = 0, as a readable message.
template <Field K>
std::optional<std::string> square_defect(const FreeComplex<K>& C) {
    for (std::size_t i = 2; i <= C.length(); ++i) {
        PolyMatrix<K> sq = multiply(C.algebra, C.d(i - 1), C.d(i));
        for (std::size_t r = 0; r < sq.rows(); ++r)
            for (std::size_t c = 0; c < sq.cols(); ++c)
                if (!sq(r, c).is_zero())
                    return "d" + std::to_string(i - 1) + "*d" + std::to_string(i) + " has entry (" + std::to_string(r) +
                           "," + std::to_string(c) + ") = " + sq(r, c).to_string() + " != 0";
    }
    return std::nullopt;
}

/// Checks shapes, homogeneity against the shifts and d^2 = 0; sets the minimal flag.
template <Field K>
FreeComplex<K> verify_complex(FreeComplex<K> C) {
    const AlgebraPtr<K>& A = C.algebra;
    if (C.shifts.size() != C.diffs.size() + 1) throw InputError("complex needs one shift list per module");
    C.minimal = true;
    for (std::size_t i = 1; i <= C.length(); ++i) {
        auto& m = C.diffs[i - 1];
        if (m.rows() != C.rank(i - 1) || m.cols() != C.rank(i))
            throw InputError("d" + std::to_string(i) + " has shape " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(C.rank(i - 1)) + "x" +
                             std::to_string(C.rank(i)));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                m(r, c) = A->normal_form(m(r, c));
                const Poly<K>& p = m(r, c);
                if (p.is_zero()) continue;
                auto deg = p.homogeneous_degree();
                int want = C.shifts[i][c] - C.shifts[i - 1][r];
                if (!deg || *deg != want)
                    throw InputError("entry " + p.to_string() + " of d" + std::to_string(i) +
                                     " does not have degree " + std::to_string(want));
                if (!A->field().is_zero(p.constant_term())) C.minimal = false;
            }
    }
    if (auto defect = square_defect(C)) throw InputError("not a complex: " + *defect);
    C.verified = true;
    return C;
}

/// Builds a complex from its differentials, deriving shifts from the entries with
/// F_0 generated in degree 0 (or `shifts0`). A column with no nonzero entry is
/// given the smallest shift of the target plus one.
template <Field K>
FreeComplex<K> make_complex(const AlgebraPtr<K>& A, std::vector<PolyMatrix<K>> diffs,
                            std::optional<std::vector<int>> shifts0 = std::nullopt) {
    FreeComplex<K> C{A, {}, std::move(diffs), false, false};
    std::size_t r0 = C.diffs.empty() ? (shifts0 ? shifts0->size() : 1) : C.diffs[0].rows();
    C.shifts.push_back(shifts0 ? *shifts0 : std::vector<int>(r0, 0));
    for (std::size_t i = 1; i <= C.length(); ++i) {
        const auto& m = C.diffs[i - 1];
        const auto& prev = C.shifts[i - 1];
        if (m.rows() != prev.size()) throw InputError("d" + std::to_string(i) + " has the wrong number of rows");
        std::vector<int> s(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::optional<int> shift;
            for (std::size_t r = 0; r < m.rows() && !shift; ++r) {
                Poly<K> p = A->normal_form(m(r, c));
                if (p.is_zero()) continue;
                auto deg = p.homogeneous_degree();
                if (!deg) throw InputError("entry " + p.to_string() + " of d" + std::to_string(i) + " is not homogeneous");
                shift = prev[r] + *deg;
            }
            s[c] = shift ? *shift : (prev.empty() ? 0 : *std::min_element(prev.begin(), prev.end())) + 1;
        }
        C.shifts.push_back(std::move(s));
    }
    return C;
}

/// Position of each basis block inside the degree-e piece of a graded free module.
template <Field K>
struct FreeSlice {
    std::vector<std::size_t> offset;
    std::size_t dim = 0;

    FreeSlice(const AlgebraPtr<K>& A, const std::vector<int>& shifts, int e) {
        for (int s : shifts) {
            offset.push_back(dim);
            dim += A->dim(e - s);
        }
    }
};

/// Coordinates of a module element (one polynomial per basis element) at degree e.
template <Field K>
Vec<K> element_coords(const AlgebraPtr<K>& A, const std::vector<int>& shifts, const std::vector<Poly<K>>& elem,
                      int e) {
    FreeSlice<K> slice(A, shifts, e);
    Vec<K> v(slice.dim, A->field().zero());
    for (std::size_t a = 0; a < shifts.size(); ++a) {
        Vec<K> part = A->coords(elem[a], e - shifts[a]);
        std::copy(part.begin(), part.end(), v.begin() + static_cast<std::ptrdiff_t>(slice.offset[a]));
    }
    return v;
}

template <Field K>
std::vector<Poly<K>> element_from_coords(const AlgebraPtr<K>& A, const std::vector<int>& shifts, const Vec<K>& v,
                                         int e) {
    FreeSlice<K> slice(A, shifts, e);
    std::vector<Poly<K>> out;
    for (std::size_t a = 0; a < shifts.size(); ++a) {
        Vec<K> part(v.begin() + static_cast<std::ptrdiff_t>(slice.offset[a]),
                    v.begin() + static_cast<std::ptrdiff_t>(slice.offset[a] + A->dim(e - shifts[a])));
        out.push_back(A->from_coords(part, e - shifts[a]));
    }
    return out;
}

/// Matrix of the degree-e component of a homogeneous map given by `m`
/// from the free module with `src` shifts to the one with `dst` shifts.
template <Field K>
Matrix<K> degree_matrix(const AlgebraPtr<K>& A, const PolyMatrix<K>& m, const std::vector<int>& dst,
                        const std::vector<int>& src, int e) {
    FreeSlice<K> in(A, src, e), out(A, dst, e);
    Matrix<K> M(A->field(), out.dim, in.dim);
    for (std::size_t c = 0; c < src.size(); ++c) {
        const auto& mus = A->basis(e - src[c]);
        for (std::size_t j = 0; j < mus.size(); ++j) {
            Poly<K> mu = Poly<K>::monomial(A->ring(), mus[j], A->field().one());
            std::size_t col = in.offset[c] + j;
            for (std::size_t r = 0; r < dst.size(); ++r) {
                if (m(r, c).is_zero()) continue;
                Vec<K> part = A->coords(m(r, c) * mu, e - dst[r]);
                for (std::size_t k = 0; k < part.size(); ++k) M(out.offset[r] + k, col) = part[k];
            }
        }
    }
    return M;
}

/// Degree-e matrix of d_i : (F_i)_e -> (F_{i-1})_e.
template <Field K>
Matrix<K> differential_slice(const FreeComplex<K>& C, std::size_t i, int e) {
    return degree_matrix(C.algebra, C.d(i), C.shifts[i - 1], C.shifts[i], e);
}

template <Field K>
void require_within_truncation(const AlgebraPtr<K>& A, int d) {
    if (A->truncation() && d > *A->truncation())
        throw InputError("internal degree " + std::to_string(d) + " exceeds the truncation " +
                         std::to_string(*A->truncation()) + " of " + A->name());
}

/// dim H_i(C)_e for e = 0..d, computed as dim ker(d_i)_e - rank(d_{i+1})_e.
template <Field K>
std::vector<std::size_t> homology_dims(const FreeComplex<K>& C, std::size_t i, int d) {
    require_within_truncation(C.algebra, d);
    if (i >= C.shifts.size()) throw InputError("homological degree beyond the complex");
    std::vector<std::size_t> out;
    for (int e = 0; e <= d; ++e) {
        std::size_t n = FreeSlice<K>(C.algebra, C.shifts[i], e).dim;
        std::size_t ker = i == 0 ? n : n - rank(differential_slice(C, i, e));
        std::size_t im = i + 1 <= C.length() ? rank(differential_slice(C, i + 1, e)) : 0;
        out.push_back(ker - im);
    }
    return out;
}

/// A cycle of F_i in internal degree e that is not a boundary, when there is one.
template <Field K>
std::optional<std::vector<Poly<K>>> homology_witness(const FreeComplex<K>& C, std::size_t i, int e) {
    const AlgebraPtr<K>& A = C.algebra;
    std::size_t n = FreeSlice<K>(A, C.shifts[i], e).dim;
    EchelonSpan<K> bounds(A->field(), n);
    if (i + 1 <= C.length()) {
        Matrix<K> M = differential_slice(C, i + 1, e);
        for (std::size_t c = 0; c < M.cols(); ++c) bounds.insert(M.column(c));
    }
    std::vector<Vec<K>> cycles;
    if (i == 0) {
        for (std::size_t k = 0; k < n; ++k) {
            Vec<K> v(n, A->field().zero());
            v[k] = A->field().one();
            cycles.push_back(std::move(v));
        }
    } else {
        cycles = nullspace(differential_slice(C, i, e));
    }
    for (const auto& z : cycles)
        if (!bounds.contains(z)) return element_from_coords(A, C.shifts[i], z, e);
    return std::nullopt;
}

/// Entrywise image of the differentials along a verified morphism.
template <Field K>
FreeComplex<K> base_change(const FreeComplex<K>& C, const AlgebraMorphism<K>& q) {
    if (q.source != C.algebra) throw InputError("base change along a morphism from a different algebra");
    if (!q.verified) throw InputError("base change needs a verified morphism");
    FreeComplex<K> out{q.target, C.shifts, {}, false, false};
    for (const auto& m : C.diffs) {
        PolyMatrix<K> n(q.target, m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) n(r, c) = q.apply(m(r, c));
        out.diffs.push_back(std::move(n));
    }
    if (C.verified && q.is_graded()) return verify_complex(std::move(out));
    return out;
}

/// The complex over k obtained by keeping constant parts of the differentials:
/// F tensor_R k, one graded slice per internal degree.
template <Field K>
std::vector<std::size_t> tensor_residue_homology(const FreeComplex<K>& C, std::size_t i, int d) {
    const K& k = C.algebra->field();
    std::vector<std::size_t> out(static_cast<std::size_t>(d) + 1, 0);
    auto block = [&](std::size_t j, int e) {
        // d_j restricted to basis elements of internal degree e.
        std::vector<std::size_t> cols, rows;
        for (std::size_t c = 0; c < C.rank(j); ++c)
            if (C.shifts[j][c] == e) cols.push_back(c);
        for (std::size_t r = 0; r < C.rank(j - 1); ++r)
            if (C.shifts[j - 1][r] == e) rows.push_back(r);
        Matrix<K> M(k, rows.size(), cols.size());
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < cols.size(); ++b) M(a, b) = C.d(j)(rows[a], cols[b]).constant_term();
        return M;
    };
    for (int e = 0; e <= d; ++e) {
        std::size_t n = 0;
        for (int s : C.shifts[i]) n += s == e;
        std::size_t ker = i == 0 ? n : n - rank(block(i, e));
        std::size_t im = i + 1 <= C.length() ? rank(block(i + 1, e)) : 0;
        out[static_cast<std::size_t>(e)] = ker - im;
    }
    return out;
}

}  // namespace sfp

#endif  // SFP_COMPLEX_HPP
