#ifndef SFP_LINALG_HPP
#define SFP_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "sfp/field.hpp"

namespace sfp {

template <Field K>
using Vec = std::vector<Scalar<K>>;

/// Dense matrix over an exact field, row-major.
template <Field K>
class Matrix {
  public:
    Matrix(const K& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const K& field() const { return field_; }

    Scalar<K>& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar<K>& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void set_column(std::size_t c, const Vec<K>& v) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }
    Vec<K> column(std::size_t c) const {
        Vec<K> v(rows_, field_.zero());
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    Vec<K> apply(const Vec<K>& x) const {
        Vec<K> y(rows_, field_.zero());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!field_.is_zero(x[c])) y[r] = y[r] + (*this)(r, c) * x[c];
        return y;
    }

    /// Reduced row echelon form in place; returns pivot columns in order.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && field_.is_zero((*this)(p, c))) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(p, k), (*this)(r, k));
            Scalar<K> inv = field_.inv((*this)(r, c));
            for (std::size_t k = c; k < cols_; ++k) (*this)(r, k) = (*this)(r, k) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || field_.is_zero((*this)(i, c))) continue;
                Scalar<K> f = (*this)(i, c);
                for (std::size_t k = c; k < cols_; ++k) (*this)(i, k) = (*this)(i, k) - f * (*this)(r, k);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

  private:
    K field_;
    std::size_t rows_, cols_;
    std::vector<Scalar<K>> data_;
};

template <Field K>
std::size_t rank(Matrix<K> m) {
    return m.rref().size();
}

/// Canonical nullspace basis: one vector per free column (ascending), with a 1
/// in that column and zeros in the other free columns.
template <Field K>
std::vector<Vec<K>> nullspace(Matrix<K> m) {
    const K& f = m.field();
    std::vector<std::size_t> piv = m.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<Vec<K>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<K> v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <Field K>
bool is_zero_vec(const K& f, const Vec<K>& v) {
    for (const auto& x : v)
        if (!f.is_zero(x)) return false;
    return true;
}

/// Incrementally maintained span of vectors in echelon form. Optionally tracks,
/// for each stored row, its expression in terms of the inserted vectors.
template <Field K>
class EchelonSpan {
  public:
    EchelonSpan(const K& field, std::size_t dim) : field_(field), dim_(dim) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient_dim() const { return dim_; }
    std::size_t inserted() const { return inserted_; }

    /// Residual of v after reduction against the stored rows.
    Vec<K> residual(Vec<K> v) const {
        Vec<K> dummy;
        reduce_into(v, dummy, false);
        return v;
    }
    bool contains(const Vec<K>& v) const { return is_zero_vec(field_, residual(v)); }

    /// Inserts v; returns true when v was independent of the current span.
    bool insert(Vec<K> v) {
        Vec<K> comb(inserted_ + 1, field_.zero());
        comb[inserted_] = field_.one();
        ++inserted_;
        for (auto& c : combos_) c.resize(inserted_, field_.zero());
        reduce_into(v, comb, true);
        std::size_t p = 0;
        while (p < dim_ && field_.is_zero(v[p])) ++p;
        if (p == dim_) return false;
        Scalar<K> inv = field_.inv(v[p]);
        for (auto& x : v) x = x * inv;
        for (auto& x : comb) x = x * inv;
        rows_.push_back(std::move(v));
        combos_.push_back(std::move(comb));
        pivots_.push_back(p);
        return true;
    }

    /// Coefficients c with v = sum c_i (i-th inserted vector), if v is in the span.
    std::optional<Vec<K>> express(const Vec<K>& v) const {
        Vec<K> r = v;
        Vec<K> coeff(inserted_, field_.zero());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Scalar<K> f = r[pivots_[i]];
            if (field_.is_zero(f)) continue;
            for (std::size_t k = 0; k < dim_; ++k) r[k] = r[k] - f * rows_[i][k];
            for (std::size_t k = 0; k < inserted_; ++k) coeff[k] = coeff[k] + f * combos_[i][k];
        }
        if (!is_zero_vec(field_, r)) return std::nullopt;
        return coeff;
    }

  private:
    void reduce_into(Vec<K>& v, Vec<K>& comb, bool track) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Scalar<K> f = v[pivots_[i]];
            if (field_.is_zero(f)) continue;
            for (std::size_t k = 0; k < dim_; ++k) v[k] = v[k] - f * rows_[i][k];
            if (track)
                for (std::size_t k = 0; k < combos_[i].size(); ++k) comb[k] = comb[k] - f * combos_[i][k];
        }
    }

    K field_;
    std::size_t dim_;
    std::size_t inserted_ = 0;
    std::vector<Vec<K>> rows_;
    std::vector<Vec<K>> combos_;
    std::vector<std::size_t> pivots_;
};

}  // namespace sfp

#endif  // SFP_LINALG_HPP
