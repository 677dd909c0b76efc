#ifndef SFP_RESOLUTION_HPP
#define SFP_RESOLUTION_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sfp/complex.hpp"

namespace sfp {

/// Graded module coker(F_1 -> F_0): generators in the given degrees, relations as
/// columns whose entries lie in m.
template <Field K>
struct ModulePresentation {
    std::vector<int> generator_degrees;
    std::vector<std::vector<Poly<K>>> relations;

    /// R/(gens).
    static ModulePresentation cyclic(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& gens) {
        ModulePresentation M{{0}, {}};
        for (const auto& g : gens) M.relations.push_back({g});
        return M;
    }
    /// The residue field k = R/m.
    static ModulePresentation residue_field(const AlgebraPtr<K>& R) {
        return cyclic(R, R->maximal_ideal_generators());
    }
};

struct BettiTable {
    std::map<std::pair<int, int>, std::size_t> entries;  // (i, j) -> beta_ij, nonzero only
    int certified_i = 0;
    int certified_j = 0;

    std::size_t at(int i, int j) const {
        auto it = entries.find({i, j});
        return it == entries.end() ? 0 : it->second;
    }
    /// Coefficients of the Poincare polynomial up to t^certified_i.
    std::vector<std::size_t> poincare() const {
        std::vector<std::size_t> p(static_cast<std::size_t>(certified_i) + 1, 0);
        for (const auto& [ij, b] : entries) p[static_cast<std::size_t>(ij.first)] += b;
        return p;
    }
};

template <Field K>
struct Resolution {
    FreeComplex<K> complex;
    BettiTable betti;
};

template <Field K>
BettiTable betti_from_shifts(const FreeComplex<K>& C, int n, int d) {
    BettiTable t;
    t.certified_i = n;
    t.certified_j = d;
    for (int i = 0; i <= n && i < static_cast<int>(C.shifts.size()); ++i)
        for (int s : C.shifts[static_cast<std::size_t>(i)])
            if (s <= d) ++t.entries[{i, s}];
    return t;
}

/// Internal degree (n+1) * max(weights, relation degrees) wanted for homological degree n.
template <Field K>
int resolution_horizon(const AlgebraPtr<K>& R, int n) {
    int top = 1;
    for (std::size_t i = 0; i < R->nvars(); ++i) top = std::max(top, R->weight(i));
    for (const auto& g : R->relations()) top = std::max(top, g.max_degree());
    return (n + 1) * top;
}

/// The horizon, capped at the truncation.
template <Field K>
int default_internal_bound(const AlgebraPtr<K>& R, int n) {
    int d = resolution_horizon(R, n);
    if (R->truncation()) d = std::min(d, *R->truncation());
    return d;
}

/// Minimal graded free resolution F_0 <- ... <- F_n of M, exact in internal
/// degrees <= d. Built degree by degree: the new generators of F_i in degree e
/// are the kernel vectors of d_{i-1} (or the given relations, for i = 1) that are
/// independent of the submodule spanned by the generators already chosen.
template <Field K>
Resolution<K> minimal_free_resolution(const AlgebraPtr<K>& R, const ModulePresentation<K>& M, int n, int d) {
    require_within_truncation(R, d);
    if (n < 0 || d < 0) throw InputError("resolution bounds must be nonnegative");
    const K& k = R->field();
    std::vector<std::pair<int, std::vector<Poly<K>>>> rels;  // (degree, column)
    for (const auto& col : M.relations) {
        if (col.size() != M.generator_degrees.size()) throw InputError("relation has the wrong number of entries");
        std::vector<Poly<K>> c;
        std::optional<int> deg;
        for (std::size_t r = 0; r < col.size(); ++r) {
            Poly<K> p = R->normal_form(col[r]);
            if (!k.is_zero(p.constant_term()))
                throw InputError("presentation entry " + p.to_string() + " is not in the maximal ideal");
            if (!p.is_zero()) {
                auto h = p.homogeneous_degree();
                if (!h) throw InputError("presentation entry " + p.to_string() + " is not homogeneous");
                int cd = *h + M.generator_degrees[r];
                if (deg && *deg != cd) throw InputError("presentation column is not homogeneous");
                deg = cd;
            }
            c.push_back(std::move(p));
        }
        if (deg) rels.emplace_back(*deg, std::move(c));
    }
    std::stable_sort(rels.begin(), rels.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    FreeComplex<K> C{R, {M.generator_degrees}, {}, false, false};
    for (int i = 1; i <= n; ++i) {
        const std::vector<int>& prev = C.shifts[static_cast<std::size_t>(i - 1)];
        PolyMatrix<K> di(R, prev.size(), 0);
        std::vector<int> shifts;
        std::size_t next_rel = 0;
        for (int e = 0; e <= d; ++e) {
            std::size_t target_dim = FreeSlice<K>(R, prev, e).dim;
            if (target_dim == 0 && i > 1) continue;
            EchelonSpan<K> span(k, target_dim);
            Matrix<K> cur = degree_matrix(R, di, prev, shifts, e);
            for (std::size_t c = 0; c < cur.cols(); ++c) span.insert(cur.column(c));
            std::vector<Vec<K>> candidates;
            if (i == 1) {
                for (; next_rel < rels.size() && rels[next_rel].first == e; ++next_rel)
                    candidates.push_back(element_coords(R, prev, rels[next_rel].second, e));
            } else {
                FreeComplex<K> partial{R, {C.shifts[static_cast<std::size_t>(i - 2)], prev}, {C.diffs.back()}, false, false};
                candidates = nullspace(differential_slice(partial, 1, e));
            }
            for (auto& v : candidates)
                if (span.insert(v)) {
                    di.append_column(element_from_coords(R, prev, v, e));
                    shifts.push_back(e);
                }
        }
        C.diffs.push_back(std::move(di));
        C.shifts.push_back(std::move(shifts));
    }
    C = verify_complex(std::move(C));
    if (!C.minimal) throw InvariantError("resolution came out non-minimal");
    return {C, betti_from_shifts(C, n, d)};
}

/// Truncated Poincare polynomial of M: coefficient i is dim Tor_i(k, M) counted in
/// internal degrees <= d.
template <Field K>
std::vector<std::size_t> poincare_poly(const AlgebraPtr<K>& R, const ModulePresentation<K>& M, int n, int d) {
    return minimal_free_resolution(R, M, n, d).betti.poincare();
}

/// dim Tor_i(k, M) read off F tensor k by homology, independent of the shift bookkeeping.
template <Field K>
BettiTable betti_by_tensoring(const FreeComplex<K>& F, int n, int d) {
    BettiTable t;
    t.certified_i = n;
    t.certified_j = d;
    for (int i = 0; i <= n && i < static_cast<int>(F.shifts.size()); ++i) {
        auto h = tensor_residue_homology(F, static_cast<std::size_t>(i), d);
        for (int j = 0; j <= d; ++j)
            if (h[static_cast<std::size_t>(j)]) t.entries[{i, j}] = h[static_cast<std::size_t>(j)];
    }
    return t;
}

/// First homological degree i in [from, to] where H_i is nonzero in internal degree <= d.
template <Field K>
std::optional<std::pair<int, int>> first_nonvanishing_homology(const FreeComplex<K>& C, int from, int to, int d) {
    for (int i = from; i <= to && i < static_cast<int>(C.shifts.size()); ++i) {
        auto h = homology_dims(C, static_cast<std::size_t>(i), d);
        for (int e = 0; e <= d; ++e)
            if (h[static_cast<std::size_t>(e)]) return std::pair{i, e};
    }
    return std::nullopt;
}

}  // namespace sfp

#endif  // SFP_RESOLUTION_HPP
