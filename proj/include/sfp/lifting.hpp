#ifndef SFP_LIFTING_HPP
#define SFP_LIFTING_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfp/constructions.hpp"
#include "sfp/flatness.hpp"
#include "sfp/search.hpp"

namespace sfp {

/// F_0 <- F_1 <- ... <- F_n over A with d_i = cycle[(i-1) mod len] as 1x1 matrices.
template <Field K>
FreeComplex<K> periodic_complex(const AlgebraPtr<K>& A, const std::vector<Poly<K>>& cycle, int n) {
    if (cycle.empty()) throw InputError("periodic complex needs at least one differential");
    if (n < 0) throw InputError("complex length must be nonnegative");
    std::vector<PolyMatrix<K>> diffs;
    for (int i = 0; i < n; ++i) {
        PolyMatrix<K> m(A, 1, 1);
        m(0, 0) = A->normal_form(cycle[static_cast<std::size_t>(i) % cycle.size()]);
        diffs.push_back(std::move(m));
    }
    return make_complex(A, std::move(diffs));
}

/// R, an ideal I in m_R, the quotient Rbar = R/I with pi : R -> Rbar, and a minimal
/// free resolution F over Rbar of the module in question, exact in degrees <= d.
template <Field K>
struct LiftingProblem {
    AlgebraPtr<K> R;
    std::vector<Poly<K>> I;
    AlgebraPtr<K> Rbar;
    AlgebraMorphism<K> pi;
    ModulePresentation<K> module;
    FreeComplex<K> F;
    int n = 0;
    int d = 0;
};

template <Field K>
LiftingProblem<K> make_lifting_problem(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& I, int n,
                                       std::optional<int> d = std::nullopt,
                                       std::optional<ModulePresentation<K>> module = std::nullopt) {
    if (n < 1) throw InputError("lifting problems need homological range at least 1");
    for (const auto& g : I)
        if (!R->field().is_zero(R->normal_form(g).constant_term()))
            throw InputError("ideal generator " + g.to_string() + " is not in the maximal ideal");
    auto Rbar = quotient_algebra(R, I);
    auto pi = quotient_map(R, Rbar);
    ModulePresentation<K> M = module ? *module : ModulePresentation<K>::residue_field(Rbar);
    int bound = d ? *d : default_internal_bound(Rbar, n);
    if (Rbar->truncation() && bound > *Rbar->truncation())
        throw InputError("uncertified range: internal degree " + std::to_string(bound) + " exceeds the truncation " +
                         std::to_string(*Rbar->truncation()));
    auto F = minimal_free_resolution(Rbar, M, n, bound).complex;
    return {R, I, Rbar, pi, M, F, n, bound};
}

enum class LiftingVerdict { Verified, Rejected, Unknown };

inline std::string to_string(LiftingVerdict v) {
    switch (v) {
        case LiftingVerdict::Verified: return "Verified";
        case LiftingVerdict::Rejected: return "Rejected";
        case LiftingVerdict::Unknown: return "Unknown";
    }
    return "?";
}

struct LiftingCheck {
    LiftingVerdict verdict = LiftingVerdict::Unknown;
    std::string reason;
    CertifiedBounds bounds;
};

namespace detail {

template <Field K>
bool same_column_span(const AlgebraPtr<K>& A, const PolyMatrix<K>& a, const std::vector<int>& asrc,
                      const PolyMatrix<K>& b, const std::vector<int>& bsrc, const std::vector<int>& dst, int e) {
    Matrix<K> ma = degree_matrix(A, a, dst, asrc, e);
    Matrix<K> mb = degree_matrix(A, b, dst, bsrc, e);
    EchelonSpan<K> sa(A->field(), ma.rows()), sb(A->field(), mb.rows());
    for (std::size_t c = 0; c < ma.cols(); ++c) sa.insert(ma.column(c));
    for (std::size_t c = 0; c < mb.cols(); ++c) sb.insert(mb.column(c));
    if (sa.dim() != sb.dim()) return false;
    for (std::size_t c = 0; c < mb.cols(); ++c)
        if (!sa.contains(mb.column(c))) return false;
    return true;
}

}  // namespace detail

/// L lifts F when L tensor Rbar has F's ranks and shifts, the same H_0 inside F_0,
/// and vanishing H_i for 1 <= i <= n (i < length of L when L is cut off at n or
/// beyond), all in internal degrees <= d. No chain isomorphism is constructed.
template <Field K>
LiftingCheck check_lifting(const LiftingProblem<K>& P, FreeComplex<K> L) {
    LiftingCheck out;
    out.bounds.homological = P.n;
    out.bounds.internal = P.d;
    if (L.algebra != P.R) throw InputError("candidate lifting is not a complex over " + P.R->name());
    try {
        L = verify_complex(std::move(L));
    } catch (const InputError& e) {
        out.verdict = LiftingVerdict::Rejected;
        out.reason = std::string("candidate is not a complex over R: ") + e.what();
        return out;
    }
    FreeComplex<K> B = verify_complex(base_change(L, P.pi));
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto shifts_at = [](const FreeComplex<K>& C, int i) {
        return static_cast<std::size_t>(i) < C.shifts.size() ? C.shifts[static_cast<std::size_t>(i)] : std::vector<int>{};
    };
    if (shifts_at(B, 0) != shifts_at(P.F, 0)) {
        out.verdict = LiftingVerdict::Rejected;
        out.reason = "F_0 shifts differ from the resolution's";
        return out;
    }
    for (int i = 1; i <= P.n; ++i)
        if (sorted(shifts_at(B, i)) != sorted(shifts_at(P.F, i))) {
            out.verdict = LiftingVerdict::Rejected;
            out.reason = "rank or shifts of the reduced candidate differ from the resolution in homological degree " +
                         std::to_string(i);
            return out;
        }
    if (!B.minimal) {
        out.verdict = LiftingVerdict::Rejected;
        out.reason = "the reduced candidate is not minimal";
        return out;
    }
    int len = static_cast<int>(B.length());
    int top = len > P.n ? P.n : len;
    for (int i = 1; i <= top; ++i) {
        auto h = homology_dims(B, static_cast<std::size_t>(i), P.d);
        for (int e = 0; e <= P.d; ++e)
            if (h[static_cast<std::size_t>(e)]) {
                out.verdict = LiftingVerdict::Rejected;
                out.reason = "H_" + std::to_string(i) + " of the reduced candidate is nonzero in internal degree " +
                             std::to_string(e);
                return out;
            }
    }
    PolyMatrix<K> empty_b(P.Rbar, B.shifts[0].size(), 0), empty_f(P.Rbar, P.F.shifts[0].size(), 0);
    const PolyMatrix<K>& b1 = len >= 1 ? B.diffs[0] : empty_b;
    const PolyMatrix<K>& f1 = P.F.length() >= 1 ? P.F.diffs[0] : empty_f;
    for (int e = 0; e <= P.d; ++e)
        if (!detail::same_column_span(P.Rbar, b1, shifts_at(B, 1), f1, shifts_at(P.F, 1), B.shifts[0], e)) {
            out.verdict = LiftingVerdict::Rejected;
            out.reason = "H_0 of the reduced candidate differs from the module in internal degree " + std::to_string(e);
            return out;
        }
    out.verdict = LiftingVerdict::Verified;
    out.reason = "L tensor Rbar matches the minimal resolution for i <= " + std::to_string(P.n) +
                 " in internal degrees <= " + std::to_string(P.d);
    out.bounds.caveat = "homology compared in internal degrees <= " + std::to_string(P.d);
    return out;
}

/// Refuted (k is not liftable) when a minimal generating set of I is linearly
/// dependent in m/m^2; otherwise Unknown, since the condition is only necessary.
template <Field K>
TriState thm_minimal_generator_test(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& I) {
    const K& k = R->field();
    auto mg = minimal_generators(R, I);
    std::map<int, EchelonSpan<K>> square;  // (m^2)_e plus the generators seen so far
    for (const auto& g : mg.generators) {
        int e = *g.homogeneous_degree();
        auto it = square.find(e);
        if (it == square.end()) {
            EchelonSpan<K> span(k, R->dim(e));
            for (std::size_t i = 0; i < R->nvars(); ++i) {
                int rest = e - R->weight(i);
                if (rest < 1) continue;
                for (const auto& mu : R->basis(rest))
                    span.insert(R->coords(Poly<K>::variable(R->ring(), i) * Poly<K>::monomial(R->ring(), mu, k.one()), e));
            }
            it = square.emplace(e, std::move(span)).first;
        }
        if (!it->second.insert(R->coords(g, e))) {
            TriState t = TriState::refuted("generator " + g.to_string() +
                                           " is dependent on m^2 and the other generators in m/m^2, so k is not liftable");
            t.bounds.internal = e;
            return t;
        }
    }
    return TriState::unknown("a minimal generating set of I (" + std::to_string(mg.nu) +
                             " elements) is independent in m/m^2; the test is inconclusive");
}

template <Field K>
struct PoincareFactorization {
    std::vector<std::size_t> over_R;       // P^R_M
    std::vector<std::size_t> over_Rbar;    // P^Rbar_M
    std::vector<std::size_t> quotient;     // P^R_Rbar
    std::vector<std::size_t> product;      // P^Rbar_M * P^R_Rbar, truncated at n
    std::optional<int> first_mismatch;
    std::size_t nu_R = 0, nu_Rbar = 0, nu_I = 0;
    bool nu_identity = false;
    int n = 0;
    int d = 0;
    TriState verdict;
};

/// Compares P^R_M with P^Rbar_M * P^R_Rbar up to t^n. A mismatch refutes
/// liftability of M; a match is inconclusive.
template <Field K>
PoincareFactorization<K> poincare_factorization_test(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& I, int n,
                                                     std::optional<ModulePresentation<K>> module = std::nullopt,
                                                     std::optional<int> d = std::nullopt) {
    if (n < 0) throw InputError("Poincare order must be nonnegative");
    auto Rbar = quotient_algebra(R, I);
    ModulePresentation<K> M = module ? *module : ModulePresentation<K>::residue_field(Rbar);
    ModulePresentation<K> MR = M;
    for (std::size_t j = 0; j < M.generator_degrees.size(); ++j)
        for (const auto& g : I) {
            std::vector<Poly<K>> col(M.generator_degrees.size(), R->zero());
            col[j] = g;
            MR.relations.push_back(col);
        }
    int wanted = d ? *d : std::max(resolution_horizon(R, n), resolution_horizon(Rbar, n));
    int bound = wanted;
    if (R->truncation()) bound = std::min(bound, *R->truncation());
    PoincareFactorization<K> out;
    out.n = n;
    out.d = bound;
    out.over_R = poincare_poly(R, MR, n, bound);
    out.over_Rbar = poincare_poly(Rbar, M, n, bound);
    out.quotient = poincare_poly(R, ModulePresentation<K>::cyclic(R, I), n, bound);
    out.product.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b)
            out.product[static_cast<std::size_t>(a + b)] +=
                out.over_Rbar[static_cast<std::size_t>(a)] * out.quotient[static_cast<std::size_t>(b)];
    for (int i = 0; i <= n && !out.first_mismatch; ++i)
        if (out.over_R[static_cast<std::size_t>(i)] != out.product[static_cast<std::size_t>(i)]) out.first_mismatch = i;
    out.nu_R = minimal_generators(R, R->maximal_ideal_generators()).nu;
    out.nu_Rbar = minimal_generators(Rbar, Rbar->maximal_ideal_generators()).nu;
    out.nu_I = minimal_generators(R, I).nu;
    out.nu_identity = out.nu_R == out.nu_Rbar + out.nu_I;
    if (out.first_mismatch)
        out.verdict = TriState::refuted("coefficients of t^" + std::to_string(*out.first_mismatch) + " differ: " +
                                        std::to_string(out.over_R[static_cast<std::size_t>(*out.first_mismatch)]) +
                                        " vs " +
                                        std::to_string(out.product[static_cast<std::size_t>(*out.first_mismatch)]) +
                                        ", so M is not liftable");
    else
        out.verdict = TriState::unknown("the series agree up to t^" + std::to_string(n) + "; the test is inconclusive");
    out.verdict.bounds.homological = n;
    out.verdict.bounds.internal = bound;
    if (bound < wanted)
        out.verdict.bounds.caveat = "Betti numbers counted in internal degrees <= " + std::to_string(bound) +
                                    " (truncation), below the horizon " + std::to_string(wanted);
    else
        out.verdict.bounds.caveat = "Betti numbers counted in internal degrees <= " + std::to_string(bound);
    return out;
}

/// Proved when beta_2^Rbar(k) = dim Ext^2(k, k) vanishes: then k lifts along any
/// surjection onto Rbar whose kernel is generated by a regular sequence.
template <Field K>
TriState ext2_sufficiency(const AlgebraPtr<K>& Rbar) {
    int wanted = resolution_horizon(Rbar, 2);
    int d = default_internal_bound(Rbar, 2);
    TriState t;
    t.bounds.homological = 2;
    t.bounds.internal = d;
    if (d < wanted) {
        t.reason = "truncation " + std::to_string(d) + " is below the internal degree " + std::to_string(wanted) +
                   " needed to certify beta_2";
        return t;
    }
    std::size_t b2 = poincare_poly(Rbar, ModulePresentation<K>::residue_field(Rbar), 2, d)[2];
    if (b2 == 0) {
        t = TriState::proved("beta_2(k) = 0, so Ext^2(k,k) = 0");
        t.bounds = {2, d, "applies when I is generated by a regular sequence"};
        return t;
    }
    t = TriState::unknown("beta_2(k) = " + std::to_string(b2) + ", so the sufficient condition does not apply");
    t.bounds = {2, d, ""};
    return t;
}

/// Graded injectivity of f in internal degrees 1..d.
template <Field K>
std::optional<int> first_non_injective_degree(const AlgebraMorphism<K>& f, int d) {
    if (!f.is_graded()) throw InputError("injectivity check needs a graded morphism");
    for (int e = 1; e <= d; ++e) {
        const auto& b = f.source->basis(e);
        if (b.empty()) continue;
        EchelonSpan<K> span(f.target->field(), f.target->dim(e));
        for (const auto& mu : b)
            if (!span.insert(f.target->coords(f.apply(Poly<K>::monomial(f.source->ring(), mu, f.source->field().one())), e)))
                return e;
    }
    return std::nullopt;
}

template <Field K>
MorphismSearch<K> retraction_problem(const AlgebraMorphism<K>& inclusion, int d) {
    return {inclusion.target, inclusion.source, inclusion, std::nullopt, d};
}

template <Field K>
MorphismSearch<K> section_problem(const AlgebraMorphism<K>& surjection, int d) {
    return {surjection.target, surjection.source, std::nullopt, surjection, d};
}

/// pi : R -> T with pi o incl = id_T.
template <Field K>
SearchResult<K> retraction_search(const AlgebraMorphism<K>& inclusion, int d, const SearchOptions& opt = {}) {
    if (!inclusion.verified) throw InputError("retraction search needs a verified inclusion");
    if (auto e = first_non_injective_degree(inclusion, d))
        throw InputError("the inclusion is not injective in internal degree " + std::to_string(*e));
    return search_morphism(retraction_problem(inclusion, d), opt);
}

/// sigma : Rbar -> R with pi o sigma = id_Rbar.
template <Field K>
SearchResult<K> section_search(const AlgebraMorphism<K>& surjection, int d, const SearchOptions& opt = {}) {
    if (!surjection.verified) throw InputError("section search needs a verified surjection");
    return search_morphism(section_problem(surjection, d), opt);
}

template <Field K>
struct SocleDecision {
    TriState verdict;  // Proved: liftable; Refuted: not liftable
    TriState generator_test;
    std::optional<AlgebraMorphism<K>> section;
    std::optional<DecompositionCertificate<K>> decomposition;
    /// R-bar fiber product (k semi-direct I), compared with R degree by degree.
    std::optional<AlgebraPtr<K>> model;
    std::vector<std::pair<std::size_t, std::size_t>> model_dims;  // (dim R_e, dim model_e), e = 0..d
    int d = 0;
};

/// m_R I = 0 case: k is liftable iff the minimal generators of I are independent
/// in m/m^2, and then R = Rbar semi-direct I = Rbar fiber product (k semi-direct I).
template <Field K>
SocleDecision<K> socle_case_decide(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& I,
                                   std::optional<int> d = std::nullopt, const SearchOptions& opt = {}) {
    const K& k = R->field();
    for (std::size_t i = 0; i < R->nvars(); ++i)
        for (const auto& g : I) {
            Poly<K> p = R->normal_form(Poly<K>::variable(R->ring(), i) * g);
            if (!p.is_zero())
                throw InputError("socle case inapplicable: m_R*I != 0, since " + R->names()[i] + "*(" + g.to_string() +
                                 ") = " + p.to_string());
        }
    SocleDecision<K> out;
    out.d = d ? *d : default_internal_bound(R, 2);
    out.generator_test = thm_minimal_generator_test(R, I);
    if (out.generator_test.is_refuted()) {
        out.verdict = TriState::refuted(out.generator_test.reason);
        return out;
    }
    auto Rbar = quotient_algebra(R, I);
    auto pi = quotient_map(R, Rbar);
    auto s = section_search(pi, out.d, opt);
    if (s.outcome != SearchOutcome::Found)
        throw InvariantError("socle case: no section of R -> R/I found up to degree " + std::to_string(out.d) + ": " +
                             s.reason);
    out.section = s.found;
    auto mg = minimal_generators(R, I);
    std::vector<Poly<K>> u;
    for (const auto& img : s.found->images)
        if (!img.is_zero()) u.push_back(img);
    out.decomposition = decomposition_verify(R, u, mg.generators, out.d);

    // k semi-direct I: one square-zero variable per minimal generator.
    std::vector<std::string> names;
    std::vector<int> weights;
    for (std::size_t j = 0; j < mg.generators.size(); ++j) {
        names.push_back("i" + std::to_string(j + 1));
        weights.push_back(*mg.generators[j].homogeneous_degree());
    }
    std::vector<Poly<K>> rels;
    auto ring = make_ring(k, names, weights);
    for (std::size_t a = 0; a < names.size(); ++a)
        for (std::size_t b = a; b < names.size(); ++b)
            rels.push_back(Poly<K>::variable(ring, a) * Poly<K>::variable(ring, b));
    auto S = new_algebra("kI", ring, rels);
    auto model = fiber_product(Rbar, S, R->name() + "_model").first;
    out.model = model;
    bool dims_ok = true;
    for (int e = 0; e <= out.d; ++e) {
        out.model_dims.emplace_back(R->dim(e), model->dim(e));
        dims_ok = dims_ok && R->dim(e) == model->dim(e);
    }
    if (!out.decomposition->verdict.is_proved() || !dims_ok)
        throw InvariantError("socle case: the decomposition of R failed: " + out.decomposition->verdict.reason);
    out.verdict = TriState::proved("m_R I = 0 and I is generated by part of a minimal generating set of m_R; section " +
                                   out.section->describe());
    out.verdict.bounds = {std::nullopt, out.d, "decomposition verified in internal degrees <= " + std::to_string(out.d)};
    return out;
}

namespace detail {

/// The presentation ideal without truncation monomials.
template <Field K>
Ideal<K> relation_ideal(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& extra = {}) {
    std::vector<Poly<K>> gens = R->relations();
    gens.insert(gens.end(), extra.begin(), extra.end());
    return buchberger(Ideal<K>(R->ring(), std::move(gens)));
}

/// An element of (J : f) outside J of least degree, if one has degree <= d.
template <Field K>
std::optional<Poly<K>> colon_witness(const Ideal<K>& J, const Poly<K>& f, int d) {
    Ideal<K> colon = colon_ideal(J, f);
    std::optional<Poly<K>> best;
    for (const auto& g : colon.groebner()) {
        Poly<K> nf = J.normal_form(g);
        if (nf.is_zero()) continue;
        if (nf.max_degree() > d) continue;
        if (!best || nf.max_degree() < best->max_degree()) best = nf;
    }
    return best;
}

}  // namespace detail

/// Proved when (J_i : x_{i+1}) = J_i for every i, in degrees <= d, where J is the
/// presentation ideal of R (truncation monomials excluded) and J_i = J + (x_1..x_i).
template <Field K>
TriState regular_sequence_check(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& elems, int d) {
    std::vector<Poly<K>> prev;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const Poly<K>& x = elems[i];
        if (!R->field().is_zero(x.constant_term())) throw InputError(x.to_string() + " is not in the maximal ideal");
        Ideal<K> J = detail::relation_ideal(R, prev);
        if (J.contains(x)) {
            TriState t = TriState::refuted(x.to_string() + " is zero modulo the previous elements");
            t.bounds.internal = d;
            return t;
        }
        if (auto w = detail::colon_witness(J, x, d)) {
            TriState t = TriState::refuted("(" + w->to_string() + ")*(" + x.to_string() + ") = 0 modulo the previous elements");
            t.bounds.internal = w->max_degree();
            return t;
        }
        prev.push_back(x);
    }
    TriState t = TriState::proved("each element is a nonzerodivisor modulo the previous ones");
    t.bounds = {std::nullopt, d, "colon ideals compared in degrees <= " + std::to_string(d)};
    if (R->truncation()) t.bounds.caveat += "; the truncation of " + R->name() + " is ignored";
    return t;
}

template <Field K>
struct AnnihilatorCheck {
    TriState verdict;
    std::vector<Poly<K>> annihilator;  // generators of (0 : x) modulo J
    /// T = k[t]/(t^(n+1)) -> R, t -> x, and flatness from (0 : x^n) = xR.
    std::optional<AlgebraMorphism<K>> phi;
    TriState flatness;
};

/// (0 : x) = x^n R != 0, together with (0 : x^n) = xR, which makes R flat over
/// k[t]/(t^(n+1)) through t -> x.
template <Field K>
AnnihilatorCheck<K> annihilator_hypothesis_check(const AlgebraPtr<K>& R, const Poly<K>& x, int n) {
    if (n < 1) throw InputError("exponent n must be at least 1");
    if (!R->field().is_zero(x.constant_term())) throw InputError(x.to_string() + " is not in the maximal ideal");
    auto h = R->normal_form(x).homogeneous_degree();
    if (!h) throw InputError(x.to_string() + " is not homogeneous");
    AnnihilatorCheck<K> out;
    Ideal<K> J = detail::relation_ideal(R);
    Poly<K> xn = x.pow(static_cast<unsigned>(n));
    Ideal<K> ann = colon_ideal(J, x);
    for (const auto& g : ann.groebner())
        if (!J.contains(g)) out.annihilator.push_back(J.normal_form(g));
    auto render = [](const std::vector<Poly<K>>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
        return s + ")";
    };
    if (J.contains(xn)) {
        out.verdict = TriState::refuted(x.to_string() + "^" + std::to_string(n) + " = 0");
        return out;
    }
    if (ann != detail::relation_ideal(R, {xn})) {
        out.verdict = TriState::refuted("(0 : " + x.to_string() + ") = " +
                                        (out.annihilator.empty() ? std::string("0") : render(out.annihilator)) +
                                        " != (" + xn.to_string() + ")");
        return out;
    }
    out.verdict = TriState::proved("(0 : " + x.to_string() + ") = (" + xn.to_string() + ") != 0");
    if (R->truncation()) out.verdict.bounds.caveat = "the truncation of " + R->name() + " is ignored";

    std::string tname = "t";
    for (std::size_t i = 0; i < R->nvars(); ++i)
        if (x == Poly<K>::variable(R->ring(), i)) tname = R->names()[i];
    auto T = new_algebra<K>("T", R->field(), {tname}, {*h}, {tname + "^" + std::to_string(n + 1)});
    out.phi = verify_morphism(make_morphism(T, R, {x}));
    if (colon_ideal(J, xn) == detail::relation_ideal(R, {x}))
        out.flatness = TriState::proved("(0 : " + xn.to_string() + ") = (" + x.to_string() +
                                        "), so the periodic sequence over R is exact and R is flat over " +
                                        T->describe());
    else
        out.flatness = TriState::refuted("(0 : " + xn.to_string() + ") != (" + x.to_string() + ")");
    return out;
}

/// Proved iff m_T R = m_R, i.e. every variable of R lies in J_R + (phi(t_j)).
template <Field K>
TriState mT_generates_check(const AlgebraMorphism<K>& phi) {
    if (!phi.verified) throw InputError("m_T generation check needs a verified morphism");
    const auto& R = phi.target;
    std::vector<Poly<K>> gens = R->ideal().groebner();
    gens.insert(gens.end(), phi.images.begin(), phi.images.end());
    Ideal<K> J = buchberger(Ideal<K>(R->ring(), std::move(gens)));
    for (std::size_t i = 0; i < R->nvars(); ++i)
        if (!J.contains(Poly<K>::variable(R->ring(), i)))
            return TriState::refuted(R->names()[i] + " is not in m_T R");
    return TriState::proved("m_T R = m_R");
}

template <Field K>
struct HarnessReport {
    FlatnessCertificate<K> flatness;
    AlgebraPtr<K> Rbar;
    TriState lifting;                      // (i)
    SearchResult<K> retraction;            // (ii)
    TriState decomposition;                // (iii)
    std::optional<LiftingCheck> candidate;  // the resolution of T over R, reduced to Rbar
    std::vector<Poly<K>> kernel;           // generators of ker(pi) when a retraction was found
    std::string conclusion;
    bool consistent = true;
    std::string inconsistency;
};

/// The three equivalent conditions for a flat phi : T -> R: (i) k over R/m_T R lifts
/// to R, (ii) phi has a retraction, (iii) R is a semi-fiber product over T.
template <Field K>
HarnessReport<K> main_theorem_harness(const AlgebraMorphism<K>& phi, int d, int n, const SearchOptions& opt = {}) {
    if (!phi.verified) throw InputError("main theorem harness needs a verified morphism");
    auto flat = flatness_certificate(phi, n);
    if (!flat.verdict.is_proved())
        throw InputError("flatness not certified: " + flat.verdict.reason);
    const auto& T = phi.source;
    const auto& R = phi.target;
    HarnessReport<K> rep{flat, nullptr, {}, {}, {}, std::nullopt, {}, "", true, ""};
    std::vector<Poly<K>> mT;
    for (const auto& img : phi.images)
        if (!R->is_zero(img)) mT.push_back(img);
    auto problem = make_lifting_problem(R, mT, n);
    rep.Rbar = problem.Rbar;

    rep.retraction = retraction_search(phi, d, opt);
    if (rep.retraction.outcome == SearchOutcome::Found) {
        const auto& pi = *rep.retraction.found;
        for (std::size_t i = 0; i < R->nvars(); ++i) {
            Poly<K> g = R->normal_form(Poly<K>::variable(R->ring(), i) - phi.apply(pi.images[i]));
            if (!g.is_zero()) rep.kernel.push_back(g);
        }
        // T as an R-module through pi is R / ker(pi); its resolution reduces to one of k over Rbar.
        int dr = std::min(default_internal_bound(R, n + 1), problem.d);
        auto L = minimal_free_resolution(R, ModulePresentation<K>::cyclic(R, rep.kernel), n + 1, dr).complex;
        rep.candidate = check_lifting(problem, L);
        if (rep.candidate->verdict == LiftingVerdict::Verified)
            rep.lifting = TriState::proved("the resolution of T over R reduces to a resolution of k over " +
                                           rep.Rbar->name());
        else
            rep.lifting = TriState::unknown("the candidate from the retraction was " + to_string(rep.candidate->verdict) +
                                            ": " + rep.candidate->reason);
        rep.lifting.bounds = rep.candidate->bounds;
        auto cert = decomposition_verify(R, mT, rep.kernel, d);
        rep.decomposition = cert.verdict;
    } else {
        auto mg = thm_minimal_generator_test(R, mT);
        rep.lifting = mg.is_refuted() ? mg : TriState::unknown("no independent evidence: " + mg.reason);
        rep.decomposition = TriState::unknown("no retraction, so no kernel data to decompose along");
    }

    int pos = 0, neg = 0;
    auto tally = [&](int s) { (s > 0 ? pos : neg) += s != 0; };
    tally(rep.lifting.is_proved() ? 1 : rep.lifting.is_refuted() ? -1 : 0);
    tally(rep.retraction.outcome == SearchOutcome::Found ? 1 : rep.retraction.outcome == SearchOutcome::NoneExists ? -1 : 0);
    tally(rep.decomposition.is_proved() ? 1 : rep.decomposition.is_refuted() ? -1 : 0);
    rep.consistent = pos == 0 || neg == 0;
    if (!rep.consistent)
        rep.inconsistency = std::string("definitive verdicts disagree: (i) ") + to_string(rep.lifting.verdict) + ", (ii) " +
                            to_string(rep.retraction.outcome) + ", (iii) " + to_string(rep.decomposition.verdict);
    if (rep.retraction.outcome == SearchOutcome::Found)
        rep.conclusion = "phi has a retraction; R = " + T->name() + " semi-fiber product with k + ker(pi)";
    else if (rep.retraction.outcome == SearchOutcome::NoneExists)
        rep.conclusion = "phi has no retraction, so k over " + rep.Rbar->describe() + " is not liftable to " + R->name();
    else
        rep.conclusion = "undecided: " + rep.retraction.reason;
    return rep;
}

}  // namespace sfp

#endif  // SFP_LIFTING_HPP
