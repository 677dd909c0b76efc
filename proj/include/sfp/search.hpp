#ifndef SFP_SEARCH_HPP
#define SFP_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfp/algebra.hpp"

namespace sfp {

enum class SearchOutcome { Found, NoneExists, Unknown };

inline std::string to_string(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::Found: return "Found";
        case SearchOutcome::NoneExists: return "NoneExists";
        case SearchOutcome::Unknown: return "Unknown";
    }
    return "?";
}

struct SearchOptions {
    /// Unknowns that may be branched on when no equation forces their value.
    std::size_t budget = 8;
    /// Cap on the number of partial assignments explored.
    std::uint64_t node_limit = 200000;
};

/// A k-algebra map h : source -> target, with images of the source variables
/// unknown up to internal degree `bound`, constrained by either
///   h o c = id_target  (h is a retraction of c : target -> source), or
///   p o h = id_source  (h is a section of p : target -> source).
template <Field K>
struct MorphismSearch {
    AlgebraPtr<K> source;
    AlgebraPtr<K> target;
    std::optional<AlgebraMorphism<K>> retraction_of;
    std::optional<AlgebraMorphism<K>> section_of;
    int bound = 0;
};

/// Polynomial equations in the unknown coefficients of h. Equation i is the
/// coefficient of a standard monomial of internal degree degrees[i].
template <Field K>
struct ConstraintSystem {
    RingPtr<K> unknowns;
    std::vector<std::string> meanings;
    std::vector<int> unknown_degrees;
    std::vector<Poly<K>> equations;
    std::vector<int> degrees;
    std::vector<std::string> origins;

    ConstraintSystem up_to(int e) const {
        ConstraintSystem out{unknowns, meanings, unknown_degrees, {}, {}, {}};
        for (std::size_t i = 0; i < equations.size(); ++i)
            if (degrees[i] <= e) {
                out.equations.push_back(equations[i]);
                out.degrees.push_back(degrees[i]);
                out.origins.push_back(origins[i]);
            }
        return out;
    }
};

/// The degree <= `degree` part of the constraint system has no solution over any
/// extension field: sum cofactors[i] * equations[i] = 1 when cofactors are present,
/// otherwise the reduced Groebner basis of the equations is {1}.
template <Field K>
struct InfeasibilityCertificate {
    ConstraintSystem<K> system;
    int degree = 0;
    std::vector<Poly<K>> cofactors;
};

template <Field K>
struct SearchResult {
    SearchOutcome outcome = SearchOutcome::Unknown;
    std::optional<AlgebraMorphism<K>> found;
    std::optional<InfeasibilityCertificate<K>> certificate;
    std::string reason;
    int bound = 0;
    std::size_t unknown_count = 0;
};

namespace detail {

/// k[target vars ; extra vars] with the target block first, so that the target's
/// Groebner basis stays a Groebner basis and normal forms split coefficientwise.
template <Field K>
struct CoefficientRing {
    RingPtr<K> ring;
    std::size_t nbase = 0;
    std::vector<Poly<K>> base_gb;

    CoefficientRing(const AlgebraPtr<K>& base, const RingPtr<K>& extra) {
        nbase = base->nvars();
        std::vector<std::string> names = base->names();
        std::vector<int> weights = base->ring()->weights();
        for (std::size_t i = 0; i < extra->nvars(); ++i) {
            names.push_back("__" + extra->names()[i]);
            weights.push_back(1);
        }
        ring = make_ring(base->field(), names, weights, MonomialOrder::Elimination, nbase);
        for (const auto& g : base->ideal().groebner()) base_gb.push_back(lift_base(g));
    }
    Poly<K> lift_base(const Poly<K>& p) const {
        std::vector<std::size_t> idx(nbase);
        for (std::size_t i = 0; i < nbase; ++i) idx[i] = i;
        return p.rename_into(ring, idx);
    }
    Poly<K> lift_extra(const Poly<K>& p) const {
        std::vector<std::size_t> idx(p.ring()->nvars());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = nbase + i;
        return p.rename_into(ring, idx);
    }
    /// Normal form, then grouping by the base part of each monomial.
    std::map<Monomial, Poly<K>> split(const Poly<K>& p, const AlgebraPtr<K>& base, const RingPtr<K>& extra) const {
        Poly<K> nf = reduce(p, base_gb);
        std::map<Monomial, std::vector<Term<K>>> groups;
        for (const auto& t : nf.terms()) {
            const auto& e = t.m.exponents();
            Monomial b = base->ring()->make(std::vector<int>(e.begin(), e.begin() + static_cast<long>(nbase)));
            Monomial c = extra->make(std::vector<int>(e.begin() + static_cast<long>(nbase), e.end()));
            groups[b].push_back({c, t.c});
        }
        std::map<Monomial, Poly<K>> out;
        for (auto& [b, terms] : groups) out.emplace(b, Poly<K>::from_terms(extra, std::move(terms)));
        return out;
    }
};

template <Field K>
bool is_unit_ideal(const std::vector<Poly<K>>& gb) {
    return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
}

template <Field K>
std::vector<Poly<K>> groebner_of(const RingPtr<K>& ring, const std::vector<Poly<K>>& eqs) {
    std::vector<Poly<K>> nz;
    for (const auto& e : eqs)
        if (!e.is_zero()) nz.push_back(e);
    if (nz.empty()) return {};
    return buchberger(Ideal<K>(ring, std::move(nz))).groebner();
}

/// Cofactors g with sum g_i f_i = 1, found by linear algebra on multiples of
/// total degree <= D for increasing D; empty when none is found within the caps.
template <Field K>
std::vector<Poly<K>> cofactors_dense(const RingPtr<K>& ring, const std::vector<Poly<K>>& eqs);

template <Field K>
std::vector<Poly<K>> nullstellensatz_cofactors(const RingPtr<K>& ring, const std::vector<Poly<K>>& eqs) {
    // Work in the subring of the unknowns that occur.
    std::vector<std::size_t> used;
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
        bool occurs = false;
        for (const auto& f : eqs)
            for (const auto& t : f.terms()) occurs = occurs || t.m[v] > 0;
        if (occurs) used.push_back(v);
    }
    if (used.empty()) return {};
    std::vector<std::string> names;
    std::vector<std::size_t> down(ring->nvars(), 0);
    for (std::size_t i = 0; i < used.size(); ++i) {
        names.push_back(ring->names()[used[i]]);
        down[used[i]] = i;
    }
    auto small = make_ring(ring->field(), names, std::vector<int>(names.size(), 1));
    std::vector<Poly<K>> seqs;
    for (const auto& f : eqs) seqs.push_back(f.rename_into(small, down));
    auto cof = cofactors_dense(small, seqs);
    std::vector<Poly<K>> out;
    for (const auto& c : cof) out.push_back(c.rename_into(ring, used));
    return out;
}

template <Field K>
std::vector<Poly<K>> cofactors_dense(const RingPtr<K>& ring, const std::vector<Poly<K>>& eqs) {
    const K& k = ring->field();
    int top = 0;
    for (const auto& f : eqs) top = std::max(top, f.is_zero() ? 0 : f.leading_monomial().total_exponent());
    for (const auto& f : eqs)
        for (const auto& t : f.terms()) top = std::max(top, t.m.total_exponent());
    for (int D = std::max(top, 1); D <= top + 6; ++D) {
        std::vector<Monomial> basis;
        std::map<Monomial, std::size_t> index;
        for (int e = 0; e <= D; ++e)
            for (auto& m : ring->monomials_of_degree(e)) {
                index[m] = basis.size();
                basis.push_back(m);
            }
        if (basis.size() > 1500) return {};
        std::vector<std::pair<std::size_t, Monomial>> multipliers;
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            if (eqs[i].is_zero()) continue;
            int deg = 0;
            for (const auto& t : eqs[i].terms()) deg = std::max(deg, t.m.total_exponent());
            for (int e = 0; e + deg <= D; ++e)
                for (auto& m : ring->monomials_of_degree(e)) multipliers.emplace_back(i, m);
        }
        if (multipliers.size() > 1500) return {};
        EchelonSpan<K> span(k, basis.size());
        for (const auto& [i, m] : multipliers) {
            Vec<K> v(basis.size(), k.zero());
            for (const auto& t : eqs[i].terms()) v[index.at(t.m * m)] = t.c;
            span.insert(std::move(v));
        }
        Vec<K> one(basis.size(), k.zero());
        one[index.at(ring->one())] = k.one();
        auto c = span.express(one);
        if (!c) continue;
        std::vector<Poly<K>> cof(eqs.size(), Poly<K>(ring));
        for (std::size_t j = 0; j < multipliers.size(); ++j)
            if (!k.is_zero((*c)[j])) cof[multipliers[j].first] += Poly<K>::monomial(ring, multipliers[j].second, (*c)[j]);
        return cof;
    }
    return {};
}

}  // namespace detail

/// Unknowns ordered by internal degree, then source variable, then standard monomial.
template <Field K>
ConstraintSystem<K> build_constraints(const MorphismSearch<K>& P) {
    if (P.retraction_of.has_value() == P.section_of.has_value())
        throw InputError("a morphism search needs exactly one of a retraction or a section condition");
    const auto& X = P.source;
    const auto& Y = P.target;
    const K& k = X->field();
    if (P.retraction_of && (P.retraction_of->source != Y || P.retraction_of->target != X))
        throw InputError("retraction condition must be a morphism target -> source");
    if (P.section_of && (P.section_of->source != Y || P.section_of->target != X))
        throw InputError("section condition must be a morphism target -> source");

    struct Slot {
        int degree;
        std::size_t var;
        Monomial mu;
    };
    std::vector<Slot> slots;
    for (int e = 1; e <= P.bound; ++e)
        for (std::size_t i = 0; i < X->nvars(); ++i)
            for (const auto& mu : Y->basis(e)) slots.push_back({e, i, mu});
    std::vector<std::string> names;
    for (std::size_t s = 0; s < slots.size(); ++s) names.push_back("c" + std::to_string(s + 1));
    ConstraintSystem<K> sys;
    sys.unknowns = make_ring(k, names, std::vector<int>(names.size(), 1));
    for (const auto& s : slots) {
        sys.meanings.push_back("coefficient of " + Y->ring()->to_string(s.mu) + " in the image of " + X->names()[s.var]);
        sys.unknown_degrees.push_back(s.degree);
    }

    detail::CoefficientRing<K> CY(Y, sys.unknowns);
    std::vector<Poly<K>> h(X->nvars(), Poly<K>(CY.ring));
    for (std::size_t s = 0; s < slots.size(); ++s)
        h[slots[s].var] += CY.lift_base(Poly<K>::monomial(Y->ring(), slots[s].mu, k.one())) *
                           CY.lift_extra(Poly<K>::variable(sys.unknowns, s));

    auto record = [&](const std::map<Monomial, Poly<K>>& parts, const std::string& origin) {
        for (const auto& [mu, coef] : parts) {
            if (coef.is_zero() || mu.degree() > P.bound) continue;
            sys.equations.push_back(coef);
            sys.degrees.push_back(mu.degree());
            sys.origins.push_back(origin + ", coefficient of " +
                                  (mu.is_one() ? std::string("1") : Y->ring()->to_string(mu)));
        }
    };

    for (const auto& g : X->ideal().groebner())
        record(CY.split(g.substitute(h, CY.ring), Y, sys.unknowns), "relation " + g.to_string() + " maps to 0");
    if (P.retraction_of) {
        for (std::size_t j = 0; j < Y->nvars(); ++j) {
            Poly<K> v = P.retraction_of->images[j].substitute(h, CY.ring) - CY.lift_base(Poly<K>::variable(Y->ring(), j));
            record(CY.split(v, Y, sys.unknowns), "h(" + P.retraction_of->images[j].to_string() + ") = " + Y->names()[j]);
        }
    } else {
        detail::CoefficientRing<K> CX(X, sys.unknowns);
        std::vector<Poly<K>> sub;
        for (std::size_t j = 0; j < Y->nvars(); ++j) sub.push_back(CX.lift_base(P.section_of->images[j]));
        for (std::size_t s = 0; s < sys.unknowns->nvars(); ++s)
            sub.push_back(CX.lift_extra(Poly<K>::variable(sys.unknowns, s)));
        for (std::size_t i = 0; i < X->nvars(); ++i) {
            Poly<K> v = h[i].substitute(sub, CX.ring) - CX.lift_base(Poly<K>::variable(X->ring(), i));
            auto parts = CX.split(v, X, sys.unknowns);
            for (const auto& [mu, coef] : parts) {
                if (coef.is_zero() || mu.degree() > P.bound) continue;
                sys.equations.push_back(coef);
                sys.degrees.push_back(mu.degree());
                sys.origins.push_back("p(h(" + X->names()[i] + ")) = " + X->names()[i] + ", coefficient of " +
                                      (mu.is_one() ? std::string("1") : X->ring()->to_string(mu)));
            }
        }
    }
    return sys;
}

/// Checks the recorded certificate on its own: the cofactor identity by plain
/// arithmetic, or a fresh Groebner basis computation when no cofactors are stored.
template <Field K>
bool certificate_is_inconsistent(const InfeasibilityCertificate<K>& cert) {
    const auto& sys = cert.system;
    if (!cert.cofactors.empty()) {
        if (cert.cofactors.size() != sys.equations.size()) return false;
        Poly<K> sum(sys.unknowns);
        for (std::size_t i = 0; i < sys.equations.size(); ++i) sum += cert.cofactors[i] * sys.equations[i];
        return sum == Poly<K>::constant(sys.unknowns, sys.unknowns->field().one());
    }
    return detail::is_unit_ideal(detail::groebner_of(sys.unknowns, sys.equations));
}

/// Re-derives the constraint system from the problem, checks that it matches the
/// recorded one in degrees <= cert.degree, and re-checks inconsistency.
template <Field K>
bool replay_certificate(const MorphismSearch<K>& P, const InfeasibilityCertificate<K>& cert) {
    if (cert.degree > P.bound) return false;
    ConstraintSystem<K> fresh = build_constraints(P).up_to(cert.degree);
    if (fresh.equations.size() != cert.system.equations.size()) return false;
    for (std::size_t i = 0; i < fresh.equations.size(); ++i)
        if (fresh.equations[i].to_string() != cert.system.equations[i].to_string()) return false;
    return certificate_is_inconsistent(cert);
}

namespace detail {

template <Field K>
std::vector<Scalar<K>> candidate_values(const K& k, const std::vector<Poly<K>>& gb, std::size_t var, bool& forced) {
    std::vector<Scalar<K>> out;
    forced = false;
    for (const auto& g : gb) {
        bool univariate = true;
        for (const auto& t : g.terms())
            for (std::size_t v = 0; v < t.m.size(); ++v)
                if (v != var && t.m[v] > 0) univariate = false;
        if (!univariate) continue;
        forced = true;
        auto eval = [&](const Scalar<K>& x) {
            Scalar<K> acc = k.zero();
            for (const auto& t : g.terms()) {
                Scalar<K> m = t.c;
                for (int e = 0; e < t.m[var]; ++e) m = m * x;
                acc = acc + m;
            }
            return k.is_zero(acc);
        };
        int deg = g.leading_monomial()[var];
        if (deg == 1) {
            // c - a: the single root a.
            Scalar<K> lc = g.leading_coefficient();
            Scalar<K> a = k.zero();
            for (const auto& t : g.terms())
                if (t.m[var] == 0) a = -t.c;
            out.push_back(a * k.inv(lc));
        } else if (k.size() != 0 && k.size() <= 100000) {
            for (std::uint64_t v = 0; v < k.size(); ++v) {
                Scalar<K> x = k.from_int(static_cast<long long>(v));
                if (eval(x)) out.push_back(x);
            }
        } else {
            for (long long v : {0LL, 1LL, -1LL, 2LL, -2LL, 3LL, -3LL}) {
                Scalar<K> x = k.from_int(v);
                if (eval(x)) out.push_back(x);
            }
        }
        return out;
    }
    if (k.size() != 0 && k.size() <= 7) {
        for (std::uint64_t v = 0; v < k.size(); ++v) out.push_back(k.from_int(static_cast<long long>(v)));
    } else {
        for (long long v : {0LL, 1LL, -1LL}) out.push_back(k.from_int(v));
    }
    return out;
}

template <Field K>
struct Backtracker {
    const ConstraintSystem<K>& sys;
    const SearchOptions& opt;
    std::vector<std::size_t> order;
    std::function<bool(const std::vector<Scalar<K>>&)> accept;
    std::uint64_t nodes = 0;
    std::size_t branchings = 0;
    bool exhausted = false;

    bool run(std::vector<std::optional<Scalar<K>>>& assign, std::size_t pos) {
        const K& k = sys.unknowns->field();
        if (++nodes > opt.node_limit) {
            exhausted = true;
            return false;
        }
        std::vector<Poly<K>> images;
        for (std::size_t v = 0; v < assign.size(); ++v)
            images.push_back(assign[v] ? Poly<K>::constant(sys.unknowns, *assign[v]) : Poly<K>::variable(sys.unknowns, v));
        std::vector<Poly<K>> eqs;
        for (const auto& e : sys.equations) eqs.push_back(e.substitute(images, sys.unknowns));
        auto gb = groebner_of(sys.unknowns, eqs);
        if (is_unit_ideal(gb)) return false;
        while (pos < order.size() && assign[order[pos]]) ++pos;
        if (pos == order.size()) {
            std::vector<Scalar<K>> vals;
            for (const auto& a : assign) vals.push_back(*a);
            return accept(vals);
        }
        std::size_t var = order[pos];
        bool forced = false;
        auto cands = candidate_values(k, gb, var, forced);
        if (!forced && cands.size() > 1) {
            if (branchings >= opt.budget) {
                // Out of branching budget: only the zero choice is explored.
                cands.resize(1);
                exhausted = true;
            } else {
                ++branchings;
            }
        }
        for (const auto& c : cands) {
            assign[var] = c;
            if (run(assign, pos + 1)) return true;
            assign[var].reset();
            if (nodes > opt.node_limit) return false;
        }
        return false;
    }
};

}  // namespace detail

/// Searches for h degree by degree. An inconsistent truncated system is a valid
/// NoneExists certificate: truncating any genuine solution solves it. A solution
/// of the full truncated system is returned only after exact verification.
template <Field K>
SearchResult<K> search_morphism(const MorphismSearch<K>& P, const SearchOptions& opt = {}) {
    if (P.bound < 1) throw InputError("search bound must be at least 1");
    SearchResult<K> res;
    res.bound = P.bound;
    ConstraintSystem<K> sys = build_constraints(P);
    res.unknown_count = sys.unknowns->nvars();
    for (int e = 1; e <= P.bound; ++e) {
        if (std::find(sys.degrees.begin(), sys.degrees.end(), e) == sys.degrees.end()) continue;
        ConstraintSystem<K> part = sys.up_to(e);
        if (!detail::is_unit_ideal(detail::groebner_of(part.unknowns, part.equations))) continue;
        InfeasibilityCertificate<K> cert{part, e, detail::nullstellensatz_cofactors(part.unknowns, part.equations)};
        res.outcome = SearchOutcome::NoneExists;
        res.reason = "the constraints in internal degrees <= " + std::to_string(e) + " are inconsistent";
        res.certificate = std::move(cert);
        return res;
    }

    const auto& X = P.source;
    const auto& Y = P.target;
    const K& k = X->field();
    auto morphism_from = [&](const std::vector<Scalar<K>>& vals) {
        std::vector<Poly<K>> imgs(X->nvars(), Y->zero());
        std::size_t s = 0;
        for (int e = 1; e <= P.bound; ++e)
            for (std::size_t i = 0; i < X->nvars(); ++i)
                for (const auto& mu : Y->basis(e)) {
                    if (!k.is_zero(vals[s])) imgs[i] += Poly<K>::monomial(Y->ring(), mu, vals[s]);
                    ++s;
                }
        return make_morphism(X, Y, imgs);
    };
    std::optional<AlgebraMorphism<K>> found;
    bool failed_extension = false;
    auto accept = [&](const std::vector<Scalar<K>>& vals) {
        auto h = morphism_from(vals);
        try {
            h = verify_morphism(h);
        } catch (const InputError&) {
            failed_extension = true;
            return false;
        }
        bool ok = P.retraction_of ? same_morphism(compose(h, *P.retraction_of), identity_morphism(Y))
                                  : same_morphism(compose(*P.section_of, h), identity_morphism(X));
        if (!ok) {
            failed_extension = true;
            return false;
        }
        found = h;
        return true;
    };

    // Unknowns absent from the reduced basis are unconstrained and set to zero.
    auto gb = detail::groebner_of(sys.unknowns, sys.equations);
    std::vector<bool> appears(sys.unknowns->nvars(), false);
    for (const auto& g : gb)
        for (const auto& t : g.terms())
            for (std::size_t v = 0; v < t.m.size(); ++v)
                if (t.m[v] > 0) appears[v] = true;
    std::vector<std::optional<Scalar<K>>> assign(sys.unknowns->nvars());
    detail::Backtracker<K> bt{sys, opt, {}, accept};
    for (std::size_t v = 0; v < appears.size(); ++v) {
        if (appears[v])
            bt.order.push_back(v);
        else
            assign[v] = k.zero();
    }
    if (bt.run(assign, 0)) {
        res.outcome = SearchOutcome::Found;
        res.found = found;
        res.reason = "verified morphism " + found->describe();
        return res;
    }
    res.outcome = SearchOutcome::Unknown;
    if (bt.exhausted)
        res.reason = "search budget exhausted (" + std::to_string(opt.budget) + " branching unknowns, " +
                     std::to_string(bt.nodes) + " nodes) before bound " + std::to_string(P.bound);
    else if (failed_extension)
        res.reason = "solutions of the constraints up to degree " + std::to_string(P.bound) +
                     " do not give an exact morphism; raise the bound";
    else
        res.reason = "no solution among the explored values; the constraints up to degree " +
                     std::to_string(P.bound) + " are consistent over an extension field";
    return res;
}

}  // namespace sfp

#endif  // SFP_SEARCH_HPP
