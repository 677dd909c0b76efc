#ifndef SFP_IDEAL_OPS_HPP
#define SFP_IDEAL_OPS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfp/groebner.hpp"
#include "sfp/linalg.hpp"

namespace sfp {

/// Standard monomials of degree d: a k-basis of (k[x]/I)_d for homogeneous I.
template <Field K>
std::vector<Monomial> graded_piece_basis(const Ideal<K>& ideal, int d) {
    const auto& gb = ideal.groebner();
    std::vector<Monomial> out;
    for (auto& m : ideal.ring()->monomials_of_degree(d)) {
        bool standard = true;
        for (const auto& g : gb)
            if (g.leading_monomial().divides(m)) {
                standard = false;
                break;
            }
        if (standard) out.push_back(std::move(m));
    }
    return out;
}

/// dim (k[x]/I)_d computed from the generators alone (no Groebner basis):
/// monomial count minus the rank of the degree-d slice of the ideal.
template <Field K>
std::size_t hilbert_value_by_generators(const Ideal<K>& ideal, int d) {
    const RingPtr<K>& ring = ideal.ring();
    auto monos = ring->monomials_of_degree(d);
    if (monos.empty()) return 0;
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    EchelonSpan<K> span(ring->field(), monos.size());
    for (const auto& g : ideal.generators()) {
        auto gd = g.homogeneous_degree();
        if (!gd) throw InputError("hilbert_value_by_generators: non-homogeneous generator " + g.to_string());
        if (*gd > d) continue;
        for (const auto& mu : ring->monomials_of_degree(d - *gd)) {
            Vec<K> v(monos.size(), ring->field().zero());
            for (const auto& t : g.terms()) v[index.at(t.m * mu)] = t.c;
            span.insert(std::move(v));
        }
    }
    return monos.size() - span.dim();
}

/// Exact quotient p / f; throws when f does not divide p.
template <Field K>
Poly<K> exact_divide(const Poly<K>& p, const Poly<K>& f) {
    auto rec = divide(p, std::vector<Poly<K>>{f});
    if (!rec.remainder.is_zero()) throw InvariantError("exact_divide: nonzero remainder");
    return rec.quotients.front();
}

/// Every generator of `sub` lies in `ideal` (which must carry a Groebner basis).
template <Field K>
bool ideal_contains(const Ideal<K>& ideal, const Ideal<K>& sub) {
    for (const auto& g : sub.generators())
        if (!ideal.contains(g)) return false;
    return true;
}

template <Field K>
Ideal<K> ideal_sum(const Ideal<K>& a, const std::vector<Poly<K>>& extra) {
    std::vector<Poly<K>> gens = a.generators();
    gens.insert(gens.end(), extra.begin(), extra.end());
    return Ideal<K>(a.ring(), std::move(gens));
}

namespace detail {

/// Ring with `front` new variables prepended, eliminating them first.
template <Field K>
RingPtr<K> elimination_ring(const RingPtr<K>& base, const std::vector<std::string>& front_names,
                            const std::vector<int>& front_weights) {
    std::vector<std::string> names = front_names;
    std::vector<int> weights = front_weights;
    for (const auto& n : base->names()) {
        std::string m = n;
        while (std::find(names.begin(), names.end(), m) != names.end()) m += "_";
        names.push_back(m);
    }
    weights.insert(weights.end(), base->weights().begin(), base->weights().end());
    return make_ring(base->field(), names, weights, MonomialOrder::Elimination, front_names.size());
}

template <Field K>
std::vector<std::size_t> shifted_index(std::size_t n, std::size_t offset) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i + offset;
    return m;
}

}  // namespace detail

/// I intersected with the principal ideal (f), by eliminating t from t*I + (1-t)*f.
template <Field K>
Ideal<K> intersect_principal(const Ideal<K>& ideal, const Poly<K>& f) {
    const RingPtr<K>& base = ideal.ring();
    auto ring = detail::elimination_ring(base, {"_t"}, {1});
    auto lift = [&](const Poly<K>& p) { return p.rename_into(ring, detail::shifted_index<K>(base->nvars(), 1)); };
    Poly<K> t = Poly<K>::variable(ring, 0);
    Poly<K> one = Poly<K>::constant(ring, base->field().one());
    std::vector<Poly<K>> gens;
    for (const auto& g : ideal.generators()) gens.push_back(t * lift(g));
    gens.push_back((one - t) * lift(f));
    Ideal<K> big = buchberger(Ideal<K>(ring, std::move(gens)));
    std::vector<Poly<K>> out;
    for (const auto& g : big.groebner()) {
        bool has_t = false;
        for (const auto& term : g.terms()) has_t = has_t || term.m[0] > 0;
        if (has_t) continue;
        std::vector<Term<K>> terms;
        for (const auto& term : g.terms()) {
            std::vector<int> e(term.m.exponents().begin() + 1, term.m.exponents().end());
            terms.push_back({base->make(std::move(e)), term.c});
        }
        out.push_back(Poly<K>::from_terms(base, std::move(terms)));
    }
    return buchberger(Ideal<K>(base, std::move(out)));
}

/// (I : f) = { g : g f in I }. In a quotient ring k[x]/J the annihilator
/// (0 : f) is colon_ideal(J, f) read modulo J.
template <Field K>
Ideal<K> colon_ideal(const Ideal<K>& ideal, const Poly<K>& f) {
    if (f.is_zero()) throw InputError("colon by the zero polynomial");
    const RingPtr<K>& ring = ideal.ring();
    if (f.is_constant()) return buchberger(ideal);
    if (ideal.is_zero()) return buchberger(Ideal<K>(ring, {}));
    Ideal<K> inter = intersect_principal(ideal, f);
    std::vector<Poly<K>> gens;
    for (const auto& g : inter.groebner()) gens.push_back(exact_divide(g, f));
    return buchberger(Ideal<K>(ring, std::move(gens)));
}

/// Generators, up to degree d, of the kernel of k[source] -> k[target]/J sending
/// source variable i to images[i], by elimination of the target variables.
template <Field K>
Ideal<K> morphism_kernel_truncated(const RingPtr<K>& source, const std::vector<Poly<K>>& images,
                                   const Ideal<K>& target_relations, int d) {
    if (images.size() != source->nvars()) throw InputError("kernel: one image per source variable required");
    const RingPtr<K>& target = target_relations.ring();
    for (const auto& img : images) Poly<K>::check_same_ring(Poly<K>(target), img);

    std::vector<std::string> names;
    std::vector<int> weights;
    for (std::size_t i = 0; i < target->nvars(); ++i) {
        names.push_back(target->names()[i]);
        weights.push_back(target->weight(i));
    }
    std::vector<std::string> snames;
    for (const auto& n : source->names()) {
        std::string m = n;
        while (std::find(names.begin(), names.end(), m) != names.end() ||
               std::find(snames.begin(), snames.end(), m) != snames.end())
            m += "_";
        snames.push_back(m);
    }
    names.insert(names.end(), snames.begin(), snames.end());
    weights.insert(weights.end(), source->weights().begin(), source->weights().end());
    auto ring = make_ring(source->field(), names, weights, MonomialOrder::Elimination, target->nvars());

    auto tmap = detail::shifted_index<K>(target->nvars(), 0);
    bool homogeneous = target_relations.is_homogeneous();
    std::vector<Poly<K>> gens;
    for (const auto& g : target_relations.generators()) gens.push_back(g.rename_into(ring, tmap));
    for (std::size_t i = 0; i < images.size(); ++i) {
        Poly<K> xi = Poly<K>::variable(ring, target->nvars() + i);
        Poly<K> gi = xi - images[i].rename_into(ring, tmap);
        homogeneous = homogeneous && gi.is_homogeneous();
        gens.push_back(std::move(gi));
    }
    Ideal<K> big = buchberger(Ideal<K>(ring, std::move(gens)), homogeneous ? std::optional<int>(d) : std::nullopt);

    std::vector<Poly<K>> out;
    for (const auto& g : big.groebner()) {
        bool pure = true;
        for (const auto& term : g.terms())
            for (std::size_t i = 0; i < target->nvars() && pure; ++i) pure = term.m[i] == 0;
        if (!pure || g.max_degree() > d) continue;
        std::vector<Term<K>> terms;
        for (const auto& term : g.terms()) {
            std::vector<int> e(term.m.exponents().begin() + target->nvars(), term.m.exponents().end());
            terms.push_back({source->make(std::move(e)), term.c});
        }
        out.push_back(Poly<K>::from_terms(source, std::move(terms)));
    }
    return buchberger(Ideal<K>(source, std::move(out)), homogeneous ? std::optional<int>(d) : std::nullopt);
}

}  // namespace sfp

#endif  // SFP_IDEAL_OPS_HPP
