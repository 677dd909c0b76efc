#ifndef SFP_GROEBNER_HPP
#define SFP_GROEBNER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sfp/poly.hpp"

namespace sfp {

/// Quotients and remainder of multivariate division: p = sum q_i g_i + r,
/// with no term of r divisible by any leading monomial.
template <Field K>
struct DivisionRecord {
    std::vector<Poly<K>> quotients;
    Poly<K> remainder;
};

template <Field K>
DivisionRecord<K> divide(const Poly<K>& p, const std::vector<Poly<K>>& divisors) {
    const RingPtr<K>& ring = p.ring();
    DivisionRecord<K> rec;
    rec.quotients.assign(divisors.size(), Poly<K>(ring));
    rec.remainder = Poly<K>(ring);
    std::vector<Term<K>> rem;
    Poly<K> work = p;
    const K& f = ring->field();
    while (!work.is_zero()) {
        const Monomial& lm = work.leading_monomial();
        bool divided = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            const Poly<K>& g = divisors[i];
            if (g.is_zero() || !g.leading_monomial().divides(lm)) continue;
            Monomial q = lm / g.leading_monomial();
            Scalar<K> c = work.leading_coefficient() * f.inv(g.leading_coefficient());
            rec.quotients[i] += Poly<K>::monomial(ring, q, c);
            work -= g.times_monomial(q, c);
            divided = true;
            break;
        }
        if (!divided) {
            rem.push_back(work.terms().front());
            work -= Poly<K>::monomial(ring, lm, work.leading_coefficient());
        }
    }
    rec.remainder = Poly<K>::from_terms(ring, std::move(rem));
    return rec;
}

/// Remainder of full reduction by `basis`.
template <Field K>
Poly<K> reduce(const Poly<K>& p, const std::vector<Poly<K>>& basis) {
    if (basis.empty() || p.is_zero()) return p;
    const RingPtr<K>& ring = p.ring();
    const K& f = ring->field();
    std::vector<Term<K>> rem;
    Poly<K> work = p;
    while (!work.is_zero()) {
        const Monomial& lm = work.leading_monomial();
        const Poly<K>* hit = nullptr;
        for (const auto& g : basis)
            if (g.leading_monomial().divides(lm)) {
                hit = &g;
                break;
            }
        if (hit) {
            Monomial q = lm / hit->leading_monomial();
            Scalar<K> c = work.leading_coefficient() * f.inv(hit->leading_coefficient());
            work -= hit->times_monomial(q, c);
        } else {
            rem.push_back(work.terms().front());
            work = Poly<K>::from_terms(ring, {work.terms().begin() + 1, work.terms().end()});
        }
    }
    return Poly<K>::from_terms(ring, std::move(rem));
}

/// An ideal of the ambient polynomial ring, optionally carrying its reduced
/// Groebner basis under the ring's monomial order.
template <Field K>
class Ideal {
  public:
    Ideal() = default;
    Ideal(RingPtr<K> ring, std::vector<Poly<K>> generators)
        : ring_(std::move(ring)), generators_(std::move(generators)) {
        for (const auto& g : generators_) Poly<K>::check_same_ring(Poly<K>(ring_), g);
        generators_.erase(std::remove_if(generators_.begin(), generators_.end(),
                                         [](const Poly<K>& g) { return g.is_zero(); }),
                          generators_.end());
    }

    const RingPtr<K>& ring() const { return ring_; }
    const std::vector<Poly<K>>& generators() const { return generators_; }
    bool has_groebner() const { return groebner_.has_value(); }
    const std::vector<Poly<K>>& groebner() const {
        if (!groebner_) throw InvariantError("ideal has no cached Groebner basis");
        return *groebner_;
    }
    /// Degree up to which the cached basis is known to be complete (nullopt: fully).
    std::optional<int> groebner_degree_bound() const { return bound_; }

    bool is_homogeneous() const {
        return std::all_of(generators_.begin(), generators_.end(),
                           [](const Poly<K>& g) { return g.is_homogeneous(); });
    }
    bool is_zero() const { return generators_.empty(); }

    Poly<K> normal_form(const Poly<K>& p) const { return reduce(p, groebner()); }
    bool contains(const Poly<K>& p) const { return normal_form(p).is_zero(); }

    /// Attaches a basis already known to be the reduced Groebner basis of this ideal.
    Ideal with_groebner(std::vector<Poly<K>> basis, std::optional<int> degree_bound) const {
        Ideal out = *this;
        out.groebner_ = std::move(basis);
        out.bound_ = degree_bound;
        return out;
    }

    /// Same ideal (requires cached bases on both sides).
    friend bool operator==(const Ideal& a, const Ideal& b) { return a.groebner() == b.groebner(); }

  private:
    RingPtr<K> ring_;
    std::vector<Poly<K>> generators_;
    std::optional<std::vector<Poly<K>>> groebner_;
    std::optional<int> bound_;
};

namespace detail {

template <Field K>
Poly<K> s_polynomial(const Poly<K>& f, const Poly<K>& g) {
    const PolyRing<K>& R = *f.ring();
    Monomial l = R.lcm(f.leading_monomial(), g.leading_monomial());
    const K& k = R.field();
    return f.times_monomial(l / f.leading_monomial(), k.inv(f.leading_coefficient())) -
           g.times_monomial(l / g.leading_monomial(), k.inv(g.leading_coefficient()));
}

/// Interreduces a Groebner basis into the unique reduced monic one, sorted by
/// ascending leading monomial.
template <Field K>
std::vector<Poly<K>> reduce_basis(std::vector<Poly<K>> g) {
    if (g.empty()) return g;
    const PolyRing<K>& R = *g.front().ring();
    std::sort(g.begin(), g.end(), [&R](const Poly<K>& a, const Poly<K>& b) {
        return R.greater(b.leading_monomial(), a.leading_monomial());
    });
    std::vector<Poly<K>> minimal;
    for (const auto& p : g) {
        bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Poly<K>& q) {
            return q.leading_monomial().divides(p.leading_monomial());
        });
        if (!redundant) minimal.push_back(p.monic());
    }
    std::vector<Poly<K>> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly<K>> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(j < reduced.size() ? reduced[j] : minimal[j]);
        const Poly<K>& p = minimal[i];
        Poly<K> lead = Poly<K>::monomial(p.ring(), p.leading_monomial(), p.leading_coefficient());
        reduced.push_back(lead + reduce(p - lead, others));
    }
    std::sort(reduced.begin(), reduced.end(), [&R](const Poly<K>& a, const Poly<K>& b) {
        return R.greater(b.leading_monomial(), a.leading_monomial());
    });
    return reduced;
}

}  // namespace detail

/// Buchberger's algorithm with the product and chain criteria and normal pair
/// selection. With a degree bound (homogeneous input only) S-pairs whose lcm
/// exceeds the bound are skipped, giving a basis that is complete up to that degree.
template <Field K>
Ideal<K> buchberger(const Ideal<K>& ideal, std::optional<int> degree_bound = std::nullopt) {
    if (ideal.has_groebner() && ideal.groebner_degree_bound() == degree_bound) return ideal;
    if (degree_bound && !ideal.is_homogeneous())
        throw InputError("degree-bounded Groebner basis needs homogeneous generators");
    const RingPtr<K>& ring = ideal.ring();
    const PolyRing<K>& R = *ring;

    std::vector<Poly<K>> basis;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::set<std::pair<std::size_t, std::size_t>> done;

    auto add = [&](Poly<K> h) {
        h = h.monic();
        std::size_t k = basis.size();
        for (std::size_t i = 0; i < k; ++i) pairs.emplace_back(i, k);
        basis.push_back(std::move(h));
    };

    for (const auto& g : ideal.generators()) {
        Poly<K> r = reduce(g, basis);
        if (!r.is_zero()) add(std::move(r));
    }

    auto pair_lcm = [&](const std::pair<std::size_t, std::size_t>& pr) {
        return R.lcm(basis[pr.first].leading_monomial(), basis[pr.second].leading_monomial());
    };

    while (!pairs.empty()) {
        auto best = pairs.begin();
        Monomial best_lcm = pair_lcm(*best);
        for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
            Monomial l = pair_lcm(*it);
            if (R.greater(best_lcm, l)) {
                best = it;
                best_lcm = std::move(l);
            }
        }
        auto [i, j] = *best;
        pairs.erase(best);
        done.insert({i, j});

        if (degree_bound && best_lcm.degree() > *degree_bound) continue;
        const Monomial& li = basis[i].leading_monomial();
        const Monomial& lj = basis[j].leading_monomial();
        if (best_lcm == li * lj) continue;  // coprime leading monomials
        bool chain = false;
        for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
            if (k == i || k == j) continue;
            if (!basis[k].leading_monomial().divides(best_lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) { return std::pair{std::min(a, b), std::max(a, b)}; };
            chain = done.count(key(i, k)) && done.count(key(j, k));
        }
        if (chain) continue;

        Poly<K> r = reduce(detail::s_polynomial(basis[i], basis[j]), basis);
        if (!r.is_zero()) add(std::move(r));
    }

    return ideal.with_groebner(detail::reduce_basis(std::move(basis)), degree_bound);
}

}  // namespace sfp

#endif  // SFP_GROEBNER_HPP
