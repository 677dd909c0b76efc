#ifndef SFP_POLY_HPP
#define SFP_POLY_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfp/monomial.hpp"

namespace sfp {

template <Field K>
struct Term {
    Monomial m;
    Scalar<K> c;
};

/// Polynomial in normal (sorted descending, zero-free) form over a shared ring.
template <Field K>
class Poly {
  public:
    using scalar_type = Scalar<K>;

    Poly() = default;
    explicit Poly(RingPtr<K> ring) : ring_(std::move(ring)) {}

    static Poly constant(const RingPtr<K>& ring, const scalar_type& c) {
        return monomial(ring, ring->one(), c);
    }
    static Poly monomial(const RingPtr<K>& ring, Monomial m, const scalar_type& c) {
        Poly p(ring);
        if (!ring->field().is_zero(c)) p.terms_.push_back({std::move(m), c});
        return p;
    }
    static Poly variable(const RingPtr<K>& ring, std::size_t i) {
        return monomial(ring, ring->var(i), ring->field().one());
    }
    /// Builds from arbitrary (unsorted, possibly repeated) terms.
    static Poly from_terms(const RingPtr<K>& ring, std::vector<Term<K>> terms) {
        Poly p(ring);
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const RingPtr<K>& ring() const { return ring_; }
    const K& field() const { return ring_->field(); }
    const std::vector<Term<K>>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    const Monomial& leading_monomial() const { return terms_.front().m; }
    const scalar_type& leading_coefficient() const { return terms_.front().c; }

    scalar_type constant_term() const {
        if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
        return field().zero();
    }
    scalar_type coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.m == m) return t.c;
        return field().zero();
    }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

    std::optional<int> homogeneous_degree() const {
        if (terms_.empty()) return std::nullopt;
        int d = terms_.front().m.degree();
        for (const auto& t : terms_)
            if (t.m.degree() != d) return std::nullopt;
        return d;
    }
    bool is_homogeneous() const { return terms_.empty() || homogeneous_degree().has_value(); }
    int max_degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, t.m.degree());
        return d;
    }
    int min_degree() const {
        int d = -1;
        for (const auto& t : terms_) d = d < 0 ? t.m.degree() : std::min(d, t.m.degree());
        return d;
    }
    Poly homogeneous_part(int d) const {
        Poly p(ring_);
        for (const auto& t : terms_)
            if (t.m.degree() == d) p.terms_.push_back(t);
        return p;
    }
    /// Drops every term of degree > d.
    Poly truncated(int d) const {
        Poly p(ring_);
        for (const auto& t : terms_)
            if (t.m.degree() <= d) p.terms_.push_back(t);
        return p;
    }
    /// The part with zero constant term.
    Poly without_constant() const {
        Poly p = *this;
        if (!p.terms_.empty() && p.terms_.back().m.is_one()) p.terms_.pop_back();
        return p;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        scalar_type inv = field().inv(leading_coefficient());
        return scaled(inv);
    }
    Poly scaled(const scalar_type& c) const {
        if (field().is_zero(c)) return Poly(ring_);
        Poly p = *this;
        for (auto& t : p.terms_) t.c = t.c * c;
        return p;
    }
    Poly times_monomial(const Monomial& m, const scalar_type& c) const {
        if (field().is_zero(c)) return Poly(ring_);
        Poly p(ring_);
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) p.terms_.push_back({t.m * m, t.c * c});
        return p;  // multiplication by a monomial preserves the order
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }
    friend Poly operator-(const Poly& a) {
        Poly p = a;
        for (auto& t : p.terms_) t.c = -t.c;
        return p;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        check_same_ring(a, b);
        std::vector<Term<K>> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) out.push_back({s.m * t.m, s.c * t.c});
        return from_terms(a.ring_ ? a.ring_ : b.ring_, std::move(out));
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    Poly pow(unsigned e) const {
        Poly result = constant(ring_, field().one());
        Poly base = *this;
        while (e) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    /// Substitutes images[i] for variable i; images live in a (possibly different) ring.
    Poly substitute(const std::vector<Poly>& images, const RingPtr<K>& target) const {
        if (images.size() != ring_->nvars()) throw InvariantError("substitution arity mismatch");
        Poly acc(target);
        for (const auto& t : terms_) {
            Poly term = constant(target, t.c);
            for (std::size_t i = 0; i < t.m.size(); ++i)
                if (t.m[i] > 0) term = term * images[i].pow(unsigned(t.m[i]));
            acc += term;
        }
        return acc;
    }

    /// Re-expresses this polynomial in `target`, mapping variable i to variable index_map[i].
    Poly rename_into(const RingPtr<K>& target, const std::vector<std::size_t>& index_map) const {
        std::vector<Term<K>> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            std::vector<int> e(target->nvars(), 0);
            for (std::size_t i = 0; i < t.m.size(); ++i) e[index_map[i]] += t.m[i];
            out.push_back({target->make(std::move(e)), t.c});
        }
        return from_terms(target, std::move(out));
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        const K& f = field();
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            const auto& t = terms_[k];
            std::string c = f.to_string(t.c);
            bool neg = !c.empty() && c[0] == '-';
            if (neg) c = c.substr(1);
            if (k == 0)
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            bool unit = c == "1";
            if (t.m.is_one())
                s += c;
            else if (unit)
                s += ring_->to_string(t.m);
            else
                s += c + "*" + ring_->to_string(t.m);
        }
        return s;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].m == b.terms_[i].m) || !(a.terms_[i].c == b.terms_[i].c)) return false;
        return true;
    }

    static void check_same_ring(const Poly& a, const Poly& b) {
        if (a.ring_ == b.ring_ || !a.ring_ || !b.ring_) return;
        if (!(*a.ring_ == *b.ring_)) throw InputError("polynomials from mixed ambient rings");
    }

  private:
    static Poly combine(const Poly& a, const Poly& b, bool subtract) {
        check_same_ring(a, b);
        const RingPtr<K>& ring = a.ring_ ? a.ring_ : b.ring_;
        Poly p(ring);
        if (!ring) return p;
        const PolyRing<K>& R = *ring;
        p.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int c;
            if (i == a.terms_.size())
                c = -1;
            else if (j == b.terms_.size())
                c = 1;
            else
                c = R.compare(a.terms_[i].m, b.terms_[j].m);
            if (c > 0) {
                p.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                const auto& t = b.terms_[j++];
                p.terms_.push_back({t.m, subtract ? scalar_type(-t.c) : t.c});
            } else {
                scalar_type s = subtract ? scalar_type(a.terms_[i].c - b.terms_[j].c)
                                         : scalar_type(a.terms_[i].c + b.terms_[j].c);
                if (!R.field().is_zero(s)) p.terms_.push_back({a.terms_[i].m, s});
                ++i;
                ++j;
            }
        }
        return p;
    }

    void normalize() {
        const PolyRing<K>& R = *ring_;
        std::sort(terms_.begin(), terms_.end(),
                  [&R](const Term<K>& a, const Term<K>& b) { return R.greater(a.m, b.m); });
        std::vector<Term<K>> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m)
                out.back().c = out.back().c + t.c;
            else
                out.push_back(std::move(t));
        }
        terms_.clear();
        for (auto& t : out)
            if (!R.field().is_zero(t.c)) terms_.push_back(std::move(t));
    }

    RingPtr<K> ring_;
    std::vector<Term<K>> terms_;
};

}  // namespace sfp

#endif  // SFP_POLY_HPP
