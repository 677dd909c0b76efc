#ifndef SFP_ALGEBRA_HPP
#define SFP_ALGEBRA_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfp/ideal_ops.hpp"
#include "sfp/linalg.hpp"
#include "sfp/poly_parse.hpp"

namespace sfp {

/// k[x]/J for a homogeneous ideal J inside (x), over positively weighted
/// variables, with distinguished k-rational point m = (x). When a truncation d is
/// set, every monomial of weighted degree > d is added to J.
template <Field K>
class PresentedAlgebra {
  public:
    PresentedAlgebra(std::string name, RingPtr<K> ring, std::vector<Poly<K>> relations,
                     std::optional<int> truncation)
        : name_(std::move(name)), ring_(std::move(ring)), relations_(std::move(relations)), truncation_(truncation) {
        const K& f = ring_->field();
        for (const auto& r : relations_) {
            Poly<K>::check_same_ring(Poly<K>(ring_), r);
            if (!f.is_zero(r.constant_term()))
                throw InputError("relation '" + r.to_string() +
                                 "' has a nonzero constant term, so (vars) would not be a k-rational point");
            if (!r.is_homogeneous())
                throw InputError("relation '" + r.to_string() + "' is not homogeneous for the variable weights");
        }
        if (truncation_ && *truncation_ < 1) throw InputError("truncation degree must be at least 1");
        std::vector<Poly<K>> gens = relations_;
        if (truncation_) {
            for (int e = *truncation_ + 1; e <= *truncation_ + ring_->max_weight(); ++e)
                for (auto& m : ring_->monomials_of_degree(e)) gens.push_back(Poly<K>::monomial(ring_, m, f.one()));
        }
        ideal_ = buchberger(Ideal<K>(ring_, std::move(gens)));
    }

    PresentedAlgebra(const PresentedAlgebra&) = delete;
    PresentedAlgebra& operator=(const PresentedAlgebra&) = delete;

    const std::string& name() const { return name_; }
    const RingPtr<K>& ring() const { return ring_; }
    const K& field() const { return ring_->field(); }
    std::size_t nvars() const { return ring_->nvars(); }
    const std::vector<std::string>& names() const { return ring_->names(); }
    int weight(std::size_t i) const { return ring_->weight(i); }
    const std::vector<Poly<K>>& relations() const { return relations_; }
    std::optional<int> truncation() const { return truncation_; }
    /// The full presentation ideal (relations plus truncation), with reduced Groebner basis.
    const Ideal<K>& ideal() const { return ideal_; }

    Poly<K> zero() const { return Poly<K>(ring_); }
    Poly<K> one() const { return Poly<K>::constant(ring_, field().one()); }
    Poly<K> var(std::size_t i) const { return normal_form(Poly<K>::variable(ring_, i)); }
    Poly<K> scalar(const Scalar<K>& c) const { return Poly<K>::constant(ring_, c); }

    Poly<K> normal_form(const Poly<K>& p) const {
        Poly<K>::check_same_ring(Poly<K>(ring_), p);
        if (ideal_.groebner().empty()) return p;
        std::vector<Term<K>> acc;
        for (const auto& t : p.terms()) {
            const Poly<K>& nf = monomial_normal_form(t.m);
            for (const auto& s : nf.terms()) acc.push_back({s.m, s.c * t.c});
        }
        return Poly<K>::from_terms(ring_, std::move(acc));
    }
    bool is_zero(const Poly<K>& p) const { return normal_form(p).is_zero(); }

    /// Standard monomials of degree d (cached).
    const std::vector<Monomial>& basis(int d) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = basis_.find(d);
        if (it != basis_.end()) return it->second.monomials;
        Piece piece;
        if (d >= 0 && !(truncation_ && d > *truncation_)) piece.monomials = graded_piece_basis(ideal_, d);
        for (std::size_t i = 0; i < piece.monomials.size(); ++i) piece.index[piece.monomials[i]] = i;
        return basis_.emplace(d, std::move(piece)).first->second.monomials;
    }
    std::size_t dim(int d) const { return basis(d).size(); }

    /// Coordinates of the degree-d part of p (after normal form) in basis(d).
    Vec<K> coords(const Poly<K>& p, int d) const {
        const auto& b = basis(d);
        Vec<K> v(b.size(), field().zero());
        Poly<K> nf = normal_form(p);
        const auto& idx = index(d);
        for (const auto& t : nf.terms()) {
            if (t.m.degree() != d) continue;
            v[idx.at(t.m)] = t.c;
        }
        return v;
    }
    Poly<K> from_coords(const Vec<K>& v, int d) const {
        const auto& b = basis(d);
        std::vector<Term<K>> terms;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (!field().is_zero(v[i])) terms.push_back({b[i], v[i]});
        return Poly<K>::from_terms(ring_, std::move(terms));
    }

    /// Largest degree with a nonzero piece, when that is known to be finite.
    std::optional<int> top_degree() const {
        if (!truncation_) {
            // Finite-dimensional exactly when every variable is nilpotent.
            for (std::size_t i = 0; i < nvars(); ++i) {
                bool nilpotent = false;
                for (const auto& g : ideal_.groebner()) {
                    const Monomial& lm = g.leading_monomial();
                    bool pure = true;
                    for (std::size_t j = 0; j < nvars(); ++j)
                        if (j != i && lm[j] != 0) pure = false;
                    if (pure && lm[i] > 0) nilpotent = true;
                }
                if (!nilpotent) return std::nullopt;
            }
        }
        int bound = truncation_ ? *truncation_ : 0;
        if (!truncation_) {
            // Sum over variables of (nilpotency exponent - 1) * weight bounds the top degree.
            for (std::size_t i = 0; i < nvars(); ++i) {
                int best = 0;
                for (const auto& g : ideal_.groebner()) {
                    const Monomial& lm = g.leading_monomial();
                    bool pure = lm[i] > 0;
                    for (std::size_t j = 0; j < nvars() && pure; ++j) pure = j == i || lm[j] == 0;
                    if (pure && (best == 0 || lm[i] < best)) best = lm[i];
                }
                bound += (best - 1) * weight(i);
            }
        }
        while (bound > 0 && dim(bound) == 0) --bound;
        return bound;
    }

    /// Generators of (x) as polynomials (the maximal ideal m).
    std::vector<Poly<K>> maximal_ideal_generators() const {
        std::vector<Poly<K>> out;
        for (std::size_t i = 0; i < nvars(); ++i) out.push_back(Poly<K>::variable(ring_, i));
        return out;
    }

    std::string describe() const {
        std::string s = field().name() + "[";
        for (std::size_t i = 0; i < nvars(); ++i) {
            if (i) s += ",";
            s += names()[i];
            if (weight(i) != 1) s += "(" + std::to_string(weight(i)) + ")";
        }
        s += "]";
        if (!relations_.empty()) {
            s += "/(";
            for (std::size_t i = 0; i < relations_.size(); ++i) s += (i ? ", " : "") + relations_[i].to_string();
            s += ")";
        }
        if (truncation_) s += " trunc " + std::to_string(*truncation_);
        return s;
    }

  private:
    struct Piece {
        std::vector<Monomial> monomials;
        std::map<Monomial, std::size_t> index;
    };

    const std::map<Monomial, std::size_t>& index(int d) const {
        basis(d);
        std::lock_guard<std::mutex> lock(mutex_);
        return basis_.at(d).index;
    }

    const Poly<K>& monomial_normal_form(const Monomial& m) const {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = nf_cache_.find(m);
            if (it != nf_cache_.end()) return it->second;
        }
        Poly<K> nf = reduce(Poly<K>::monomial(ring_, m, field().one()), ideal_.groebner());
        std::lock_guard<std::mutex> lock(mutex_);
        return nf_cache_.emplace(m, std::move(nf)).first->second;
    }

    std::string name_;
    RingPtr<K> ring_;
    std::vector<Poly<K>> relations_;
    std::optional<int> truncation_;
    Ideal<K> ideal_;

    mutable std::mutex mutex_;
    mutable std::map<int, Piece> basis_;
    mutable std::map<Monomial, Poly<K>> nf_cache_;
};

template <Field K>
using AlgebraPtr = std::shared_ptr<const PresentedAlgebra<K>>;

/// Validated algebra k[vars]/(relations), optionally truncated above degree `truncation`.
template <Field K>
AlgebraPtr<K> new_algebra(std::string name, const K& field, std::vector<std::string> vars, std::vector<int> weights,
                          const std::vector<std::string>& relations, std::optional<int> truncation = std::nullopt);

template <Field K>
AlgebraPtr<K> new_algebra(std::string name, RingPtr<K> ring, std::vector<Poly<K>> relations,
                          std::optional<int> truncation = std::nullopt) {
    return std::make_shared<const PresentedAlgebra<K>>(std::move(name), std::move(ring), std::move(relations),
                                                       truncation);
}

/// R/(extra): same ring, relations extended.
template <Field K>
AlgebraPtr<K> quotient_algebra(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& extra, std::string name = "") {
    std::vector<Poly<K>> rels = R->relations();
    for (const auto& g : extra) {
        if (!R->field().is_zero(g.constant_term()))
            throw InputError("ideal generator '" + g.to_string() + "' is not in the maximal ideal");
        Poly<K> nf = R->normal_form(g);
        if (!nf.is_zero()) rels.push_back(nf);
    }
    return new_algebra(name.empty() ? R->name() + "bar" : std::move(name), R->ring(), std::move(rels), R->truncation());
}

/// Element r = l + x of an algebra, l in k and x in m.
template <Field K>
class AlgebraElement {
  public:
    AlgebraElement(AlgebraPtr<K> algebra, const Poly<K>& value)
        : algebra_(std::move(algebra)), value_(algebra_->normal_form(value)) {}

    const AlgebraPtr<K>& algebra() const { return algebra_; }
    const Poly<K>& value() const { return value_; }
    Scalar<K> scalar_part() const { return value_.constant_term(); }
    Poly<K> m_part() const { return value_.without_constant(); }

    /// (l, x) with r = l + x and x of zero constant term.
    std::pair<Scalar<K>, Poly<K>> decompose() const { return {scalar_part(), m_part()}; }
    static AlgebraElement recompose(const AlgebraPtr<K>& A, const Scalar<K>& l, const Poly<K>& x) {
        if (!A->field().is_zero(x.constant_term())) throw InputError("m-part must have zero constant term");
        return AlgebraElement(A, A->scalar(l) + x);
    }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        same_algebra(a, b);
        return AlgebraElement(a.algebra_, a.value_ + b.value_);
    }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
        same_algebra(a, b);
        return AlgebraElement(a.algebra_, a.value_ * b.value_);
    }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.algebra_ == b.algebra_ && a.value_ == b.value_;
    }

    static void same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
        if (a.algebra_ != b.algebra_) throw InputError("elements of different algebras");
    }

  private:
    AlgebraPtr<K> algebra_;
    Poly<K> value_;
};

/// rr' = ll' + (l x' + l' x + x x'), evaluated on the decomposed parts.
template <Field K>
AlgebraElement<K> product_decomposed(const AlgebraElement<K>& r, const AlgebraElement<K>& s) {
    AlgebraElement<K>::same_algebra(r, s);
    const auto& A = r.algebra();
    auto [l, x] = r.decompose();
    auto [l2, x2] = s.decompose();
    Poly<K> m = A->normal_form(x2.scaled(l) + x.scaled(l2) + x * x2);
    return AlgebraElement<K>::recompose(A, Scalar<K>(l * l2), m.without_constant());
}

/// k-algebra map determined by the images of the source variables.
template <Field K>
struct AlgebraMorphism {
    AlgebraPtr<K> source;
    AlgebraPtr<K> target;
    std::vector<Poly<K>> images;  // normal forms in the target
    bool verified = false;

    Poly<K> apply(const Poly<K>& p) const {
        return target->normal_form(p.substitute(images, target->ring()));
    }
    /// Images homogeneous of the weight of their variable (or zero).
    bool is_graded() const {
        for (std::size_t i = 0; i < images.size(); ++i) {
            auto d = images[i].homogeneous_degree();
            if (!images[i].is_zero() && (!d || *d != source->weight(i))) return false;
        }
        return true;
    }
    std::string describe() const {
        std::string s;
        for (std::size_t i = 0; i < images.size(); ++i)
            s += (i ? ", " : "") + source->names()[i] + " -> " + images[i].to_string();
        return s;
    }
};

template <Field K>
AlgebraMorphism<K> make_morphism(const AlgebraPtr<K>& source, const AlgebraPtr<K>& target,
                                 const std::vector<Poly<K>>& images) {
    if (images.size() != source->nvars())
        throw InputError("morphism needs one image per variable of " + source->name());
    AlgebraMorphism<K> f{source, target, {}, false};
    for (const auto& img : images) f.images.push_back(target->normal_form(img));
    return f;
}

template <Field K>
AlgebraMorphism<K> identity_morphism(const AlgebraPtr<K>& A) {
    std::vector<Poly<K>> imgs;
    for (std::size_t i = 0; i < A->nvars(); ++i) imgs.push_back(Poly<K>::variable(A->ring(), i));
    auto f = make_morphism(A, A, imgs);
    f.verified = true;
    return f;
}

/// Checks that every image lies in m of the target and every source relation maps
/// to zero. Returns the verified morphism; throws InputError naming the violation.
template <Field K>
AlgebraMorphism<K> verify_morphism(AlgebraMorphism<K> f) {
    const K& k = f.target->field();
    if (f.images.size() != f.source->nvars()) throw InputError("morphism arity mismatch");
    for (std::size_t i = 0; i < f.images.size(); ++i)
        if (!k.is_zero(f.images[i].constant_term()))
            throw InputError("image of " + f.source->names()[i] + " has a nonzero constant term, so m is not mapped into m");
    for (const auto& g : f.source->ideal().groebner()) {
        Poly<K> img = f.apply(g);
        if (!img.is_zero())
            throw InputError("relation " + g.to_string() + " maps to " + img.to_string() + " != 0 in " + f.target->name());
    }
    f.verified = true;
    return f;
}

/// g o f.
template <Field K>
AlgebraMorphism<K> compose(const AlgebraMorphism<K>& g, const AlgebraMorphism<K>& f) {
    if (f.target != g.source) throw InputError("composition of non-composable morphisms");
    std::vector<Poly<K>> imgs;
    for (const auto& p : f.images) imgs.push_back(g.apply(p));
    auto h = make_morphism(f.source, g.target, imgs);
    h.verified = f.verified && g.verified;
    return h;
}

/// Two morphisms agree when images of the generators agree after normal form.
template <Field K>
bool same_morphism(const AlgebraMorphism<K>& a, const AlgebraMorphism<K>& b) {
    return a.source == b.source && a.target == b.target && a.images == b.images;
}

/// The canonical surjection R -> R/(extra) together with the quotient algebra.
template <Field K>
AlgebraMorphism<K> quotient_map(const AlgebraPtr<K>& R, const AlgebraPtr<K>& Rbar) {
    std::vector<Poly<K>> imgs;
    for (std::size_t i = 0; i < R->nvars(); ++i) imgs.push_back(Poly<K>::variable(Rbar->ring(), i));
    return verify_morphism(make_morphism(R, Rbar, imgs));
}

template <Field K>
struct MinimalGenerators {
    std::vector<Poly<K>> generators;
    std::size_t nu = 0;
};

/// A minimal homogeneous generating set of the ideal (gens) of R: generators whose
/// images form a k-basis of I/mI, chosen in input order degree by degree.
template <Field K>
MinimalGenerators<K> minimal_generators(const AlgebraPtr<K>& R, const std::vector<Poly<K>>& gens) {
    const K& k = R->field();
    std::vector<std::pair<int, Poly<K>>> work;
    for (const auto& g : gens) {
        Poly<K> nf = R->normal_form(g);
        if (!k.is_zero(nf.constant_term()))
            throw InputError("ideal generator " + g.to_string() + " is not contained in the maximal ideal");
        if (nf.is_zero()) continue;
        auto d = nf.homogeneous_degree();
        if (!d) throw InputError("ideal generator " + g.to_string() + " is not homogeneous");
        work.emplace_back(*d, nf);
    }
    std::stable_sort(work.begin(), work.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    MinimalGenerators<K> out;
    std::size_t i = 0;
    while (i < work.size()) {
        int e = work[i].first;
        EchelonSpan<K> span(k, R->dim(e));
        // (m I)_e: all generators of lower degree times standard monomials of positive degree.
        for (const auto& [d, g] : work) {
            if (d >= e) continue;
            for (const auto& mu : R->basis(e - d))
                span.insert(R->coords(g * Poly<K>::monomial(R->ring(), mu, k.one()), e));
        }
        for (; i < work.size() && work[i].first == e; ++i)
            if (span.insert(R->coords(work[i].second, e))) out.generators.push_back(work[i].second);
    }
    out.nu = out.generators.size();
    return out;
}

template <Field K>
AlgebraPtr<K> new_algebra(std::string name, const K& field, std::vector<std::string> vars, std::vector<int> weights,
                          const std::vector<std::string>& relations, std::optional<int> truncation) {
    if (weights.empty()) weights.assign(vars.size(), 1);
    auto ring = make_ring(field, std::move(vars), std::move(weights));
    std::vector<Poly<K>> rels;
    for (const auto& r : relations) rels.push_back(parse_poly(r, ring));
    return new_algebra(std::move(name), ring, std::move(rels), truncation);
}

}  // namespace sfp

#endif  // SFP_ALGEBRA_HPP
