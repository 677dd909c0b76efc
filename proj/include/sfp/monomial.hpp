#ifndef SFP_MONOMIAL_HPP
#define SFP_MONOMIAL_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sfp/error.hpp"
#include "sfp/field.hpp"

namespace sfp {

/// Exponent vector with its cached weighted degree. Ordering of monomials under a
/// monomial order is the ring's business; operator<=> here is plain lexicographic
/// on exponents and only serves as a map key.
class Monomial {
  public:
    Monomial() = default;
    Monomial(std::vector<int> exps, int degree) : exps_(std::move(exps)), degree_(degree) {}

    const std::vector<int>& exponents() const { return exps_; }
    int operator[](std::size_t i) const { return exps_[i]; }
    std::size_t size() const { return exps_.size(); }
    int degree() const { return degree_; }
    bool is_one() const {
        return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
    }
    int total_exponent() const {
        int s = 0;
        for (int e : exps_) s += e;
        return s;
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        std::vector<int> e(a.exps_.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exps_[i] + b.exps_[i];
        return {std::move(e), a.degree_ + b.degree_};
    }

    /// a / b; b must divide a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        std::vector<int> e(a.exps_.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = a.exps_[i] - b.exps_[i];
            if (e[i] < 0) throw InvariantError("monomial division with remainder");
        }
        return {std::move(e), a.degree_ - b.degree_};
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        return a.exps_ <=> b.exps_;
    }

  private:
    std::vector<int> exps_;
    int degree_ = 0;
};

enum class MonomialOrder {
    WeightedGrevlex,
    /// Product order: the first `block` variables are eliminated first.
    Elimination,
};

/// Ambient polynomial ring k[x_1..x_n] with positive integer weights and a
/// monomial order. Immutable; shared between polynomials via RingPtr.
template <Field K>
class PolyRing {
  public:
    PolyRing(K field, std::vector<std::string> names, std::vector<int> weights,
             MonomialOrder order = MonomialOrder::WeightedGrevlex, std::size_t block = 0)
        : field_(std::move(field)),
          names_(std::move(names)),
          weights_(std::move(weights)),
          order_(order),
          block_(block) {
        if (names_.size() != weights_.size())
            throw InputError("variable/weight count mismatch");
        for (std::size_t i = 0; i < weights_.size(); ++i)
            if (weights_[i] < 1)
                throw InputError("variable '" + names_[i] + "' has non-positive weight " +
                                 std::to_string(weights_[i]));
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j]) throw InputError("duplicate variable '" + names_[i] + "'");
        if (order_ == MonomialOrder::Elimination && block_ > names_.size())
            throw InputError("elimination block larger than variable count");
    }

    const K& field() const { return field_; }
    std::size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& weights() const { return weights_; }
    int weight(std::size_t i) const { return weights_[i]; }
    int max_weight() const {
        return weights_.empty() ? 1 : *std::max_element(weights_.begin(), weights_.end());
    }
    MonomialOrder order() const { return order_; }
    std::size_t block() const { return block_; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return std::size_t(it - names_.begin());
    }

    Monomial one() const { return {std::vector<int>(nvars(), 0), 0}; }
    Monomial var(std::size_t i) const {
        std::vector<int> e(nvars(), 0);
        e[i] = 1;
        return {std::move(e), weights_[i]};
    }
    Monomial make(std::vector<int> exps) const {
        if (exps.size() != nvars()) throw InvariantError("exponent vector of wrong length");
        int d = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0) throw InvariantError("negative exponent");
            d += exps[i] * weights_[i];
        }
        return {std::move(exps), d};
    }
    Monomial lcm(const Monomial& a, const Monomial& b) const {
        std::vector<int> e(nvars());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
        return make(std::move(e));
    }

    /// Three-way comparison under the ring's order: positive when a > b.
    int compare(const Monomial& a, const Monomial& b) const {
        if (order_ == MonomialOrder::Elimination) {
            int c = grevlex_range(a, b, 0, block_);
            if (c != 0) return c;
            return grevlex_range(a, b, block_, nvars());
        }
        return grevlex_range(a, b, 0, nvars());
    }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    /// All monomials of weighted degree d, in descending order.
    std::vector<Monomial> monomials_of_degree(int d) const {
        std::vector<Monomial> out;
        if (d < 0) return out;
        std::vector<int> e(nvars(), 0);
        enumerate(0, d, e, out);
        std::sort(out.begin(), out.end(),
                  [this](const Monomial& a, const Monomial& b) { return greater(a, b); });
        return out;
    }

    std::string to_string(const Monomial& m) const {
        std::string s;
        for (std::size_t i = 0; i < nvars(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += names_[i];
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }

    bool operator==(const PolyRing& o) const {
        return field_ == o.field_ && names_ == o.names_ && weights_ == o.weights_ &&
               order_ == o.order_ && block_ == o.block_;
    }

  private:
    int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const {
        int da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i] * weights_[i];
            db += b[i] * weights_[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = hi; i-- > lo;) {
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        }
        return 0;
    }

    void enumerate(std::size_t i, int rest, std::vector<int>& e, std::vector<Monomial>& out) const {
        if (i + 1 == nvars()) {
            if (rest % weights_[i] == 0) {
                e[i] = rest / weights_[i];
                out.push_back(make(e));
                e[i] = 0;
            }
            return;
        }
        if (nvars() == 0) {
            if (rest == 0) out.push_back(one());
            return;
        }
        for (int k = 0; k * weights_[i] <= rest; ++k) {
            e[i] = k;
            enumerate(i + 1, rest - k * weights_[i], e, out);
        }
        e[i] = 0;
    }

    K field_;
    std::vector<std::string> names_;
    std::vector<int> weights_;
    MonomialOrder order_;
    std::size_t block_;
};

template <Field K>
using RingPtr = std::shared_ptr<const PolyRing<K>>;

template <Field K>
RingPtr<K> make_ring(K field, std::vector<std::string> names, std::vector<int> weights,
                     MonomialOrder order = MonomialOrder::WeightedGrevlex, std::size_t block = 0) {
    return std::make_shared<const PolyRing<K>>(std::move(field), std::move(names), std::move(weights),
                                               order, block);
}

}  // namespace sfp

#endif  // SFP_MONOMIAL_HPP
