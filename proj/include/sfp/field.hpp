#ifndef SFP_FIELD_HPP
#define SFP_FIELD_HPP

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "sfp/error.hpp"

namespace sfp {

/// Element of a prime field F_p. The modulus travels with the value so that
/// elements are self-contained; p == 0 marks a default-constructed zero that
/// adopts the modulus of whatever it is combined with.
struct Zp {
    std::uint32_t v = 0;
    std::uint32_t p = 0;

    friend bool operator==(const Zp& a, const Zp& b) { return a.v == b.v; }

    friend Zp operator+(Zp a, Zp b) {
        std::uint32_t p = join(a, b);
        std::uint64_t s = std::uint64_t(a.v) + b.v;
        return {std::uint32_t(s >= p ? s - p : s), p};
    }
    friend Zp operator-(Zp a, Zp b) {
        std::uint32_t p = join(a, b);
        return {a.v >= b.v ? a.v - b.v : std::uint32_t(std::uint64_t(a.v) + p - b.v), p};
    }
    friend Zp operator-(Zp a) { return {a.v == 0 ? 0 : a.p - a.v, a.p}; }
    friend Zp operator*(Zp a, Zp b) {
        std::uint32_t p = join(a, b);
        return {std::uint32_t(std::uint64_t(a.v) * b.v % p), p};
    }
    friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }

    Zp& operator+=(Zp b) { return *this = *this + b; }
    Zp& operator-=(Zp b) { return *this = *this - b; }
    Zp& operator*=(Zp b) { return *this = *this * b; }

    Zp inverse() const {
        if (v == 0) throw InvariantError("division by zero in GF(" + std::to_string(p) + ")");
        // Fermat; p is prime.
        std::uint64_t base = v, result = 1;
        std::uint32_t e = p - 2;
        while (e) {
            if (e & 1) result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return {std::uint32_t(result), p};
    }

  private:
    static std::uint32_t join(const Zp& a, const Zp& b) {
        if (a.p == b.p) {
            if (a.p == 0) throw InvariantError("arithmetic on unbound prime-field zeros");
            return a.p;
        }
        if (a.p == 0) return b.p;
        if (b.p == 0) return a.p;
        throw InvariantError("mixed prime fields GF(" + std::to_string(a.p) + ") and GF(" +
                             std::to_string(b.p) + ")");
    }
};

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class PrimeField {
  public:
    using element_type = Zp;

    explicit PrimeField(std::uint32_t p = 32003) : p_(p) {
        if (!is_prime(p)) throw InputError("GF(" + std::to_string(p) + "): modulus is not prime");
        if (p >= (1u << 31)) throw InputError("GF(p): modulus must be below 2^31");
    }

    std::uint32_t characteristic() const { return p_; }
    std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

    Zp zero() const { return {0, p_}; }
    Zp one() const { return {1 % p_, p_}; }
    Zp from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return {std::uint32_t(r), p_};
    }
    Zp from_ratio(long long num, long long den) const {
        if (den == 0) throw InputError("zero denominator");
        Zp d = from_int(den);
        if (d.v == 0) throw InputError("denominator vanishes in " + name());
        return from_int(num) / d;
    }
    bool is_zero(const Zp& a) const { return a.v == 0; }
    bool is_one(const Zp& a) const { return a.v == 1; }
    Zp inv(const Zp& a) const { return Zp{a.v, p_}.inverse(); }
    std::string to_string(const Zp& a) const {
        // Symmetric representative reads better in printed polynomials.
        if (a.v > p_ / 2) return "-" + std::to_string(p_ - a.v);
        return std::to_string(a.v);
    }
    template <class Rng>
    Zp random(Rng& rng) const {
        std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
        return {dist(rng), p_};
    }
    /// Number of elements, or 0 for infinite fields.
    std::uint64_t size() const { return p_; }

    bool operator==(const PrimeField&) const = default;

  private:
    std::uint32_t p_;
};

class RationalField {
  public:
    using element_type = mpq_class;

    std::string name() const { return "QQ"; }
    std::uint32_t characteristic() const { return 0; }

    mpq_class zero() const { return mpq_class(0); }
    mpq_class one() const { return mpq_class(1); }
    mpq_class from_int(long long n) const {
        mpq_class q;
        q = mpz_class(std::to_string(n));
        return q;
    }
    mpq_class from_ratio(long long num, long long den) const {
        if (den == 0) throw InputError("zero denominator");
        mpq_class q(from_int(num) / from_int(den));
        q.canonicalize();
        return q;
    }
    bool is_zero(const mpq_class& a) const { return sgn(a) == 0; }
    bool is_one(const mpq_class& a) const { return a == 1; }
    mpq_class inv(const mpq_class& a) const {
        if (sgn(a) == 0) throw InvariantError("division by zero in QQ");
        return mpq_class(1) / a;
    }
    std::string to_string(const mpq_class& a) const { return a.get_str(); }
    template <class Rng>
    mpq_class random(Rng& rng) const {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        return q;
    }
    std::uint64_t size() const { return 0; }

    bool operator==(const RationalField&) const = default;
};

template <class K>
concept Field = std::equality_comparable<K> && requires(const K& f, const typename K::element_type& a,
                                                        long long n) {
    typename K::element_type;
    { f.zero() } -> std::convertible_to<typename K::element_type>;
    { f.one() } -> std::convertible_to<typename K::element_type>;
    { f.from_int(n) } -> std::convertible_to<typename K::element_type>;
    { f.from_ratio(n, n) } -> std::convertible_to<typename K::element_type>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.inv(a) } -> std::convertible_to<typename K::element_type>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
    { f.name() } -> std::convertible_to<std::string>;
    { f.size() } -> std::convertible_to<std::uint64_t>;
};

template <Field K>
using Scalar = typename K::element_type;

}  // namespace sfp

#endif  // SFP_FIELD_HPP
