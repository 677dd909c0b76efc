#ifndef SFP_POLY_PARSE_HPP
#define SFP_POLY_PARSE_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "sfp/poly.hpp"

namespace sfp {

/// Parse failure at a byte offset into the parsed text.
class ParseError : public InputError {
  public:
    ParseError(std::size_t offset, const std::string& msg) : InputError(msg), offset_(offset) {}
    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

namespace detail {

// expr   := ['-'] term (('+'|'-') term)*
// term   := factor (('*' factor) | ('/' factor))*      division only by constants
// factor := atom ['^' integer]
// atom   := integer | identifier | '(' expr ')' | '-' factor
template <Field K>
class PolyParser {
  public:
    PolyParser(std::string_view text, const RingPtr<K>& ring) : s_(text), ring_(ring) {}

    Poly<K> parse_all() {
        Poly<K> p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

  private:
    Poly<K> expr() {
        skip();
        Poly<K> acc(ring_);
        bool first = true;
        while (true) {
            skip();
            bool neg = false;
            if (peek('+') || peek('-')) {
                neg = s_[pos_] == '-';
                ++pos_;
            } else if (!first) {
                break;
            }
            Poly<K> t = term();
            acc = neg ? acc - t : acc + t;
            first = false;
        }
        return acc;
    }

    Poly<K> term() {
        Poly<K> acc = factor();
        while (true) {
            skip();
            if (peek('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (peek('/')) {
                std::size_t at = ++pos_;
                Poly<K> d = factor();
                if (!d.is_constant() || d.is_zero()) throw ParseError(at, "division by a non-constant or zero");
                acc = acc.scaled(ring_->field().inv(d.constant_term()));
            } else {
                return acc;
            }
        }
    }

    Poly<K> factor() {
        Poly<K> base = atom();
        skip();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t at = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw ParseError(at, "expected exponent");
            if (digits.size() > 4) throw ParseError(at, "exponent too large");
            base = base.pow(unsigned(std::stoul(digits)));
        }
        return base;
    }

    Poly<K> atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of polynomial");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly<K> p = expr();
            skip();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            std::string digits = read_digits();
            return Poly<K>::constant(ring_, parse_integer(digits, at));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                        s_[pos_] == '\''))
                name += s_[pos_++];
            auto idx = ring_->index_of(name);
            if (!idx) throw ParseError(at, "unknown variable '" + name + "'");
            return Poly<K>::variable(ring_, *idx);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Scalar<K> parse_integer(const std::string& digits, std::size_t at) const {
        const K& f = ring_->field();
        Scalar<K> v = f.zero(), ten = f.from_int(10);
        for (char d : digits) v = v * ten + f.from_int(d - '0');
        (void)at;
        return v;
    }

    std::string read_digits() {
        std::string d;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d += s_[pos_++];
        return d;
    }
    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    std::string_view s_;
    RingPtr<K> ring_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <Field K>
Poly<K> parse_poly(std::string_view text, const RingPtr<K>& ring) {
    return detail::PolyParser<K>(text, ring).parse_all();
}

}  // namespace sfp

#endif  // SFP_POLY_PARSE_HPP
