#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "padicpath/error.hpp"

namespace padicpath {

using Integer = mpz_class;

/**
 * Exact rational number, always stored in lowest terms with a positive
 * denominator. Zero is 0/1.
 *
 * Thin value wrapper over mpq_class; the wrapper exists so that every
 * constructor canonicalizes and so that arithmetic never produces a
 * lazily-evaluated GMP expression template that escapes into user code.
 */
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& n) : q_(n) {}  // NOLINT(google-explicit-constructor)

    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw invalid_argument_error("rational with zero denominator");
        q_.get_num() = num;
        q_.get_den() = den;
        q_.canonicalize();
    }

    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "num/den" or "num" in decimal; a leading '-' or '+' is allowed
    /// on the numerator only.
    static Rational parse(std::string_view text) {
        auto digits_ok = [](std::string_view s, bool allow_sign) {
            if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
            if (s.empty()) return false;
            for (char c : s)
                if (!std::isdigit(static_cast<unsigned char>(c))) return false;
            return true;
        };
        auto strip_plus = [](std::string_view s) {
            if (!s.empty() && s.front() == '+') s.remove_prefix(1);
            return std::string(s);
        };
        const auto slash = text.find('/');
        const std::string_view num = text.substr(0, slash);
        if (!digits_ok(num, true))
            throw parse_error("malformed rational '" + std::string(text) + "'");
        Integer n(strip_plus(num), 10);
        Integer d(1);
        if (slash != std::string_view::npos) {
            const std::string_view den = text.substr(slash + 1);
            if (!digits_ok(den, false))
                throw parse_error("malformed rational '" + std::string(text) + "'");
            d = Integer(std::string(den), 10);
            if (d == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(n, d);
    }

    const Integer& num() const { return q_.get_num(); }
    const Integer& den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return den() == 1; }

    double to_double() const { return q_.get_d(); }

    std::string to_string() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw invalid_argument_error("division by zero rational");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    Rational inverse() const { return Rational(1) / *this; }
    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational square() const { return *this * *this; }

    /// Largest integer not exceeding the value.
    Integer floor() const {
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
        return f;
    }

    /// x - floor(x), in [0, 1).
    Rational mod_one() const { return *this - Rational(floor()); }

    /// Integer power; negative exponents invert.
    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Integer n, d;
        mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class q_{0};
};

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace padicpath

template <>
struct std::hash<padicpath::Rational> {
    std::size_t operator()(const padicpath::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.to_string());
    }
};
