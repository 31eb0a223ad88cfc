#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <string>

#include "padicpath/padic.hpp"

namespace padicpath {

/// A point exp(2 pi i q) of the unit circle, held as the rational q mod 1.
class Phase {
public:
    Phase() = default;
    explicit Phase(const Rational& q) : q_(q.mod_one()) {}

    const Rational& value() const { return q_; }
    bool is_zero() const { return q_.is_zero(); }

    Phase operator-() const { return Phase(-q_); }
    Phase& operator+=(const Phase& o) { q_ = (q_ + o.q_).mod_one(); return *this; }
    Phase& operator-=(const Phase& o) { q_ = (q_ - o.q_).mod_one(); return *this; }
    friend Phase operator+(Phase a, const Phase& b) { return a += b; }
    friend Phase operator-(Phase a, const Phase& b) { return a -= b; }

    friend bool operator==(const Phase& a, const Phase& b) { return a.q_ == b.q_; }

    std::string to_string() const { return q_.to_string(); }
    friend std::ostream& operator<<(std::ostream& os, const Phase& p) { return os << p.q_; }

private:
    Rational q_{0};
};

/// r * exp(2 pi i phase) with r^2 rational. Zero is canonical: (0, 0).
class Amplitude {
public:
    Amplitude() : modulus_sq_(1) {}
    Amplitude(const Rational& modulus_sq, const Phase& phase) : modulus_sq_(modulus_sq), phase_(phase) {
        if (modulus_sq_.sign() < 0) throw invalid_argument_error("negative squared modulus");
        if (modulus_sq_.is_zero()) phase_ = Phase();
    }

    static Amplitude zero() { return Amplitude(Rational(0), Phase()); }
    static Amplitude one() { return Amplitude(); }
    static Amplitude unit(const Phase& phase) { return Amplitude(Rational(1), phase); }

    const Rational& modulus_sq() const { return modulus_sq_; }
    const Phase& phase() const { return phase_; }
    bool is_zero() const { return modulus_sq_.is_zero(); }

    Amplitude conj() const { return Amplitude(modulus_sq_, -phase_); }

    friend bool operator==(const Amplitude& a, const Amplitude& b) {
        return a.modulus_sq_ == b.modulus_sq_ && a.phase_ == b.phase_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Amplitude& a) {
        return os << "{modulus_sq: " << a.modulus_sq_ << ", phase: " << a.phase_ << "}";
    }

private:
    Rational modulus_sq_;
    Phase phase_;
};

inline Amplitude amp_mul(const Amplitude& a, const Amplitude& b) {
    return Amplitude(a.modulus_sq() * b.modulus_sq(), a.phase() + b.phase());
}

inline Amplitude operator*(const Amplitude& a, const Amplitude& b) { return amp_mul(a, b); }

/// cos/sin of 2 pi q. Multiples of 1/8 come from a table so that the
/// common lambda values render without rounding noise.
inline std::complex<double> unit_complex(const Phase& phase) {
    const Rational eighths = phase.value() * Rational(8);
    if (eighths.is_integer()) {
        constexpr double h = 0.70710678118654752440;
        static constexpr double re[8] = {1, h, 0, -h, -1, -h, 0, h};
        static constexpr double im[8] = {0, h, 1, h, 0, -h, -1, -h};
        const unsigned long k = eighths.num().get_ui();
        return {re[k], im[k]};
    }
    // Reduce to (-1/2, 1/2] before converting so the angle stays small.
    Rational q = phase.value();
    if (q > Rational(Integer(1), Integer(2))) q -= Rational(1);
    const long double angle = 2.0L * 3.141592653589793238462643383279502884L * static_cast<long double>(q.to_double());
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

/// Floating-point value sqrt(modulus_sq) * exp(2 pi i phase); relative error
/// within 1e-12.
inline std::complex<double> amp_render(const Amplitude& a) {
    if (a.is_zero()) return {0.0, 0.0};
    return std::sqrt(a.modulus_sq().to_double()) * unit_complex(a.phase());
}

/// Additive character: chi_inf(x) = exp(-2 pi i x), chi_p(x) = exp(2 pi i {x}_p).
inline Phase chi(const Place& v, const Rational& x) {
    if (v.is_real()) return Phase(-x);
    return Phase(fractional_part(x, v.p()));
}

/// Legendre symbol (a/p) for odd p, by Euler's criterion.
inline int legendre(const Integer& a, Prime p) {
    if (p.is_two()) throw invalid_argument_error("legendre symbol needs an odd prime");
    const Integer pz = prime_integer(p);
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t());
    if (r == 0) return 0;
    Integer e;
    const Integer exponent = (pz - 1) / 2;
    mpz_powm(e.get_mpz_t(), r.get_mpz_t(), exponent.get_mpz_t(), pz.get_mpz_t());
    return e == 1 ? 1 : -1;
}

/// Exact phase of lambda_v(a), an eighth root of unity. a must be nonzero.
inline Phase lambda(const Place& v, const Rational& a) {
    if (a.is_zero()) throw invalid_argument_error("lambda_v(0) is not evaluated; handle a = 0 separately");
    auto eighths = [](long k) { return Phase(Rational(Integer(k), Integer(8))); };
    if (v.is_real()) return a.sign() > 0 ? eighths(7) : eighths(1);

    const Prime p = v.p();
    const long nu = valuation(a, p);
    const bool odd_nu = (nu % 2) != 0;
    if (!p.is_two()) {
        if (!odd_nu) return Phase();
        const int symbol = legendre(Integer(digit_at(a, p, 0)), p);
        const bool one_mod_four = p.value() % 4 == 1;
        if (one_mod_four) return symbol == 1 ? Phase() : eighths(4);
        return symbol == 1 ? eighths(2) : eighths(6);
    }
    // p = 2: the unit part is 1 + a1*2 + a2*4 + ...
    const DigitExpansion d = digits(a, p, 3);
    const unsigned long a1 = d.digits[1], a2 = d.digits[2];
    Phase result = a1 == 0 ? eighths(1) : eighths(7);
    if (odd_nu && ((a1 + a2) % 2 == 1)) result += eighths(4);
    return result;
}

}  // namespace padicpath
