#pragma once

// Valuations, norms, canonical digit expansions and the fractional part of
// rationals viewed inside Q_p, plus the digit-wise linear order on Q_p.

#include <climits>
#include <vector>

#include "padicpath/place.hpp"
#include "padicpath/rational.hpp"

namespace padicpath {

/// Valuation of zero.
inline constexpr long kInfiniteValuation = LONG_MAX;

struct zero_expansion_error : domain_error {
    zero_expansion_error() : domain_error("zero has no canonical expansion") {}
};

inline Integer prime_integer(Prime p) { return Integer(p.value()); }

/// p^e as an exact rational, e of either sign.
inline Rational prime_power(Prime p, long e) {
    const Integer pe = ipow(prime_integer(p), static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(Integer(1), pe) : Rational(pe);
}

inline long valuation(const Integer& n, Prime p) {
    if (n == 0) return kInfiniteValuation;
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime_integer(p).get_mpz_t()));
}

inline long valuation(const Rational& x, Prime p) {
    if (x.is_zero()) return kInfiniteValuation;
    return valuation(x.num(), p) - valuation(x.den(), p);
}

/// |x|_v exactly: p^(-valuation) at a prime, |x| at the real place.
inline Rational norm(const Rational& x, const Place& v) {
    if (v.is_real()) return x.abs();
    if (x.is_zero()) return Rational(0);
    return prime_power(v.p(), -valuation(x, v.p()));
}

/// x * p^(-valuation(x)), a p-adic unit. Requires x != 0.
inline Rational unit_part(const Rational& x, Prime p) {
    return x * prime_power(p, -valuation(x, p));
}

/// Representative in [0, p^k) of x modulo p^k. Requires valuation(x) >= 0.
inline Integer residue_mod(const Rational& x, Prime p, unsigned long k) {
    const Integer modulus = ipow(prime_integer(p), k);
    if (x.is_zero() || k == 0) return Integer(0);
    if (valuation(x, p) < 0) throw invalid_argument_error("residue_mod: argument is not p-integral");
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), x.den().get_mpz_t(), modulus.get_mpz_t()) == 0)
        throw invalid_argument_error("residue_mod: denominator not invertible");
    Integer r = x.num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

/// Canonical expansion x = p^valuation * (d0 + d1 p + d2 p^2 + ...), d0 != 0,
/// truncated to the first digits.size() digits.
struct DigitExpansion {
    Prime prime;
    long valuation;
    std::vector<unsigned long> digits;

    /// p^valuation * sum d_i p^i as an exact rational.
    Rational reconstruct() const {
        Integer acc(0);
        Integer pw(1);
        const Integer pz = prime_integer(prime);
        for (unsigned long d : digits) {
            acc += pw * d;
            pw *= pz;
        }
        return Rational(acc) * prime_power(prime, valuation);
    }
};

inline DigitExpansion digits(const Rational& x, Prime p, std::size_t count) {
    if (x.is_zero()) throw zero_expansion_error();
    const long nu = valuation(x, p);
    Integer r = residue_mod(unit_part(x, p), p, count);
    DigitExpansion out{p, nu, {}};
    out.digits.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Integer d;
        mpz_fdiv_qr_ui(r.get_mpz_t(), d.get_mpz_t(), r.get_mpz_t(), p.value());
        out.digits.push_back(d.get_ui());
    }
    return out;
}

/// Digit number `index` (counted from the leading digit) of a nonzero x.
inline unsigned long digit_at(const Rational& x, Prime p, unsigned long index) {
    const Integer r = residue_mod(unit_part(x, p), p, index + 1);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_mpz_t(), ipow(prime_integer(p), index).get_mpz_t());
    return q.get_ui();
}

/// {x}_p: the sum of the negative-power terms of the canonical expansion,
/// a rational in [0,1) with denominator a power of p.
inline Rational fractional_part(const Rational& x, Prime p) {
    if (x.is_zero()) return Rational(0);
    const long nu = valuation(x, p);
    if (nu >= 0) return Rational(0);
    const unsigned long k = static_cast<unsigned long>(-nu);
    const Rational scaled = x * prime_power(p, static_cast<long>(k));
    return Rational(residue_mod(scaled, p, k), ipow(prime_integer(p), k));
}

/// The linear order on Q_p: smaller norm first, then lexicographic on digits
/// from the leading one.
inline bool linear_less(const Rational& x, const Rational& y, Prime p) {
    if (x == y) return false;
    const Rational nx = norm(x, p), ny = norm(y, p);
    if (nx != ny) return nx < ny;
    // Equal norms, both nonzero. The expansions agree exactly up to the
    // index where x - y first contributes.
    const long nu = valuation(x, p);
    const unsigned long m = static_cast<unsigned long>(valuation(x - y, p) - nu);
    return digit_at(x, p, m) < digit_at(y, p, m);
}

/// Strict order of the place: linear_less at a prime, the usual order at inf.
inline bool place_less(const Rational& x, const Rational& y, const Place& v) {
    return v.is_real() ? x < y : linear_less(x, y, v.p());
}

}  // namespace padicpath
