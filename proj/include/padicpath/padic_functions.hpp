#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "padicpath/characters.hpp"

namespace padicpath {

struct no_square_root_error : domain_error {
    explicit no_square_root_error(const std::string& w) : domain_error("no square root in Q_p: " + w) {}
};

/**
 * A p-adic number known modulo p^precision:
 *
 *     p^valuation * (d0 + d1 p + ... + d_{n-1} p^{n-1}) + O(p^precision)
 *
 * with d0 != 0 and valuation + n == precision. A value with no known nonzero
 * digit is O(p^precision) and reports valuation == precision. Exact values
 * carry precision kInfiniteValuation.
 *
 * Arithmetic propagates precision pessimistically: the precision of a result
 * is the largest exponent guaranteed by the precisions of the operands.
 */
class PadicTruncation {
public:
    /// Exact rational x reduced modulo p^precision.
    static PadicTruncation from_rational(const Rational& x, Prime p, long precision) {
        PadicTruncation t(p, precision);
        if (x.is_zero()) return t;
        if (precision == kInfiniteValuation) {
            t.rep_ = x;
            return t;
        }
        const long nu = padicpath::valuation(x, p);
        if (nu >= precision) return t;
        t.rep_ = Rational(residue_mod(unit_part(x, p), p, static_cast<unsigned long>(precision - nu))) * prime_power(p, nu);
        return t;
    }

    static PadicTruncation exact(const Rational& x, Prime p) { return from_rational(x, p, kInfiniteValuation); }
    static PadicTruncation zero(Prime p, long precision) { return PadicTruncation(p, precision); }

    Prime prime() const { return p_; }
    long valuation() const { return rep_.is_zero() ? precision_ : padicpath::valuation(rep_, p_); }
    long precision() const { return precision_; }
    bool is_exact() const { return precision_ == kInfiniteValuation; }
    /// Number of known digits from the leading one on.
    long known_digits() const { return is_exact() ? kInfiniteValuation : precision_ - valuation(); }

    std::vector<unsigned long> digits() const {
        if (is_exact()) throw precision_error("an exact value has no finite digit string");
        if (rep_.is_zero()) return {};
        return padicpath::digits(rep_, p_, static_cast<std::size_t>(known_digits())).digits;
    }

    /// True when no nonzero digit is known (the value is O(p^precision)).
    bool is_indistinguishable_from_zero() const { return rep_.is_zero(); }

    /// The representative p^valuation * sum d_i p^i.
    const Rational& to_rational() const { return rep_; }

    /// True when this value and x agree modulo p^k (k at most precision()).
    bool agrees_with(const Rational& x, long k) const {
        if (k > precision_) throw precision_error("agreement requested beyond known precision");
        const Rational diff = rep_ - x;
        return diff.is_zero() || padicpath::valuation(diff, p_) >= k;
    }

    PadicTruncation with_precision(long k) const { return from_rational(rep_, p_, std::min(k, precision_)); }

    std::string to_string() const {
        const std::string ps = std::to_string(p_.value());
        if (is_exact()) return rep_.to_string();
        std::string s;
        const std::vector<unsigned long> d = digits();
        if (!d.empty()) {
            s = ps + "^" + std::to_string(valuation()) + "*(";
            for (std::size_t i = 0; i < d.size(); ++i) {
                if (i) s += " + ";
                s += std::to_string(d[i]);
                if (i == 1) s += "*" + ps;
                if (i > 1) s += "*" + ps + "^" + std::to_string(i);
            }
            s += ") + ";
        }
        return s + "O(" + ps + "^" + std::to_string(precision_) + ")";
    }

    PadicTruncation operator-() const { return from_rational(-rep_, p_, precision_); }

    friend PadicTruncation operator+(const PadicTruncation& a, const PadicTruncation& b) {
        a.check_same_prime(b);
        return from_rational(a.rep_ + b.rep_, a.p_, std::min(a.precision_, b.precision_));
    }
    friend PadicTruncation operator-(const PadicTruncation& a, const PadicTruncation& b) { return a + (-b); }

    friend PadicTruncation operator*(const PadicTruncation& a, const PadicTruncation& b) {
        a.check_same_prime(b);
        const long prec = std::min(add(a.precision_, b.valuation()), add(b.precision_, a.valuation()));
        return from_rational(a.rep_ * b.rep_, a.p_, prec);
    }

    friend PadicTruncation operator/(const PadicTruncation& a, const PadicTruncation& b) {
        a.check_same_prime(b);
        if (b.is_indistinguishable_from_zero())
            throw precision_error("division by a value indistinguishable from zero");
        const long vb = b.valuation();
        const long prec = std::min(add(a.precision_, -vb), add(add(b.precision_, a.valuation()), -2 * vb));
        return from_rational(a.rep_ / b.rep_, a.p_, prec);
    }

private:
    PadicTruncation(Prime p, long precision) : p_(p), precision_(precision) {}

    // Sum with kInfiniteValuation absorbing.
    static long add(long x, long y) {
        return x == kInfiniteValuation || y == kInfiniteValuation ? kInfiniteValuation : x + y;
    }

    void check_same_prime(const PadicTruncation& o) const {
        if (!(p_ == o.p_)) throw invalid_argument_error("p-adic values over different primes");
    }

    Prime p_;
    Rational rep_{0};
    long precision_;
};

/// |x|_p of a truncation whose leading digit is known.
inline Rational norm(const PadicTruncation& x) {
    if (x.is_indistinguishable_from_zero()) throw precision_error("norm of a value indistinguishable from zero");
    return prime_power(x.prime(), -x.valuation());
}

/// lambda_p of a truncated value; needs the leading digit (odd p) or the
/// first three digits (p = 2).
inline Phase lambda(const PadicTruncation& x) {
    const long needed = x.prime().is_two() ? 3 : 1;
    if (x.is_indistinguishable_from_zero() || x.known_digits() < needed) throw precision_error("too few digits to evaluate lambda_p");
    return lambda(Place(x.prime()), x.to_rational());
}

/// chi_p of a truncated value; the fractional part is pinned once the value
/// is known modulo Z_p.
inline Phase chi(const PadicTruncation& x) {
    if (x.precision() < 0) throw precision_error("fractional part not determined at precision " + std::to_string(x.precision()));
    return chi(Place(x.prime()), x.to_rational());
}

struct SeriesOptions {
    std::size_t window = 8;
    std::size_t max_terms = 100000;
};

/**
 * Sum of c_k x^k in Q_p, correct modulo p^P.
 *
 * Summation stops once `window` consecutive terms are zero or have
 * valuation at least P with nondecreasing valuations. If the smallest term
 * valuation in the latest window fails to exceed that of the window before
 * it while still below P, the series is declared divergent.
 */
inline PadicTruncation series_eval(const std::function<Rational(std::size_t)>& coefficient, const Rational& x,
                                   Prime p, long P, SeriesOptions options = {}) {
    Rational sum(0);
    Rational power(1);
    std::deque<long> recent;  // valuations of the last 2*window terms, kInfiniteValuation for zero terms
    for (std::size_t k = 0; k < options.max_terms; ++k) {
        const Rational term = coefficient(k) * power;
        sum += term;
        power *= x;
        recent.push_back(valuation(term, p));
        if (recent.size() > 2 * options.window) recent.pop_front();
        if (recent.size() < options.window) continue;

        const auto last_begin = recent.end() - static_cast<long>(options.window);
        bool settled = true;
        long prev = LONG_MIN;
        for (auto it = last_begin; it != recent.end(); ++it) {
            if (*it == kInfiniteValuation) continue;
            if (*it < P || *it < prev) { settled = false; break; }
            prev = *it;
        }
        if (settled) return PadicTruncation::from_rational(sum, p, P);

        if (recent.size() == 2 * options.window) {
            const long last_min = *std::min_element(last_begin, recent.end());
            const long prev_min = *std::min_element(recent.begin(), last_begin);
            if (last_min != kInfiniteValuation && last_min <= prev_min && last_min < P)
                throw domain_error("power series terms do not tend to zero p-adically");
        }
    }
    throw domain_error("power series did not settle within the term limit");
}

namespace detail {

/// v_p(k!) = (k - s_p(k)) / (p - 1), s_p the base-p digit sum.
inline long factorial_valuation(unsigned long k, Prime p) {
    unsigned long digit_sum = 0;
    for (unsigned long n = k; n; n /= p.value()) digit_sum += n % p.value();
    return static_cast<long>((k - digit_sum) / (p.value() - 1));
}

inline void check_trig_domain(const Rational& x, Prime p) {
    if (x.is_zero()) return;
    const long need = p.is_two() ? 2 : 1;
    if (valuation(x, p) < need)
        throw domain_error("trigonometric series needs |x|_p <= p^-" + std::to_string(need) + ", got " + x.to_string());
}

// Sum of (-1)^k x^(2k+offset) / (2k+offset)! for offset 0 (cos) or 1 (sin),
// stopping when the lower bound n v(x) - (n-1)/(p-1), n = 2k+offset, reaches
// P. That bound increases with n on the convergence domain.
inline PadicTruncation trig_series(const Rational& x, Prime p, long P, unsigned offset) {
    check_trig_domain(x, p);
    if (x.is_zero()) return PadicTruncation::from_rational(Rational(offset == 0 ? 1 : 0), p, P);
    const long v = valuation(x, p);
    Rational term = offset == 0 ? Rational(1) : x;
    Rational sum(0);
    const Rational minus_x2 = -(x * x);
    for (unsigned long n = offset;; n += 2) {
        // floor((n-1)/(p-1)) >= v_p(n!) for n >= 1.
        const long bound = n == 0 ? 0 : static_cast<long>(n) * v - static_cast<long>((n - 1) / (p.value() - 1));
        if (n > 1 && bound >= P) break;
        sum += term;
        term *= minus_x2 / Rational(static_cast<long>((n + 1) * (n + 2)));
    }
    return PadicTruncation::from_rational(sum, p, P);
}

}  // namespace detail

inline PadicTruncation sin_p(const Rational& x, Prime p, long P) { return detail::trig_series(x, p, P, 1); }
inline PadicTruncation cos_p(const Rational& x, Prime p, long P) { return detail::trig_series(x, p, P, 0); }

/// sin/cos; cos is a unit on the domain, so the quotient keeps precision P.
inline PadicTruncation tan_p(const Rational& x, Prime p, long P) { return sin_p(x, p, P) / cos_p(x, p, P); }

namespace detail {

// Square root of a quadratic residue r modulo an odd prime p (Tonelli-Shanks).
inline Integer sqrt_mod_prime(const Integer& r, const Integer& p) {
    if (r == 0) return 0;
    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) { q /= 2; ++s; }
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    auto powm = [&](const Integer& b, const Integer& e) {
        Integer out;
        mpz_powm(out.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return out;
    };
    Integer c = powm(z, q), x = powm(r, (q + 1) / 2), t = powm(r, q);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Integer tt = t;
        while (tt != 1) { tt = tt * tt % p; ++i; }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

}  // namespace detail

/**
 * Square root in Q_p with y^2 = x mod p^P.
 *
 * x must have even valuation and a unit part that is a square (a quadratic
 * residue leading digit for odd p, 1 mod 8 for p = 2). Of the two roots the
 * one that comes first in the linear order of Q_p is returned: the smaller
 * leading digit for odd p, the root = 1 mod 4 for p = 2.
 */
inline PadicTruncation sqrt_p(const Rational& x, Prime p, long P) {
    if (x.is_zero()) throw invalid_argument_error("sqrt_p needs x != 0");
    const long nu = valuation(x, p);
    if (nu % 2 != 0) throw no_square_root_error(x.to_string() + " has odd valuation");
    const Rational u = unit_part(x, p);
    const Integer pz = prime_integer(p);
    Integer y;
    long unit_precision;
    if (!p.is_two()) {
        if (legendre(residue_mod(u, p, 1), p) != 1) throw no_square_root_error(x.to_string() + " has a non-residue leading digit");
        const long k = std::max<long>(P - nu, 1);
        y = detail::sqrt_mod_prime(residue_mod(u, p, 1), pz);
        // Newton: y <- y - (y^2 - u) / (2y), doubling the correct digits.
        for (long known = 1; known < k;) {
            known = std::min(2 * known, k);
            const Integer mod = ipow(pz, static_cast<unsigned long>(known));
            const Integer uk = residue_mod(u, p, static_cast<unsigned long>(known));
            Integer inv;
            const Integer two_y = 2 * y;
            mpz_invert(inv.get_mpz_t(), two_y.get_mpz_t(), mod.get_mpz_t());
            y = y - (y * y - uk) * inv;
            mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), mod.get_mpz_t());
        }
        const Integer mod = ipow(pz, static_cast<unsigned long>(k));
        Integer lead;
        mpz_fdiv_r(lead.get_mpz_t(), y.get_mpz_t(), pz.get_mpz_t());
        if (lead * 2 > pz) y = mod - y;
        unit_precision = k;
    } else {
        if (residue_mod(u, p, 3) != 1) throw no_square_root_error(x.to_string() + " has unit part not 1 mod 8");
        // y^2 = u mod 2^k pins y mod 2^(k-1); ask for one extra bit.
        const long k = std::max<long>(P - nu + 1, 3);
        y = 1;
        for (long j = 3; j < k; ++j) {
            const Integer mod = ipow(Integer(2), static_cast<unsigned long>(j + 1));
            Integer diff = y * y - residue_mod(u, p, static_cast<unsigned long>(j + 1));
            mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), mod.get_mpz_t());
            if (diff != 0) y += ipow(Integer(2), static_cast<unsigned long>(j - 1));
        }
        const Integer mod = ipow(Integer(2), static_cast<unsigned long>(k - 1));
        mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), mod.get_mpz_t());
        if (y % 4 == 3) y = mod - y;
        unit_precision = k - 1;
    }
    return PadicTruncation::from_rational(Rational(y) * prime_power(p, nu / 2), p, nu / 2 + unit_precision);
}

}  // namespace padicpath
