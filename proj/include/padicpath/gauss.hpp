#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "padicpath/characters.hpp"
#include "padicpath/cyclotomic.hpp"

namespace padicpath {

/// Largest number of cosets an enumeration may visit unless overridden.
inline constexpr std::uint64_t kDefaultOracleCap = 1'000'000;

/// The ball |x|_p <= p^N cut into the p^(N+M) cosets of p^M Z_p.
struct BallSpec {
    Prime prime;
    long radius_exponent;      // N
    long resolution_exponent;  // M, at least -N

    Integer coset_count() const {
        return ipow(prime_integer(prime), static_cast<unsigned long>(radius_exponent + resolution_exponent));
    }
    /// Haar measure of one coset, p^(-M).
    Rational coset_measure() const { return prime_power(prime, -resolution_exponent); }
};

/// Closed-form Gauss integral over Q_v of chi_v(a x^2 + b x):
/// lambda_v(a) |2a|_v^(-1/2) chi_v(-b^2 / 4a).
inline Amplitude gauss_full(const Place& v, const Rational& a, const Rational& b) {
    if (a.is_zero())
        throw degenerate_error("gauss_full needs a != 0; use quad_char_integral_ball for linear phases");
    const Rational modulus_sq = norm(Rational(2) * a, v).inverse();
    return Amplitude(modulus_sq, lambda(v, a) + chi(v, -(b * b) / (Rational(4) * a)));
}

namespace detail {

// -log_p |x|_p for nonzero x, i.e. the valuation; used to keep exponent
// arithmetic readable below.
inline long log_norm(const Rational& x, Prime p) { return -valuation(x, p); }

inline long ceil_half(long n) { return n >= 0 ? (n + 1) / 2 : -((-n) / 2); }

inline void check_cap(Prime p, long exponent, std::uint64_t cap) {
    if (exponent < 0) return;
    if (ipow(prime_integer(p), static_cast<unsigned long>(exponent)) > Integer(static_cast<unsigned long>(cap)))
        throw resource_error("coset enumeration needs " + std::to_string(p.value()) + "^" +
                             std::to_string(exponent) + " points, above the cap of " + std::to_string(cap));
}

}  // namespace detail

/// Smallest M >= -N such that alpha x^2 + beta x is constant modulo Z_p on
/// every coset x + p^M Z_p inside |x|_p <= p^N.
inline long coset_resolution(Prime p, const Rational& alpha, const Rational& beta, long N) {
    long M = -N;
    if (!alpha.is_zero()) {
        M = std::max(M, detail::log_norm(Rational(2) * alpha, p) + N);
        M = std::max(M, detail::ceil_half(detail::log_norm(alpha, p)));
    }
    if (!beta.is_zero()) M = std::max(M, detail::log_norm(beta, p));
    return M;
}

/// A radius N0 such that every sphere |x|_p = p^j with j > N0 integrates
/// chi_p(alpha x^2 + beta x) to zero, so the ball integral over
/// |x|_p <= p^N equals the full Gauss integral for all N >= N0.
inline long stabilization_radius(Prime p, const Rational& alpha, const Rational& beta) {
    if (alpha.is_zero()) throw degenerate_error("stabilization_radius needs alpha != 0");
    const long l2a = detail::log_norm(Rational(2) * alpha, p);
    const long c = detail::ceil_half(detail::log_norm(alpha, p));
    auto sphere_cancels = [&](long j) {
        if (!beta.is_zero() && !(l2a + j > detail::log_norm(beta, p))) return false;
        return l2a + std::min(2 * j - 1, j - c) > 0;
    };
    // Both conditions are monotone in j; walk up from a safe lower bound.
    long j = -std::abs(l2a) - std::abs(c) - (beta.is_zero() ? 0 : std::abs(detail::log_norm(beta, p))) - 2;
    while (!sphere_cancels(j)) ++j;
    return j - 1;
}

/**
 * Exact value of the integral of chi_p(alpha x^2 + beta x) over |x|_p <= p^N.
 *
 * The integrand is constant on the cosets of p^M Z_p for M from
 * coset_resolution, so the integral is p^-M times a sum of p^K-th roots of
 * unity over the representatives k p^-N, k < p^(N+M). The sum is kept in
 * Z[zeta_{p^K}] and identified exactly as c * zeta^k * b where b is 1, the
 * quadratic Gauss sum g_p (odd p), or zeta_8 + zeta_8^-1 (p = 2).
 */
inline Amplitude quad_char_integral_ball(Prime p, const Rational& alpha, const Rational& beta, long N,
                                         std::uint64_t cap = kDefaultOracleCap) {
    const long M = coset_resolution(p, alpha, beta, N);
    detail::check_cap(p, N + M, cap);
    const std::uint64_t points = ipow(prime_integer(p), static_cast<unsigned long>(N + M)).get_ui();

    long K = std::max<long>(0, p.is_two() ? 3 : 1);
    if (!alpha.is_zero()) K = std::max(K, 2 * N - valuation(alpha, p));
    if (!beta.is_zero()) K = std::max(K, N - valuation(beta, p));
    if (static_cast<double>(K) * std::log2(static_cast<double>(p.value())) > 62.0)
        throw resource_error("phase denominator p^" + std::to_string(K) + " exceeds 62 bits");

    detail::CyclotomicSum sum(p, static_cast<unsigned>(K));
    const std::uint64_t D = sum.modulus();
    // index(k) = D * (alpha (k p^-N)^2 + beta k p^-N) mod D.
    const std::uint64_t qa = alpha.is_zero() ? 0 : residue_mod(alpha * prime_power(p, K - 2 * N), p, static_cast<unsigned long>(K)).get_ui();
    const std::uint64_t qb = beta.is_zero() ? 0 : residue_mod(beta * prime_power(p, K - N), p, static_cast<unsigned long>(K)).get_ui();

    std::map<std::uint64_t, std::int64_t> counts;
    for (std::uint64_t k = 0; k < points; ++k) {
        const unsigned __int128 kk = static_cast<unsigned __int128>(k) * k % D;
        const std::uint64_t idx = static_cast<std::uint64_t>((qa * kk + static_cast<unsigned __int128>(qb) * k) % D);
        ++counts[idx];
    }
    for (auto [j, c] : counts) sum.add(j, c);

    const Rational scale_sq = prime_power(p, -2 * M);
    if (sum.is_zero()) return Amplitude::zero();

    auto monomial_amplitude = [&](std::uint64_t k, std::int64_t c, const Rational& basis_norm_sq,
                                  const Phase& basis_phase) {
        // value = (c / e) zeta^k b with |b|^2 = e, so |value|^2 = c^2 / e.
        Phase phase = Phase(Rational(Integer(static_cast<unsigned long>(k)), Integer(static_cast<unsigned long>(D)))) + basis_phase;
        if (c < 0) phase += Phase(Rational(Integer(1), Integer(2)));
        const Rational cc(Integer(static_cast<long>(c)));
        return Amplitude(cc * cc / basis_norm_sq * scale_sq, phase);
    };

    if (auto m = sum.as_monomial()) return monomial_amplitude(m->first, m->second, Rational(1), Phase());

    detail::CyclotomicSum basis(p, static_cast<unsigned>(K));
    Phase basis_phase;
    if (p.is_two()) {
        basis.add(D / 8, 1);
        basis.add(D - D / 8, 1);
    } else {
        for (std::uint64_t x = 0; x < p.value(); ++x) basis.add(x * x % p.value() * (D / p.value()), 1);
        // g_p = sqrt(p) for p = 1 mod 4 and i sqrt(p) for p = 3 mod 4.
        if (p.value() % 4 == 3) basis_phase = Phase(Rational(Integer(1), Integer(4)));
    }
    const Rational e(p.is_two() ? 2 : static_cast<long>(p.value()));
    if (auto m = (sum * basis.conj()).as_monomial())
        return monomial_amplitude(m->first, m->second, e, basis_phase);

    throw std::logic_error("quadratic character sum did not reduce to a root of unity times a square root");
}

namespace detail {

inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
    if (v.size() <= 8) {
        std::complex<double> s{0.0, 0.0};
        for (const auto& z : v) s += z;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace detail

/// Riemann sum p^-M * sum f(r) over one representative r = k p^-N of each
/// coset of p^M Z_p in the ball. Exact for coset-constant f up to rounding.
inline std::complex<double> haar_oracle(const std::function<std::complex<double>(const Rational&)>& f,
                                        const BallSpec& ball, std::uint64_t cap = kDefaultOracleCap) {
    const long N = ball.radius_exponent, M = ball.resolution_exponent;
    if (N + M < 0) throw invalid_argument_error("resolution exponent must be at least -N");
    detail::check_cap(ball.prime, N + M, cap);
    const std::uint64_t points = ball.coset_count().get_ui();
    const Rational step = prime_power(ball.prime, -N);
    std::vector<std::complex<double>> values;
    values.reserve(points);
    for (std::uint64_t k = 0; k < points; ++k) values.push_back(f(Rational(static_cast<long>(k)) * step));
    return detail::pairwise_sum(values) * ball.coset_measure().to_double();
}

/// Quadrature of the Gaussian-damped real Fresnel integral
/// integral exp(-2 pi i (a x^2 + b x)) exp(-damping (x - c)^2) dx over R,
/// with the damping centred at the stationary point c = -b / 2a.
inline std::complex<double> damped_gauss_integral(double a, double b, double damping) {
    if (a == 0.0) throw degenerate_error("damped_gauss_integral needs a != 0");
    if (!(damping > 0.0)) throw invalid_argument_error("damping must be positive");
    static constexpr double nodes[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                        0.8650633666889845, 0.9739065285171717};
    static constexpr double weights[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                          0.1494513491505806, 0.0666713443086881};
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double L = std::sqrt(32.0 / damping);  // exp(-d L^2) ~ 1e-14
    // With x = c + y the phase is a y^2 - b^2 / 4a and the integrand is even in y.
    const double shift = -two_pi * (-b * b / (4.0 * a));

    auto integrate = [&](double cycles_per_panel) {
        auto g = [&](double y) {
            const double ph = -two_pi * a * y * y;
            return std::exp(-damping * y * y) * std::complex<double>(std::cos(ph), std::sin(ph));
        };
        std::complex<double> total{0.0, 0.0};
        for (double y = 0.0; y < L;) {
            // a ((y + h)^2 - y^2) phase cycles per panel, and at most one
            // unit so the envelope stays resolved.
            const double h = std::min({std::sqrt(y * y + cycles_per_panel / std::abs(a)) - y, 1.0, L - y});
            const double mid = y + 0.5 * h, half = 0.5 * h;
            std::complex<double> s{0.0, 0.0};
            for (int i = 0; i < 5; ++i) s += weights[i] * (g(mid - half * nodes[i]) + g(mid + half * nodes[i]));
            total += half * s;
            y += h;
        }
        return 2.0 * total * std::complex<double>(std::cos(shift), std::sin(shift));
    };
    const std::complex<double> coarse = integrate(0.5), fine = integrate(0.25);
    if (!std::isfinite(fine.real()) || !std::isfinite(fine.imag()) || std::abs(fine - coarse) > 1e-9)
        throw numeric_failure_error("damped Fresnel quadrature did not converge");
    return fine;
}

/// Real-place oracle for gauss_full: damped quadrature at damping 1e-1,
/// 1e-2, 1e-3 followed by two rounds of Richardson extrapolation to zero.
inline std::complex<double> fresnel_oracle(const Rational& a, const Rational& b) {
    const double ad = a.to_double(), bd = b.to_double();
    const std::complex<double> f1 = damped_gauss_integral(ad, bd, 1e-1);
    const std::complex<double> f2 = damped_gauss_integral(ad, bd, 1e-2);
    const std::complex<double> f3 = damped_gauss_integral(ad, bd, 1e-3);
    const std::complex<double> r12 = (10.0 * f2 - f1) / 9.0;
    const std::complex<double> r23 = (10.0 * f3 - f2) / 9.0;
    return (100.0 * r23 - r12) / 99.0;
}

}  // namespace padicpath
