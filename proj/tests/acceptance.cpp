// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "padicpath/padicpath.hpp"

using namespace padicpath;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::uint64_t kCap = 1000000;

const std::vector<Place> kPlaces = {Place::real(), Place::prime(2), Place::prime(3), Place::prime(5), Place::prime(7)};

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
    void take(const VerifyReport& r) {
        if (!r.passed()) fail(r.witnesses.empty() ? r.check + " failed" : r.witnesses.front());
    }
};

int failures = 0;

void run(int id, const char* title, double time_limit_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0 && secs > time_limit_s) out.fail("runtime " + std::to_string(secs) + " s over limit");
    if (!out.ok) ++failures;
    std::printf("%s  criterion %d  %-52s %7.2f s%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs,
                out.detail.empty() ? "" : "  ", out.detail.c_str());
    std::fflush(stdout);
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", x);
    return buf;
}

Rational smallest_nonresidue(unsigned long p) {
    if (p == 2) return Rational(3);
    for (long u = 2;; ++u)
        if (legendre(Integer(u), Prime(p)) == -1) return Rational(u);
}

}  // namespace

int main() {
    // 1. Ball integrals stabilize to the closed Gauss integral; Haar sums agree.
    run(1, "Gauss integral: ball stabilization + Haar oracle", 60.0, [](Outcome& out) {
        double worst = 0.0;
        int radii = 0, skipped = 0;
        for (unsigned long pv : {2ul, 3ul, 5ul, 7ul}) {
            const Prime p(pv);
            const Place v(p);
            for (const Rational& u : {Rational(1), smallest_nonresidue(pv)})
                for (long ea = -2; ea <= 2; ++ea)
                    for (long eb = -3; eb <= 2; ++eb) {
                        const Rational a = u * prime_power(p, ea);
                        const Rational b = eb < -2 ? Rational(0) : prime_power(p, eb);
                        const Amplitude closed = gauss_full(v, a, b);
                        const long n0 = stabilization_radius(p, a, b);
                        for (long N = n0; N <= n0 + 1; ++N) {
                            // n0 + 1 is a second witness only when it fits the cap.
                            if (N > n0 && (N + coset_resolution(p, a, b, N)) * std::log(double(pv)) > std::log(double(kCap))) {
                                ++skipped;
                                break;
                            }
                            ++radii;
                            if (!(quad_char_integral_ball(p, a, b, N, kCap) == closed))
                                out.fail("p=" + std::to_string(pv) + " a=" + a.to_string() + " b=" + b.to_string());
                        }
                        const BallSpec spec{p, n0, coset_resolution(p, a, b, n0)};
                        const auto f = [&](const Rational& x) { return unit_complex(chi(v, a * x * x + b * x)); };
                        const double err = std::abs(haar_oracle(f, spec, kCap) - amp_render(closed));
                        worst = std::max(worst, err);
                        if (err > 1e-10) out.fail("haar error " + std::to_string(err));
                    }
        }
        if (out.ok)
            out.detail = std::to_string(radii) + " ball radii exact (" + std::to_string(skipped) +
                         " n0+1 radii over cap), max haar error " + sci(worst);
    });

    // 2. lambda identities at six places.
    run(2, "lambda identities (1000 per place)", 0, [](Outcome& out) {
        for (const char* v : {"inf", "2", "3", "5", "7", "13"}) out.take(verify_lambda(Place::parse(v), kSeed, 1000));
    });

    // 3. Finite-N propagator equals the closed form. 15 values of N x 20 = 300 trials.
    run(3, "finite-N propagator == closed form, N=2..16", 10.0, [](Outcome& out) {
        for (const Place& v : kPlaces) out.take(verify_composition(v, kSeed, 300));
    });

    // 4. Semigroup residual vanishes exactly.
    run(4, "semigroup residual is zero (100 per place)", 0, [](Outcome& out) {
        for (const Place& v : kPlaces) out.take(verify_semigroup(v, kSeed, 100));
    });

    // 5. Overlap of the free particle: vanishing threshold and the diagonal value.
    run(5, "free-particle overlap: vanishing and diagonal", 0, [](Outcome& out) {
        for (unsigned long p : {3ul, 5ul}) out.take(verify_overlap(Prime(p), kSeed, 60, kCap));
    });

    // 6. General quadratic formula reproduces the closed forms.
    run(6, "general formula reproduces closed kernels", 0, [](Outcome& out) {
        for (const Place& v : kPlaces) {
            RationalSampler rng(kSeed);
            for (int i = 0; i < 100; ++i) {
                const Rational a = rng.any(v), lam = rng.any(v), T = rng.nonzero(v);
                const Rational q0 = rng.any(v), q1 = rng.any(v);
                const bool ok = k_general_quadratic(v, action_form_constant_field(a, T), q1, q0) == k_constant_field(v, a, T, q0, q1) &&
                                k_general_quadratic(v, action_form_free(T), q1, q0) == k_free(v, T, q0, q1) &&
                                k_general_quadratic(v, action_form_desitter(lam, T), q1, q0) == k_desitter(v, lam, T, q0, q1);
                if (!ok) out.fail("place=" + v.to_string() + " a=" + a.to_string() + " T=" + T.to_string());
            }
        }
    });

    // 7. Real place spot values.
    run(7, "real place: Fresnel and (iT)^(-1/2)", 0, [](Outcome& out) {
        const Rational one(1), zero(0);
        const std::complex<double> g = amp_render(gauss_full(Place::real(), one, zero));
        if (std::abs(g - std::complex<double>(0.5, -0.5)) > 1e-12) out.fail("gauss_full(real, 1, 0) render");
        if (std::abs(fresnel_oracle(one, zero) - g) > 1e-6) out.fail("fresnel oracle");
        for (const char* t : {"1/100", "1/3", "1", "2", "7/2", "10", "1000", "-1/7", "-1", "-5"}) {
            const Rational T = Rational::parse(t);
            const Amplitude pre = k_free(Place::real(), T, zero, zero);
            const std::complex<double> expected = std::pow(std::complex<double>(0.0, T.to_double()), -0.5);
            if (std::abs(amp_render(pre) - expected) > 1e-12) out.fail(std::string("prefactor at T=") + t);
        }
    });

    // 8. Trig and sqrt to p^20; oscillator kernel on a documented sample.
    run(8, "p-adic trig/sqrt + oscillator vs general formula", 0, [](Outcome& out) {
        constexpr long P = 20;
        for (unsigned long pv : {3ul, 5ul, 7ul}) {
            const Prime p(pv);
            const Place v(p);
            RationalSampler rng(kSeed + pv);
            for (int i = 0; i < 200; ++i) {
                const Rational x = rng.with_valuation(v, 1, 3);
                const PadicTruncation s = sin_p(x, p, P), c = cos_p(x, p, P);
                if (!(s * s + c * c).agrees_with(Rational(1), P)) out.fail("sin^2+cos^2 at x=" + x.to_string());
                const Rational u = rng.with_valuation(v, -2, 2);
                const PadicTruncation r = sqrt_p(u * u, p, P);
                if (!(r * r).agrees_with(u * u, P)) out.fail("sqrt round trip at " + u.to_string());
            }
        }
        // Sample: x' = 1/2, x'' = 3, gamma' = 1, gamma'' = 1 + p (1 + 4 at p = 2),
        // gamma_dot' = 1/4, gamma_dot'' = 4, s' = 2, s'' = 3, s_dot' = 1, s_dot'' = -1.
        for (unsigned long pv : {2ul, 3ul, 5ul, 7ul}) {
            const Place v = Place::prime(pv);
            OscillatorBoundaryData d;
            d.x_start = Rational::parse("1/2");
            d.x_end = Rational(3);
            d.gamma_start = Rational(1);
            d.gamma_end = Rational(1) + Rational(pv == 2 ? 4L : static_cast<long>(pv));
            d.gamma_dot_start = Rational::parse("1/4");
            d.gamma_dot_end = Rational(4);
            d.s_start = Rational(2);
            d.s_end = Rational(3);
            d.s_dot_start = Rational(1);
            d.s_dot_end = Rational(-1);
            const OscillatorKernelValue k = k_oscillator_td(v, d, P);
            const Amplitude general = k_general_quadratic(v, *k.action, d.x_end, d.x_start);
            if (!(general == *k.exact)) out.fail("oscillator at p=" + std::to_string(pv));
        }
        const OscillatorKernelValue real = k_oscillator_td(Place::real(), OscillatorBoundaryData{
            Rational::parse("1/2"), Rational(3), Rational(1), Rational(4), Rational::parse("1/4"), Rational(4),
            Rational(2), Rational(3), Rational(1), Rational(-1), false}, P);
        if (!std::isfinite(std::abs(real.value))) out.fail("real-place oscillator");
    });

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
