#pragma once

// Randomized checks of the kernel identities. Each suite draws its inputs
// from a seeded RationalSampler and records the exact inputs of every
// failing trial.

#include <sstream>
#include <string>
#include <vector>

#include "padicpath/gauss.hpp"
#include "padicpath/propagators.hpp"
#include "padicpath/random.hpp"

namespace padicpath {

struct VerifyReport {
    std::string check;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::vector<std::string> witnesses;
    double max_float_error = 0.0;

    bool passed() const { return failures == 0; }

    void record(bool ok, const std::string& witness) {
        ++trials;
        if (!ok) {
            ++failures;
            witnesses.push_back(witness);
        }
    }
    void merge(const VerifyReport& o) {
        trials += o.trials;
        failures += o.failures;
        witnesses.insert(witnesses.end(), o.witnesses.begin(), o.witnesses.end());
        max_float_error = std::max(max_float_error, o.max_float_error);
    }
};

namespace detail {

template <class... Ts>
std::string describe(const Ts&... parts) {
    std::ostringstream os;
    ((os << parts), ...);
    return os.str();
}

inline std::string system_name(const System& s) {
    if (const auto* c = std::get_if<ConstantField>(&s)) return "const-field(a=" + c->a.to_string() + ")";
    return "desitter(lambda=" + std::get<DeSitter>(s).lambda.to_string() + ")";
}

}  // namespace detail

/// lambda(a^2 b) = lambda(b) and lambda(a) lambda(b) = lambda(a+b) lambda(1/a+1/b).
inline VerifyReport verify_lambda(const Place& v, std::uint64_t seed, std::size_t trials) {
    RationalSampler rng(seed);
    VerifyReport r;
    r.check = "lambda";
    for (std::size_t i = 0; i < trials; ++i) {
        const Rational a = rng.nonzero(v), b = rng.nonzero(v);
        const bool square = lambda(v, a * a * b) == lambda(v, b);
        bool product = true;
        if (!(a + b).is_zero())
            product = lambda(v, a) + lambda(v, b) == lambda(v, a + b) + lambda(v, a.inverse() + b.inverse());
        r.record(square && product, detail::describe("place=", v.to_string(), " a=", a, " b=", b,
                                                     square ? "" : " [lambda(a^2 b) != lambda(b)]",
                                                     product ? "" : " [product identity fails]"));
    }
    return r;
}

/// Finite-N propagator of the constant field against the closed form,
/// N cycling through 2..16.
inline VerifyReport verify_composition(const Place& v, std::uint64_t seed, std::size_t trials) {
    RationalSampler rng(seed);
    VerifyReport r;
    r.check = "composition";
    for (std::size_t i = 0; i < trials; ++i) {
        const std::size_t n = 2 + i % 15;
        const PartitionSpec partition(v, rng.ordered_points(v, n + 1));
        const Rational a = rng.any(v), q0 = rng.any(v), q1 = rng.any(v);
        const Amplitude lhs = finite_n_propagator(ConstantField{a}, partition, q0, q1);
        const Amplitude rhs = k_constant_field(v, a, partition.total(), q0, q1);
        std::ostringstream times;
        for (const Rational& t : partition.times()) times << t << ' ';
        r.record(lhs == rhs, detail::describe("place=", v.to_string(), " N=", n, " a=", a, " q0=", q0, " q1=", q1,
                                              " times=[", times.str(), "] finite-N=", lhs, " closed=", rhs));
    }
    return r;
}

inline VerifyReport verify_semigroup(const Place& v, std::uint64_t seed, std::size_t trials) {
    RationalSampler rng(seed);
    VerifyReport r;
    r.check = "semigroup";
    for (std::size_t i = 0; i < trials; ++i) {
        const System s = i % 2 == 0 ? System(ConstantField{rng.any(v)}) : System(DeSitter{rng.any(v)});
        const std::vector<Rational> t = rng.ordered_points(v, 3);
        const Rational q0 = rng.any(v), q1 = rng.any(v);
        const AmplitudeResidual res = semigroup_residual(v, s, t[0], t[1], t[2], q0, q1);
        r.record(res.is_zero(), detail::describe("place=", v.to_string(), " system=", detail::system_name(s),
                                                 " t=", t[0], ",", t[1], ",", t[2], " q0=", q0, " q1=", q1,
                                                 " composed=", res.lhs, " direct=", res.rhs));
    }
    return r;
}

/// Free-particle overlap over balls: zero from the analytic threshold on when
/// x1 != x0 (and nonzero just below it), p^N / |tau|_p when x1 == x0.
inline VerifyReport verify_overlap(Prime p, std::uint64_t seed, std::size_t trials, std::uint64_t cap = kDefaultOracleCap) {
    const Place v(p);
    RationalSampler rng(seed);
    VerifyReport r;
    r.check = "overlap";
    const System free = ConstantField{Rational(0)};
    for (std::size_t i = 0; i < trials; ++i) {
        const std::vector<Rational> t = rng.ordered_points(v, 2);
        const Rational x0 = rng.any(v);
        const Rational x1 = i % 4 == 0 ? x0 : rng.any(v);
        const std::optional<long> n0 = overlap_vanishing_threshold(p, free, t[0], t[1], x0, x1);
        bool ok = true;
        std::string detail_text;
        if (n0) {
            for (long N = *n0; N <= *n0 + 2; ++N)
                if (!overlap_ball_integral(p, free, t[0], t[1], x0, x1, N, cap).is_zero()) {
                    ok = false;
                    detail_text = detail::describe(" nonzero at N=", N);
                }
            if (overlap_ball_integral(p, free, t[0], t[1], x0, x1, *n0 - 1, cap).is_zero()) {
                ok = false;
                detail_text += " already zero below the threshold";
            }
        } else {
            const Rational inv = norm(t[1] - t[0], v).inverse();
            for (long N = -2; N <= 2; ++N) {
                const Rational m = prime_power(p, N) * inv;
                const Amplitude got = overlap_ball_integral(p, free, t[0], t[1], x0, x1, N, cap);
                if (!(got == Amplitude(m * m, Phase()))) {
                    ok = false;
                    detail_text = detail::describe(" N=", N, " got ", got);
                }
            }
        }
        r.record(ok, detail::describe("place=", v.to_string(), " t=", t[0], " t1=", t[1], " x0=", x0, " x1=", x1,
                                      detail_text));
    }
    return r;
}

/// Ball integral at and beyond the stabilization radius against gauss_full,
/// and haar_oracle against the rendered value (p-adic); fresnel_oracle at
/// the real place.
inline VerifyReport verify_gauss(const Place& v, std::uint64_t seed, std::size_t trials,
                                 std::uint64_t cap = kDefaultOracleCap, double tolerance = -1.0) {
    RationalSampler rng(seed);
    VerifyReport r;
    r.check = "gauss";
    if (tolerance < 0) tolerance = v.is_real() ? 1e-6 : 1e-10;
    for (std::size_t i = 0; i < trials; ++i) {
        const Rational a = rng.with_valuation(v, -2, 2);
        const Rational b = rng.below(8) == 0 ? Rational(0) : rng.with_valuation(v, -2, 2);
        const Amplitude closed = gauss_full(v, a, b);
        const std::complex<double> rendered = amp_render(closed);
        bool ok = true;
        std::string note;
        double err = 0.0;
        if (v.is_real()) {
            err = std::abs(fresnel_oracle(a, b) - rendered);
        } else {
            const Prime p = v.p();
            const long n0 = stabilization_radius(p, a, b);
            for (long N = n0; N <= n0 + 1; ++N) {
                const Amplitude ball = quad_char_integral_ball(p, a, b, N, cap);
                if (!(ball == closed)) {
                    ok = false;
                    note += detail::describe(" ball(N=", N, ")=", ball);
                }
            }
            const BallSpec spec{p, n0, coset_resolution(p, a, b, n0)};
            const auto f = [&](const Rational& x) { return unit_complex(chi(v, a * x * x + b * x)); };
            err = std::abs(haar_oracle(f, spec, cap) - rendered);
        }
        r.max_float_error = std::max(r.max_float_error, err);
        if (!(err <= tolerance)) {
            ok = false;
            note += detail::describe(" oracle error ", err);
        }
        r.record(ok, detail::describe("place=", v.to_string(), " a=", a, " b=", b, " closed=", closed, note));
    }
    return r;
}

}  // namespace padicpath
