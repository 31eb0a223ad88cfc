#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padicpath/padicpath.hpp"

using namespace padicpath;

namespace {

Rational R(const char* s) { return Rational::parse(s); }
Amplitude A(const char* m, const char* ph) { return Amplitude(R(m), Phase(R(ph))); }

const std::vector<Place> kPlaces = {Place::real(), Place::prime(2), Place::prime(3), Place::prime(5), Place::prime(7)};

/// Oscillator boundary data with gamma'' - gamma' inside the trig domain at p.
OscillatorBoundaryData oscillator_sample(unsigned long p) {
    OscillatorBoundaryData d;
    d.x_start = R("1/2");
    d.x_end = R("3");
    d.gamma_start = R("1");
    d.gamma_end = Rational(1) + (p == 2 ? Rational(4) : Rational(static_cast<long>(p)));
    d.gamma_dot_start = R("1/4");
    d.gamma_dot_end = R("4");
    d.s_start = R("2");
    d.s_end = R("3");
    d.s_dot_start = R("1");
    d.s_dot_end = R("-1");
    return d;
}

}  // namespace

TEST(Kernels, Examples) {
    EXPECT_EQ(k_constant_field(Place::prime(3), R("0"), R("1"), R("0"), R("1")), A("1", "0"));
    EXPECT_EQ(k_constant_field(Place::real(), R("0"), R("1"), R("0"), R("1")), A("1", "3/8"));
    EXPECT_EQ(k_free(Place::prime(2), R("1"), R("0"), R("0")), A("1", "1/8"));
    // lambda_5(10) = 1/2 (odd valuation, (2/5) = -1, p = 1 mod 4); {-1/10}_5 = 2/5.
    EXPECT_EQ(k_free(Place::prime(5), R("5"), R("0"), R("1")), A("5", "9/10"));
    EXPECT_EQ(k_desitter(Place::prime(3), R("0"), R("1"), R("0"), R("0")), A("1", "0"));
    for (const Place& v : kPlaces) {
        EXPECT_THROW(k_free(v, R("0"), R("0"), R("1")), degenerate_error);
        EXPECT_THROW(k_desitter(v, R("1"), R("0"), R("0"), R("1")), degenerate_error);
    }
}

TEST(Kernels, FreeIsZeroFieldAndModulusIsInverseNorm) {
    for (const Place& v : kPlaces) {
        RationalSampler rng(1);
        for (int i = 0; i < 200; ++i) {
            const Rational T = rng.nonzero(v), q0 = rng.any(v), q1 = rng.any(v), a = rng.any(v);
            EXPECT_EQ(k_constant_field(v, R("0"), T, q0, q1), k_free(v, T, q0, q1));
            EXPECT_EQ(k_constant_field(v, a, T, q0, q1).modulus_sq(), norm(T, v).inverse());
            const Amplitude k = k_constant_field(v, a, T, q0, q1);
            EXPECT_EQ(k * k.conj(), Amplitude(k.modulus_sq() * k.modulus_sq(), Phase()));
            EXPECT_EQ(k.conj().conj(), k);
        }
    }
}

TEST(Kernels, DeSitterMatchesFloatEvaluation) {
    RationalSampler rng(2);
    for (int i = 0; i < 100; ++i) {
        const Rational lam = rng.any(Place::real()), T = rng.nonzero(Place::real());
        const Rational q0 = rng.any(Place::real()), q1 = rng.any(Place::real());
        const double t = T.to_double(), l = lam.to_double(), x0 = q0.to_double(), x1 = q1.to_double();
        const double arg = (x1 - x0) * (x1 - x0) / (8 * t) + (l * (x1 + x0) - 2) / 4 * t - l * l / 24 * t * t * t;
        const std::complex<double> lam_inf = std::complex<double>(1.0, (t < 0 ? -1.0 : 1.0)) / std::sqrt(2.0);  // lambda(-2T)
        const std::complex<double> expected = lam_inf / std::sqrt(std::abs(4 * t)) * std::polar(1.0, -2 * M_PI * arg);
        EXPECT_LE(std::abs(amp_render(k_desitter(Place::real(), lam, T, q0, q1)) - expected), 1e-9 * std::max(1.0, std::abs(arg)));
    }
}

TEST(GeneralFormula, ReproducesClosedForms) {
    for (const Place& v : kPlaces) {
        RationalSampler rng(3);
        for (int i = 0; i < 100; ++i) {
            const Rational a = rng.any(v), lam = rng.any(v), T = rng.nonzero(v);
            const Rational q0 = rng.any(v), q1 = rng.any(v);
            EXPECT_EQ(k_general_quadratic(v, action_form_constant_field(a, T), q1, q0), k_constant_field(v, a, T, q0, q1));
            EXPECT_EQ(k_general_quadratic(v, action_form_free(T), q1, q0), k_free(v, T, q0, q1));
            EXPECT_EQ(k_general_quadratic(v, action_form_desitter(lam, T), q1, q0), k_desitter(v, lam, T, q0, q1));
        }
    }
    EXPECT_THROW(k_general_quadratic(Place::real(), QuadraticActionForm{R("1"), R("1"), R("0"), R("0"), R("0"), R("0")},
                                     R("1"), R("1")),
                 degenerate_error);
}

TEST(GeneralFormula, RealPrefactorIsInverseRootOfIT) {
    for (const char* t : {"1", "2", "1/3", "7/2", "-1", "-5/4", "100"}) {
        const Rational T = R(t);
        const Amplitude pre = k_general_quadratic(Place::real(), action_form_free(T), R("0"), R("0"));
        const std::complex<double> expected = std::pow(std::complex<double>(0.0, T.to_double()), -0.5);
        EXPECT_LE(std::abs(amp_render(pre) - expected), 1e-12) << t;
    }
}

TEST(Compose, Examples) {
    const Place v3 = Place::prime(3);
    const QuadraticKernel halves = compose(kernel_form(v3, ConstantField{R("0")}, R("1/2")), kernel_form(v3, ConstantField{R("0")}, R("1/2")));
    EXPECT_EQ(halves, kernel_form(v3, ConstantField{R("0")}, R("1")));
    for (const Place& v : kPlaces)
        EXPECT_EQ(compose_constant_field(v, R("1"), R("1"), R("2")), kernel_form(v, ConstantField{R("1")}, R("3")));
    EXPECT_THROW(compose_constant_field(v3, R("1"), R("1"), R("-1")), degenerate_error);
}

TEST(Compose, LambdaBookkeeping) {
    // lambda(2 T1) lambda(2 T2) lambda(-A) = lambda(2 (T1 + T2)) with A = (T1 + T2) / (2 T1 T2).
    for (const Place& v : kPlaces) {
        RationalSampler rng(4);
        for (int i = 0; i < 200; ++i) {
            const Rational T1 = rng.nonzero(v), T2 = rng.nonzero(v);
            if ((T1 + T2).is_zero()) continue;
            const Rational A = (T1 + T2) / (Rational(2) * T1 * T2);
            EXPECT_EQ(lambda(v, Rational(2) * T1) + lambda(v, Rational(2) * T2) + lambda(v, -A),
                      lambda(v, Rational(2) * (T1 + T2)));
        }
    }
}

TEST(FiniteN, Examples) {
    const Place v5 = Place::prime(5);
    const System s = ConstantField{R("2")};
    EXPECT_EQ(finite_n_propagator(s, PartitionSpec(v5, {R("0"), R("3")}), R("1"), R("2")),
              k_constant_field(v5, R("2"), R("3"), R("1"), R("2")));
    EXPECT_EQ(finite_n_propagator(s, PartitionSpec(Place::real(), {R("0"), R("1/2"), R("1")}), R("1"), R("2")),
              k_constant_field(Place::real(), R("2"), R("1"), R("1"), R("2")));
    RationalSampler rng(5);
    const PartitionSpec eight(v5, rng.ordered_points(v5, 9));
    EXPECT_EQ(finite_n_propagator(s, eight, R("1/5"), R("3")), k_constant_field(v5, R("2"), eight.total(), R("1/5"), R("3")));
    // The free particle over T = 5 from two steps; 0 < 25 < 5 in Q_5.
    EXPECT_EQ(finite_n_propagator(ConstantField{R("0")}, PartitionSpec(v5, {R("0"), R("25"), R("5")}), R("0"), R("1")),
              A("5", "9/10"));
}

TEST(FiniteN, PartitionValidation) {
    EXPECT_THROW(PartitionSpec(Place::real(), {R("0")}), invalid_argument_error);
    EXPECT_THROW(PartitionSpec(Place::real(), {R("0"), R("2"), R("1")}), invalid_argument_error);
    // 1 < 4 < 1/3 in the order of Q_3, not the real one.
    EXPECT_NO_THROW(PartitionSpec(Place::prime(3), {R("1"), R("4"), R("1/3")}));
    EXPECT_THROW(PartitionSpec(Place::prime(3), {R("1/3"), R("1")}), invalid_argument_error);
}

TEST(FiniteN, IndependentOfPartition) {
    for (const Place& v : kPlaces) {
        RationalSampler rng(6);
        for (int i = 0; i < 30; ++i) {
            const std::size_t n = 2 + static_cast<std::size_t>(i % 15);
            const PartitionSpec partition(v, rng.ordered_points(v, n + 1));
            const Rational a = rng.any(v), q0 = rng.any(v), q1 = rng.any(v);
            EXPECT_EQ(finite_n_propagator(ConstantField{a}, partition, q0, q1), k_constant_field(v, a, partition.total(), q0, q1));
            const Rational lam = rng.any(v);
            EXPECT_EQ(finite_n_propagator(DeSitter{lam}, partition, q0, q1), k_desitter(v, lam, partition.total(), q0, q1));
        }
    }
}

TEST(Semigroup, Examples) {
    // In Q_3: 0 < 1 < 2 holds (equal norms, leading digits 1 < 2).
    EXPECT_TRUE(linear_less(R("1"), R("2"), Prime(3)));
    EXPECT_TRUE(semigroup_residual(Place::prime(3), ConstantField{R("0")}, R("0"), R("1"), R("2"), R("0"), R("1")).is_zero());
    EXPECT_TRUE(semigroup_residual(Place::prime(5), ConstantField{R("2")}, R("0"), R("1"), R("3"), R("1/5"), R("2")).is_zero());
    EXPECT_TRUE(semigroup_residual(Place::real(), ConstantField{R("2")}, R("-1"), R("1/2"), R("3"), R("1"), R("4")).is_zero());
    EXPECT_THROW(semigroup_residual(Place::real(), ConstantField{R("0")}, R("0"), R("2"), R("1"), R("0"), R("1")),
                 invalid_argument_error);
}

TEST(Semigroup, Randomized) {
    for (const Place& v : kPlaces) {
        const VerifyReport r = verify_semigroup(v, 7, 100);
        EXPECT_TRUE(r.passed()) << v.to_string() << ": " << (r.witnesses.empty() ? "" : r.witnesses.front());
        RationalSampler rng(9);
        const std::vector<Rational> t = rng.ordered_points(v, 3);
        const AmplitudeResidual res = semigroup_residual(v, DeSitter{R("3")}, t[0], t[1], t[2], R("1"), R("5"));
        EXPECT_TRUE(res.is_zero());
        EXPECT_LT(std::abs(res.approx()), 1e-9);
    }
}

TEST(Overlap, Examples) {
    const Prime p3(3);
    const System free = ConstantField{R("0")};
    // x'' = x': p^N / |tau|_p, here |tau|_3 = 1/3.
    EXPECT_EQ(overlap_ball_integral(p3, free, R("0"), R("3"), R("1"), R("1"), 2), Amplitude(R("27") * R("27"), Phase()));
    const auto n0 = overlap_vanishing_threshold(p3, free, R("0"), R("3"), R("1"), R("2"));
    ASSERT_TRUE(n0.has_value());
    // beta = -(1/3)(1) has valuation -1, so the linear character cancels from N = 0.
    EXPECT_EQ(*n0, 0);
    for (long N = 0; N <= 3; ++N) EXPECT_TRUE(overlap_ball_integral(p3, free, R("0"), R("3"), R("1"), R("2"), N).is_zero());
    const Amplitude below = overlap_ball_integral(p3, free, R("0"), R("3"), R("1"), R("2"), -1);
    EXPECT_FALSE(below.is_zero());
    EXPECT_FALSE(overlap_vanishing_threshold(p3, free, R("0"), R("3"), R("1"), R("1")).has_value());
    EXPECT_THROW(overlap_ball_integral(p3, free, R("1"), R("1"), R("0"), R("1"), 0), degenerate_error);
}

TEST(Overlap, MatchesHaarSumOfKernelProducts) {
    const Prime p(5);
    const Place v(p);
    const Rational tau = R("5"), x0 = R("1"), x1 = R("7/5");
    // The quadratic phases cancel in the product; the linear one has
    // |coefficient| = |x1 - x0| / |tau| = 25, constant on cosets of 5^2 Z_5.
    const auto f = [&](const Rational& x) {
        return std::conj(amp_render(k_free(v, tau, x, x1))) * amp_render(k_free(v, tau, x, x0));
    };
    const long n0 = *overlap_vanishing_threshold(p, ConstantField{R("0")}, R("0"), tau, x0, x1);
    for (long N = -1; N <= n0 + 1; ++N) {
        const std::complex<double> brute = haar_oracle(f, BallSpec{p, N, std::max<long>(-N, 2)});
        EXPECT_LE(std::abs(amp_render(overlap_ball_integral(p, ConstantField{R("0")}, R("0"), tau, x0, x1, N)) - brute), 1e-9)
            << N;
    }
}

TEST(Overlap, Randomized) {
    for (unsigned long p : {3ul, 5ul}) EXPECT_TRUE(verify_overlap(Prime(p), 8, 60).passed());
}

TEST(DeltaPairing, TendsToOneAsTimeShrinks) {
    for (unsigned long pv : {3ul, 5ul}) {
        const Prime p(pv);
        for (const System& s : {System(ConstantField{R("0")}), System(ConstantField{R("2")}), System(DeSitter{R("1")})}) {
            for (long k = 4; k <= 7; ++k) {
                const Rational tau = prime_power(p, k);
                EXPECT_EQ(delta_pairing(p, s, tau, R("1/2"), 0), Amplitude::one()) << "p=" << pv << " k=" << k;
            }
        }
    }
}

TEST(Oscillator, PadicMatchesGeneralFormula) {
    for (unsigned long pv : {2ul, 3ul, 5ul, 7ul}) {
        const Place v = Place::prime(pv);
        const OscillatorBoundaryData d = oscillator_sample(pv);
        const OscillatorKernelValue k = k_oscillator_td(v, d, 20);
        ASSERT_TRUE(k.exact.has_value());
        ASSERT_TRUE(k.action.has_value());
        // gamma_dot'' gamma_dot' = 1, so the root is a square and the two
        // prefactors lambda(2 sin) and lambda(-2 S_xy) coincide.
        EXPECT_EQ(k_general_quadratic(v, *k.action, d.x_end, d.x_start), *k.exact) << pv;
        EXPECT_EQ(k.exact->modulus_sq(), norm(d.gamma_end - d.gamma_start, v).inverse());
    }
}

TEST(Oscillator, PrefactorsDifferByTheRootClass) {
    // gamma_dot'' gamma_dot' = 4 has root 2 (or -2), not a square in Q_3 or Q_5.
    for (unsigned long pv : {3ul, 5ul, 7ul}) {
        const Place v = Place::prime(pv);
        OscillatorBoundaryData d = oscillator_sample(pv);
        d.gamma_dot_start = R("1");
        const OscillatorKernelValue k = k_oscillator_td(v, d, 20);
        const Rational S = sin_p(d.gamma_end - d.gamma_start, Prime(pv), 20).to_rational();
        const Rational root = sqrt_p(R("4"), Prime(pv), 20).to_rational();
        const Amplitude general = k_general_quadratic(v, *k.action, d.x_end, d.x_start);
        EXPECT_EQ(general.modulus_sq(), k.exact->modulus_sq());
        EXPECT_EQ(general.phase() - k.exact->phase(),
                  lambda(v, Rational(2) * root * S) - lambda(v, Rational(2) * S));
    }
}

TEST(Oscillator, ZeroEndpointsLeavePrefactor) {
    for (unsigned long pv : {3ul, 5ul}) {
        OscillatorBoundaryData d = oscillator_sample(pv);
        d.x_start = d.x_end = R("0");
        const OscillatorKernelValue k = k_oscillator_td(Place::prime(pv), d, 20);
        const Rational S = sin_p(d.gamma_end - d.gamma_start, Prime(pv), 20).to_rational();
        EXPECT_EQ(k.exact->phase(), lambda(Place::prime(pv), Rational(2) * S));
    }
}

TEST(Oscillator, RealPlaceMatchesFloatFormula) {
    const OscillatorBoundaryData d = oscillator_sample(3);
    const OscillatorKernelValue k = k_oscillator_td(Place::real(), d, 20);
    const double dg = (d.gamma_end - d.gamma_start).to_double();
    const double root = std::sqrt(d.gamma_dot_end.to_double() * d.gamma_dot_start.to_double());
    const double x0 = d.x_start.to_double(), x1 = d.x_end.to_double();
    const double arg = 0.5 * (d.s_dot_start.to_double() * x0 * x0 / d.s_start.to_double() -
                              d.s_dot_end.to_double() * x1 * x1 / d.s_end.to_double()) -
                       (d.gamma_dot_end.to_double() * x1 * x1 + d.gamma_dot_start.to_double() * x0 * x0) / (2 * std::tan(dg)) +
                       x1 * x0 * root / std::sin(dg);
    const double sgn = std::sin(dg) > 0 ? 1.0 : -1.0;
    const std::complex<double> lam = std::complex<double>(1.0, -sgn) / std::sqrt(2.0);
    const std::complex<double> expected = lam * std::sqrt(std::abs(root / std::sin(dg))) * std::polar(1.0, -2 * M_PI * arg);
    EXPECT_LE(std::abs(k.value - expected), 1e-9);
}

TEST(Oscillator, Validation) {
    OscillatorBoundaryData d = oscillator_sample(3);
    d.s_start = R("0");
    EXPECT_THROW(k_oscillator_td(Place::prime(3), d, 20), invalid_argument_error);
    d = oscillator_sample(3);
    d.gamma_end = d.gamma_start;
    EXPECT_THROW(k_oscillator_td(Place::prime(3), d, 20), degenerate_error);
    d = oscillator_sample(3);
    d.gamma_end = d.gamma_start + R("1");
    EXPECT_THROW(k_oscillator_td(Place::prime(3), d, 20), domain_error);
    d = oscillator_sample(3);
    d.gamma_dot_end = R("2");  // 2 * 1/4 = 1/2 is not a square in Q_3
    EXPECT_THROW(k_oscillator_td(Place::prime(3), d, 20), no_square_root_error);
    d = oscillator_sample(3);
    d.check_wronskian = true;
    EXPECT_THROW(k_oscillator_td(Place::prime(3), d, 20), invalid_argument_error);
    d.gamma_dot_end = R("16/9");
    d.gamma_dot_start = R("1");
    d.s_start = R("4");
    EXPECT_TRUE(wronskian_consistent(d));
    EXPECT_NO_THROW(k_oscillator_td(Place::prime(3), d, 20));
}
