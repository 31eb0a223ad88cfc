#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padicpath/dynamics.hpp"
#include "padicpath/gauss.hpp"
#include "padicpath/padic_functions.hpp"

namespace padicpath {

// ---------------------------------------------------------------------------
// Closed-form kernels
// ---------------------------------------------------------------------------

/// Particle with constant acceleration a over time T:
/// lambda_v(2T) |T|_v^(-1/2) chi_v(-(q1-q0)^2/2T - (a/2)(q1+q0)T + a^2 T^3/24).
inline Amplitude k_constant_field(const Place& v, const Rational& a, const Rational& T, const Rational& q0,
                                  const Rational& q1) {
    detail::require_nonzero_interval(T);
    const Rational dq = q1 - q0;
    const Rational arg = -(dq * dq) / (Rational(2) * T) - a / Rational(2) * (q1 + q0) * T +
                         a * a / Rational(24) * T * T * T;
    return Amplitude(norm(T, v).inverse(), lambda(v, Rational(2) * T) + chi(v, arg));
}

inline Amplitude k_free(const Place& v, const Rational& T, const Rational& q0, const Rational& q1) {
    detail::require_nonzero_interval(T);
    const Rational dq = q1 - q0;
    return Amplitude(norm(T, v).inverse(), lambda(v, Rational(2) * T) + chi(v, -(dq * dq) / (Rational(2) * T)));
}

/// De Sitter minisuperspace model with cosmological constant lam.
inline Amplitude k_desitter(const Place& v, const Rational& lam, const Rational& T, const Rational& q0,
                            const Rational& q1) {
    detail::require_nonzero_interval(T);
    const Rational dq = q1 - q0;
    const Rational arg = dq * dq / (Rational(8) * T) + (lam * (q1 + q0) - Rational(2)) / Rational(4) * T -
                         lam * lam / Rational(24) * T * T * T;
    return Amplitude(norm(Rational(4) * T, v).inverse(), lambda(v, Rational(-2) * T) + chi(v, arg));
}

/// Kernel of a quadratic classical action:
/// lambda_v(-2 S_xy) |S_xy|_v^(1/2) chi_v(-S(x'', x')), S_xy the mixed partial.
inline Amplitude k_general_quadratic(const Place& v, const QuadraticActionForm& form, const Rational& x_end,
                                     const Rational& x_start) {
    const Rational& m = form.mixed_partial();
    if (m.is_zero()) throw degenerate_error("action form has zero mixed partial derivative");
    return Amplitude(norm(m, v), lambda(v, Rational(-2) * m) + chi(v, -form(x_end, x_start)));
}

// ---------------------------------------------------------------------------
// Systems and symbolic kernels
// ---------------------------------------------------------------------------

struct ConstantField {
    Rational a;
};
struct DeSitter {
    Rational lambda;
};
/// A time-independent system with a quadratic classical action. The free
/// particle is ConstantField{0}.
using System = std::variant<ConstantField, DeSitter>;

inline QuadraticActionForm action_form(const System& s, const Rational& T) {
    if (const auto* cf = std::get_if<ConstantField>(&s)) return action_form_constant_field(cf->a, T);
    return action_form_desitter(std::get<DeSitter>(s).lambda, T);
}

/// The endpoint-independent factor of the kernel over time T.
inline Amplitude kernel_prefactor(const Place& v, const System& s, const Rational& T) {
    detail::require_nonzero_interval(T);
    if (std::holds_alternative<ConstantField>(s)) return Amplitude(norm(T, v).inverse(), lambda(v, Rational(2) * T));
    return Amplitude(norm(Rational(4) * T, v).inverse(), lambda(v, Rational(-2) * T));
}

/// Closed-form kernel of a system, evaluated pointwise.
inline Amplitude kernel(const Place& v, const System& s, const Rational& T, const Rational& q0, const Rational& q1) {
    if (const auto* cf = std::get_if<ConstantField>(&s)) return k_constant_field(v, cf->a, T, q0, q1);
    return k_desitter(v, std::get<DeSitter>(s).lambda, T, q0, q1);
}

/// prefactor * chi_v(-S(x'', x')) as a closure over the endpoints.
struct QuadraticKernel {
    Place place;
    Amplitude prefactor;
    QuadraticActionForm action;

    Amplitude operator()(const Rational& x_end, const Rational& x_start) const {
        return prefactor * Amplitude::unit(chi(place, -action(x_end, x_start)));
    }

    friend bool operator==(const QuadraticKernel& a, const QuadraticKernel& b) {
        return a.place == b.place && a.prefactor == b.prefactor && a.action == b.action;
    }
};

inline QuadraticKernel kernel_form(const Place& v, const System& s, const Rational& T) {
    return QuadraticKernel{v, kernel_prefactor(v, s, T), action_form(s, T)};
}

/**
 * Integral over the intermediate point x of late(x'', x) * early(x, x').
 *
 * The phase -S_late(x'', x) - S_early(x, x') is quadratic in x with leading
 * coefficient -A; the Gauss integral contributes gauss_full(v, -A, 0) to
 * the prefactor and the completed square gives the composed action.
 */
inline QuadraticKernel compose(const QuadraticKernel& late, const QuadraticKernel& early) {
    if (!(late.place == early.place)) throw invalid_argument_error("composing kernels over different places");
    const IntermediateQuadratic q = intermediate_quadratic(late.action, early.action);
    if (q.A.is_zero()) throw degenerate_error("degenerate total time: intermediate integral is not Gaussian");
    const Amplitude gauss = gauss_full(late.place, -q.A, Rational(0));
    return QuadraticKernel{late.place, late.prefactor * early.prefactor * gauss, compose_forms(late.action, early.action)};
}

inline QuadraticKernel compose_constant_field(const Place& v, const Rational& a, const Rational& T1, const Rational& T2) {
    if ((T1 + T2).is_zero()) throw degenerate_error("degenerate total time T1 + T2 = 0");
    return compose(kernel_form(v, ConstantField{a}, T2), kernel_form(v, ConstantField{a}, T1));
}

// ---------------------------------------------------------------------------
// Finite-N path integral
// ---------------------------------------------------------------------------

/// Time points t0 < t1 < ... < tN in the order of the place.
class PartitionSpec {
public:
    PartitionSpec(Place v, std::vector<Rational> times) : place_(v), times_(std::move(times)) {
        if (times_.size() < 2) throw invalid_argument_error("a partition needs at least two time points");
        for (std::size_t i = 1; i < times_.size(); ++i)
            if (!place_less(times_[i - 1], times_[i], place_))
                throw invalid_argument_error("partition points are not strictly increasing at place " + place_.to_string());
    }

    const Place& place() const { return place_; }
    const std::vector<Rational>& times() const { return times_; }
    std::size_t intervals() const { return times_.size() - 1; }
    Rational step(std::size_t i) const { return times_[i + 1] - times_[i]; }
    Rational total() const { return times_.back() - times_.front(); }

private:
    Place place_;
    std::vector<Rational> times_;
};

/// A_N times the (N-1)-fold integral of chi_v(-sum S(q_i, q_{i-1})), with
/// A_N = prod lambda_v(2 eps_i) |eps_i|_v^(-1/2), as a symbolic kernel.
inline QuadraticKernel finite_n_kernel(const System& s, const PartitionSpec& partition) {
    QuadraticKernel k = kernel_form(partition.place(), s, partition.step(0));
    for (std::size_t i = 1; i < partition.intervals(); ++i) k = compose(kernel_form(partition.place(), s, partition.step(i)), k);
    return k;
}

inline Amplitude finite_n_propagator(const System& s, const PartitionSpec& partition, const Rational& q0,
                                     const Rational& q1) {
    return finite_n_kernel(s, partition)(q1, q0);
}

// ---------------------------------------------------------------------------
// Kernel conditions
// ---------------------------------------------------------------------------

/// lhs - rhs for two exact amplitudes; zero iff they are equal.
struct AmplitudeResidual {
    Amplitude lhs, rhs;

    bool is_zero() const { return lhs == rhs; }
    std::complex<double> approx() const { return amp_render(lhs) - amp_render(rhs); }
};

/// Integral over x of K(q1, t1; x, t) K(x, t; q0, t0), evaluated at the
/// given endpoints with gauss_full, minus K(q1, t1; q0, t0).
inline AmplitudeResidual semigroup_residual(const Place& v, const System& s, const Rational& t0, const Rational& t,
                                            const Rational& t1, const Rational& q0, const Rational& q1) {
    if (!place_less(t0, t, v) || !place_less(t, t1, v))
        throw invalid_argument_error("intermediate time must satisfy t0 < t < t1 in the order of the place");
    const QuadraticKernel late = kernel_form(v, s, t1 - t), early = kernel_form(v, s, t - t0);
    // -S_late(q1, x) - S_early(x, q0) = -(A x^2 + B x + C)
    const Rational A = late.action.yy + early.action.xx;
    const Rational B = late.action.xy * q1 + early.action.xy * q0 + late.action.y + early.action.x;
    const Rational C = late.action(q1, Rational(0)) + early.action(Rational(0), q0);
    if (A.is_zero()) throw degenerate_error("degenerate times: intermediate integral is not Gaussian");
    const Amplitude composed =
        late.prefactor * early.prefactor * gauss_full(v, -A, -B) * Amplitude::unit(chi(v, -C));
    return {composed, kernel(v, s, t1 - t0, q0, q1)};
}

/// Integral over |x|_p <= p^N of K*(x1, t1; x, t) K(x0, t1; x, t).
///
/// The quadratic terms in x cancel, leaving |prefactor|^2 chi_p(const)
/// times the ball integral of a linear character.
inline Amplitude overlap_ball_integral(Prime p, const System& s, const Rational& t, const Rational& t1,
                                       const Rational& x0, const Rational& x1, long N,
                                       std::uint64_t cap = kDefaultOracleCap) {
    const Rational tau = t1 - t;
    if (tau.is_zero()) throw degenerate_error("overlap needs t1 != t");
    const Place v(p);
    const QuadraticKernel k = kernel_form(v, s, tau);
    const Rational dx = x1 - x0;
    const Rational beta = k.action.xy * dx;
    const Rational constant = k.action.xx * (x1 * x1 - x0 * x0) + k.action.x * dx;
    return k.prefactor * k.prefactor.conj() * Amplitude::unit(chi(v, constant)) *
           quad_char_integral_ball(p, Rational(0), beta, N, cap);
}

/// Smallest N from which overlap_ball_integral vanishes for x1 != x0;
/// nullopt when x1 == x0 (the pairing then grows like p^N).
inline std::optional<long> overlap_vanishing_threshold(Prime p, const System& s, const Rational& t,
                                                       const Rational& t1, const Rational& x0, const Rational& x1) {
    if (x0 == x1) return std::nullopt;
    const Rational beta = action_form(s, t1 - t).xy * (x1 - x0);
    return valuation(beta, p) + 1;
}

/// Integral over |y|_p <= p^N of K(x0 + y, tau; x0, 0): the kernel paired
/// with a ball indicator around x0. Tends to 1 as |tau|_p -> 0.
inline Amplitude delta_pairing(Prime p, const System& s, const Rational& tau, const Rational& x0, long N,
                               std::uint64_t cap = kDefaultOracleCap) {
    const Place v(p);
    const QuadraticKernel k = kernel_form(v, s, tau);
    const QuadraticActionForm& f = k.action;
    // -S(x0 + y, x0) = -(xx y^2 + (2 xx x0 + xy x0 + x) y + S(x0, x0))
    const Rational quad = -f.xx;
    const Rational lin = -(Rational(2) * f.xx * x0 + f.xy * x0 + f.x);
    return k.prefactor * Amplitude::unit(chi(v, -f(x0, x0))) * quad_char_integral_ball(p, quad, lin, N, cap);
}

// ---------------------------------------------------------------------------
// Oscillator with time-dependent frequency
// ---------------------------------------------------------------------------

/// Endpoint positions and caller-supplied boundary values of the auxiliary
/// functions gamma(t) and s(t).
struct OscillatorBoundaryData {
    Rational x_start, x_end;
    Rational gamma_start, gamma_end;
    Rational gamma_dot_start, gamma_dot_end;
    Rational s_start, s_end;
    Rational s_dot_start, s_dot_end;
    /// When set, gamma_dot * s^2 must agree at both ends.
    bool check_wronskian = false;
};

inline bool wronskian_consistent(const OscillatorBoundaryData& d) {
    return d.gamma_dot_start * d.s_start * d.s_start == d.gamma_dot_end * d.s_end * d.s_end;
}

struct OscillatorKernelValue {
    Place place;
    std::optional<Amplitude> exact;  // p-adic places only
    std::complex<double> value;
    std::string root_branch;
    /// Quadratic action with sin, tan and the root replaced by their
    /// representatives (p-adic) so the general formula can be applied.
    std::optional<QuadraticActionForm> action;
};

namespace detail {

inline void check_oscillator_data(const OscillatorBoundaryData& d) {
    if (d.s_start.is_zero() || d.s_end.is_zero()) throw invalid_argument_error("s' and s'' must be nonzero");
    if (d.gamma_end == d.gamma_start) throw degenerate_error("gamma'' - gamma' must be nonzero");
    if (d.check_wronskian && !wronskian_consistent(d))
        throw invalid_argument_error("gamma_dot * s^2 differs between the endpoints");
}

}  // namespace detail

/**
 * Kernel of the oscillator with time-dependent frequency:
 *
 *   lambda_v(2 sin dg) |sqrt(g1' g0') / sin dg|_v^(1/2)
 *     chi_v[(s0' x0^2 / s0 - s1' x1^2 / s1) / 2]
 *     chi_v[-(g1' x1^2 + g0' x0^2) / (2 tan dg) + x1 x0 sqrt(g1' g0') / sin dg]
 *
 * with dg = gamma'' - gamma'. At a prime, sin, tan and the root are computed
 * to p^precision and the result is exact once the fractional parts are
 * pinned; the root is the canonical branch of sqrt_p. At the real place the
 * value is evaluated in floating point with the positive root.
 */
inline OscillatorKernelValue k_oscillator_td(const Place& v, const OscillatorBoundaryData& d, long precision) {
    detail::check_oscillator_data(d);
    const Rational dg = d.gamma_end - d.gamma_start;
    const Rational root_arg = d.gamma_dot_end * d.gamma_dot_start;
    const Rational exact_arg = (d.s_dot_start * d.x_start * d.x_start / d.s_start -
                                d.s_dot_end * d.x_end * d.x_end / d.s_end) / Rational(2);
    const Rational cot_coeff = -(d.gamma_dot_end * d.x_end * d.x_end + d.gamma_dot_start * d.x_start * d.x_start) / Rational(2);
    const Rational mixed_coeff = d.x_end * d.x_start;

    if (v.is_real()) {
        if (root_arg.sign() <= 0) throw domain_error("gamma_dot'' gamma_dot' must be positive at the real place");
        const double delta = dg.to_double();
        const double sn = std::sin(delta), tn = std::tan(delta);
        if (sn == 0.0) throw degenerate_error("sin(gamma'' - gamma') vanishes");
        const double root = std::sqrt(root_arg.to_double());
        const double modulus = std::sqrt(std::abs(root / sn));
        const double arg = exact_arg.to_double() + cot_coeff.to_double() / tn + mixed_coeff.to_double() * root / sn;
        constexpr double two_pi = 6.283185307179586476925286766559;
        const std::complex<double> lam = unit_complex(Phase(Rational(sn > 0 ? 7 : 1) / Rational(8)));
        const std::complex<double> value = modulus * lam * std::polar(1.0, -two_pi * arg);
        return {v, std::nullopt, value, "positive real root", std::nullopt};
    }

    const Prime p = v.p();
    const PadicTruncation sn = sin_p(dg, p, precision);
    if (sn.is_indistinguishable_from_zero()) throw precision_error("sin(gamma'' - gamma') is zero to the requested precision");
    const PadicTruncation tn = tan_p(dg, p, precision);
    const PadicTruncation root = sqrt_p(root_arg, p, precision);

    auto exact = [&](const Rational& c) { return PadicTruncation::exact(c, p); };
    const PadicTruncation one = exact(Rational(1));
    const PadicTruncation inv_tan = one / tn;
    const PadicTruncation root_over_sin = root / sn;
    const PadicTruncation truncated_arg = exact(cot_coeff) * inv_tan + exact(mixed_coeff) * root_over_sin;

    const Phase phase = lambda(exact(Rational(2)) * sn) + chi(v, exact_arg) + chi(truncated_arg);
    const Amplitude amp(norm(root_over_sin), phase);

    // S = -(phase argument): xx x1^2 + yy x0^2 + xy x1 x0.
    const Rational inv_tan_rep = inv_tan.to_rational(), ros_rep = root_over_sin.to_rational();
    QuadraticActionForm form{d.s_dot_end / (Rational(2) * d.s_end) + d.gamma_dot_end * inv_tan_rep / Rational(2),
                             -d.s_dot_start / (Rational(2) * d.s_start) + d.gamma_dot_start * inv_tan_rep / Rational(2),
                             -ros_rep, Rational(0), Rational(0), Rational(0)};
    return {v, amp, amp_render(amp), "canonical sqrt_p root (first in the linear order of Q_p)", form};
}

}  // namespace padicpath
