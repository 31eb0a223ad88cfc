#pragma once

// Classical mechanics over Q for the constant-field Lagrangian
// L = qdot^2 / 2 + a q. Everything here is plain rational algebra and is
// shared verbatim by the real and all p-adic places.

#include "padicpath/error.hpp"
#include "padicpath/polynomial.hpp"

namespace padicpath {

struct PolynomialPath {
    Polynomial q;
    Rational t_start, q_start;
    Rational t_end, q_end;

    bool meets_endpoints() const { return q(t_start) == q_start && q(t_end) == q_end; }
};

/**
 * Classical action quadratic in the endpoints:
 *
 *     S(x'', x') = xx x''^2 + yy x'^2 + xy x'' x' + x x'' + y x' + c
 *
 * `xy` is the mixed partial d^2 S / dx'' dx'.
 */
struct QuadraticActionForm {
    Rational xx, yy, xy, x, y, c;

    Rational operator()(const Rational& x_end, const Rational& x_start) const {
        return xx * x_end * x_end + yy * x_start * x_start + xy * x_end * x_start + x * x_end + y * x_start + c;
    }

    const Rational& mixed_partial() const { return xy; }

    friend bool operator==(const QuadraticActionForm&, const QuadraticActionForm&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const QuadraticActionForm& f) {
    return os << "{xx: " << f.xx << ", yy: " << f.yy << ", xy: " << f.xy << ", x: " << f.x << ", y: " << f.y
              << ", c: " << f.c << "}";
}

namespace detail {
inline void require_nonzero_interval(const Rational& T) {
    if (T.is_zero()) throw degenerate_error("time interval T must be nonzero");
}
}  // namespace detail

/// q(t) = (a/2) t^2 + ((q1 - q0 - (a/2) T^2) / T) t + q0 on [0, T].
inline PolynomialPath classical_path_constant_field(const Rational& a, const Rational& T, const Rational& q0,
                                                    const Rational& q1) {
    detail::require_nonzero_interval(T);
    const Rational half_a = a / Rational(2);
    const Rational velocity = (q1 - q0 - half_a * T * T) / T;
    return PolynomialPath{Polynomial({q0, velocity, half_a}), Rational(0), q0, T, q1};
}

/// qddot - a; the zero polynomial exactly when the path is classical.
inline Polynomial euler_lagrange_residual(const PolynomialPath& path, const Rational& a) {
    return path.q.derivative().derivative() - Polynomial::constant(a);
}

/// S = (q1 - q0)^2 / 2T + (a/2)(q1 + q0) T - a^2 T^3 / 24.
inline Rational action_constant_field(const Rational& a, const Rational& T, const Rational& q0, const Rational& q1) {
    detail::require_nonzero_interval(T);
    const Rational dq = q1 - q0;
    return dq * dq / (Rational(2) * T) + a / Rational(2) * (q1 + q0) * T - a * a / Rational(24) * T * T * T;
}

/// Integral of qdot^2 / 2 + a q along the path, via the polynomial antiderivative.
inline Rational action_integral(const PolynomialPath& path, const Rational& a) {
    const Polynomial v = path.q.derivative();
    const Polynomial lagrangian = v * v * Rational(Integer(1), Integer(2)) + path.q * a;
    return lagrangian.integrate(path.t_start, path.t_end);
}

inline QuadraticActionForm action_form_constant_field(const Rational& a, const Rational& T) {
    detail::require_nonzero_interval(T);
    const Rational inv_2T = (Rational(2) * T).inverse();
    const Rational linear = a * T / Rational(2);
    return {inv_2T, inv_2T, -T.inverse(), linear, linear, -(a * a) * T * T * T / Rational(24)};
}

inline QuadraticActionForm action_form_free(const Rational& T) { return action_form_constant_field(Rational(0), T); }

/// De Sitter minisuperspace action, read off the kernel phase through
/// K = A chi(-S):
///     S = -(q1-q0)^2 / 8T - (lam (q1+q0) - 2) T / 4 + lam^2 T^3 / 24.
inline QuadraticActionForm action_form_desitter(const Rational& lam, const Rational& T) {
    detail::require_nonzero_interval(T);
    const Rational inv_8T = (Rational(8) * T).inverse();
    const Rational linear = -lam * T / Rational(4);
    return {-inv_8T, -inv_8T, Rational(2) * inv_8T, linear, linear,
            T / Rational(2) + lam * lam * T * T * T / Rational(24)};
}

/// Coefficients of S_late(x'', x) + S_early(x, x') as the quadratic
/// A x^2 + B x + C in the intermediate point, with B and C affine/quadratic
/// in the outer endpoints.
struct IntermediateQuadratic {
    Rational A;
    // B = b_end x'' + b_start x' + b_const
    Rational b_end, b_start, b_const;
    // C is S_late(x'', 0) + S_early(0, x') as a form in (x'', x').
    QuadraticActionForm C;
};

inline IntermediateQuadratic intermediate_quadratic(const QuadraticActionForm& late, const QuadraticActionForm& early) {
    IntermediateQuadratic q;
    q.A = late.yy + early.xx;
    q.b_end = late.xy;
    q.b_start = early.xy;
    q.b_const = late.y + early.x;
    q.C = {late.xx, early.yy, Rational(0), late.x, early.y, late.c + early.c};
    return q;
}

/// Stationary point in x of S_late(x'', x) + S_early(x, x').
inline Rational stationary_intermediate(const QuadraticActionForm& late, const QuadraticActionForm& early,
                                        const Rational& x_end, const Rational& x_start) {
    const IntermediateQuadratic q = intermediate_quadratic(late, early);
    if (q.A.is_zero()) throw degenerate_error("no isolated stationary intermediate point");
    return -(q.b_end * x_end + q.b_start * x_start + q.b_const) / (Rational(2) * q.A);
}

/// The stationary value of S_late(x'', x) + S_early(x, x') over x, as a
/// quadratic form in (x'', x'): C - B^2 / 4A.
inline QuadraticActionForm compose_forms(const QuadraticActionForm& late, const QuadraticActionForm& early) {
    const IntermediateQuadratic q = intermediate_quadratic(late, early);
    if (q.A.is_zero()) throw degenerate_error("composed action has vanishing quadratic coefficient");
    const Rational k = (Rational(4) * q.A).inverse();
    QuadraticActionForm out = q.C;
    out.xx -= q.b_end * q.b_end * k;
    out.yy -= q.b_start * q.b_start * k;
    out.xy -= Rational(2) * q.b_end * q.b_start * k;
    out.x -= Rational(2) * q.b_end * q.b_const * k;
    out.y -= Rational(2) * q.b_start * q.b_const * k;
    out.c -= q.b_const * q.b_const * k;
    return out;
}

}  // namespace padicpath
