#pragma once

#include <functional>

namespace tflab {

/// b^e - a^e for 0 <= a <= b, accurate when a and b are close.
double power_difference(double a, double b, double e);

/// Integral of t^{e-1} over [lo, hi]; 0 <= lo <= hi <= inf. Returns +inf when divergent.
double power_integral(double lo, double hi, double e);

/// Integral of t^{c-1} (a + b t)^q over [lo, hi], where a + b t >= 0 on the
/// interval and q > 0. Closed form when a or b vanishes; otherwise a series
/// near 0 and Gauss-Legendre on log cells of width at most 1.
double power_linear_integral(double c, double a, double b, double q, double lo, double hi);

/// Supremum of t^c (a + b t) over [lo, hi], using limits at 0 and inf.
double sup_power_linear(double c, double a, double b, double lo, double hi);

/// Integral over [s0, s1] of h^w where h is linear with h(s0) = h0, h(s1) = h1 >= 0.
double linear_power_integral(double s0, double s1, double h0, double h1, double w);

/// 20-point Gauss-Legendre over [lo, hi] in the variable s = log t, cells of
/// width at most `cell`; fn receives t. Requires 0 < lo <= hi < inf.
double integrate_log(const std::function<double(double)>& fn, double lo, double hi, double cell = 1.0);

/// 20-point Gauss-Legendre on [a, b] in the plain variable.
double gauss_legendre(const std::function<double(double)>& fn, double a, double b);

}  // namespace tflab
