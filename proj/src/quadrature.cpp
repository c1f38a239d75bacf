#include "tflab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tflab {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

using Gauss20 = boost::math::quadrature::gauss<double, 20>;

// a^q * sum_k binom(q,k) (b/a)^k eps^{c+k} / (c+k): the integral over [0, eps]
// of t^{c-1} (a + b t)^q when |b eps / a| is small.
double head_series(double c, double a, double b, double q, double eps) {
  double coeff = 1.0;
  double ratio_pow = 1.0;
  const double x = b * eps / a;
  double sum = 0.0;
  for (int k = 0; k < 80; ++k) {
    const double term = coeff * ratio_pow / (c + k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    coeff *= (q - k) / (k + 1.0);
    ratio_pow *= x;
    if (coeff == 0.0) break;
  }
  return std::pow(a, q) * std::pow(eps, c) * sum;
}

// Integral over [E, inf) of t^{c-1} (a + b t)^q with b > 0, c + q < 0.
double tail_series(double c, double a, double b, double q, double E) {
  double coeff = 1.0;
  double ratio_pow = 1.0;
  const double x = a / (b * E);
  double sum = 0.0;
  for (int k = 0; k < 80; ++k) {
    const double term = coeff * ratio_pow / (k - c - q);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    coeff *= (q - k) / (k + 1.0);
    ratio_pow *= x;
    if (coeff == 0.0) break;
  }
  return std::pow(b, q) * std::pow(E, c + q) * sum;
}

// Limit of t^c (a + b t) at t -> 0 or t -> inf.
double limit_power_linear(double c, double a, double b, bool at_zero) {
  auto sgn_inf = [](double x) { return x > 0 ? inf : -inf; };
  if (at_zero) {
    if (a != 0.0) return c > 0 ? 0.0 : (c == 0 ? a : sgn_inf(a));
    if (b == 0.0) return 0.0;
    return c + 1 > 0 ? 0.0 : (c + 1 == 0 ? b : sgn_inf(b));
  }
  if (b != 0.0 && c + 1 > 0) return sgn_inf(b);
  if (b != 0.0 && c + 1 == 0) return b;
  if (a == 0.0) return 0.0;
  return c > 0 ? sgn_inf(a) : (c == 0 ? a : 0.0);
}

}  // namespace

double power_difference(double a, double b, double e) {
  if (a == b) return 0.0;
  if (a == 0.0) return std::pow(b, e);
  if (std::isinf(b)) return e > 0 ? inf : (e == 0 ? 0.0 : -std::pow(a, e));
  return std::pow(a, e) * std::expm1(e * std::log(b / a));
}

double power_integral(double lo, double hi, double e) {
  if (!(hi > lo)) return 0.0;
  if (e == 0.0) {
    if (lo == 0.0 || std::isinf(hi)) return inf;
    return std::log1p((hi - lo) / lo);
  }
  if (e > 0.0) {
    if (std::isinf(hi)) return inf;
    return power_difference(lo, hi, e) / e;
  }
  if (lo == 0.0) return inf;
  // e < 0: (lo^e - hi^e) / (-e)
  if (std::isinf(hi)) return std::pow(lo, e) / -e;
  return -std::pow(lo, e) * std::expm1(e * std::log(hi / lo)) / -e;
}

double power_linear_integral(double c, double a, double b, double q, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  if (a == 0.0 && b == 0.0) return 0.0;
  if (a == 0.0) return std::pow(b, q) * power_integral(lo, hi, c + q);
  if (b == 0.0) return std::pow(a, q) * power_integral(lo, hi, c);
  double total = 0.0;
  double from = lo;
  double to = hi;
  if (lo == 0.0) {
    if (!(c > 0.0)) return inf;
    const double eps = std::min(hi, 0.25 * std::abs(a / b));
    total += head_series(c, a, b, q, eps);
    from = eps;
  }
  if (std::isinf(hi)) {
    if (!(b > 0.0) || !(c + q < 0.0)) return inf;
    const double E = std::max(from, 4.0 * std::abs(a / b));
    total += tail_series(c, a, b, q, E);
    to = E;
  }
  if (to > from) {
    total += integrate_log(
        [&](double t) {
          const double base = std::max(0.0, a + b * t);
          return std::pow(t, c - 1.0) * std::pow(base, q);
        },
        from, to, 0.5);
  }
  return total;
}

double sup_power_linear(double c, double a, double b, double lo, double hi) {
  auto value = [&](double t) {
    if (t == 0.0) return limit_power_linear(c, a, b, true);
    if (std::isinf(t)) return limit_power_linear(c, a, b, false);
    return std::pow(t, c) * (a + b * t);
  };
  double best = std::max(value(lo), value(hi));
  if (b != 0.0 && c + 1.0 != 0.0) {
    const double crit = -c * a / ((c + 1.0) * b);
    if (crit > lo && crit < hi) best = std::max(best, value(crit));
  }
  return best;
}

double linear_power_integral(double s0, double s1, double h0, double h1, double w) {
  const double len = s1 - s0;
  if (!(len > 0.0)) return 0.0;
  if (h0 == h1) return len * std::pow(h0, w);
  // len * (h1^{w+1} - h0^{w+1}) / ((w+1)(h1 - h0)), written as a difference quotient.
  const double lo = std::min(h0, h1);
  const double hi = std::max(h0, h1);
  if (lo == 0.0) return len * std::pow(hi, w) / (w + 1.0);
  const double r = hi / lo;
  const double num = std::expm1((w + 1.0) * std::log(r));
  const double den = (w + 1.0) * (r - 1.0);
  return len * std::pow(lo, w) * num / den;
}

double integrate_log(const std::function<double(double)>& fn, double lo, double hi, double cell) {
  if (!(hi > lo)) return 0.0;
  if (!(lo > 0.0) || std::isinf(hi)) throw std::invalid_argument("integrate_log needs 0 < lo <= hi < inf");
  const double s0 = std::log(lo);
  const double s1 = std::log(hi);
  const auto n = std::max<long>(1, static_cast<long>(std::ceil((s1 - s0) / cell)));
  const double width = (s1 - s0) / static_cast<double>(n);
  double sum = 0.0;
  for (long k = 0; k < n; ++k) {
    const double a = s0 + width * static_cast<double>(k);
    const double b = k + 1 == n ? s1 : a + width;
    sum += Gauss20::integrate(
        [&](double s) {
          const double t = std::exp(s);
          return fn(t) * t;
        },
        a, b);
  }
  return sum;
}

double gauss_legendre(const std::function<double(double)>& fn, double a, double b) {
  if (!(b > a)) return 0.0;
  return Gauss20::integrate(fn, a, b);
}

}  // namespace tflab
