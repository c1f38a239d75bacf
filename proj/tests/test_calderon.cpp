#include "tflab/calderon.hpp"
#include "tflab/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace tflab;

namespace {

// Random step function with pieces bounded away from 0 so that dt/t integrals converge.
StepFunction random_step(Sampler& rng, bool monotone, bool touch_zero = false) {
  const int n = 1 + static_cast<int>(rng.uniform() * 5);
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  if (!touch_zero) {
    breaks.push_back(rng.uniform(0.1, 1.0));
    values.push_back(0.0);
  }
  for (int j = 0; j < n; ++j) {
    breaks.push_back(breaks.back() + rng.uniform(0.1, 2.0));
    values.push_back(rng.uniform(0.0, 3.0));
  }
  if (monotone) {
    std::sort(values.begin(), values.end(), std::greater<>());
  }
  return StepFunction(breaks, values);
}

// Overlap of [log a, log b) with [log x - log d, log x - log c) for every pair of pieces.
double conv_oracle(const StepFunction& f, const StepFunction& g, double x) {
  auto lg = [](double v) { return v == 0.0 ? -1e300 : std::log(v); };
  double acc = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i)
    for (std::size_t j = 0; j < g.pieces(); ++j) {
      const double lo = std::max(lg(f.breaks()[i]), std::log(x) - lg(g.breaks()[j + 1]));
      const double hi = std::min(lg(f.breaks()[i + 1]), std::log(x) - lg(g.breaks()[j]));
      if (hi > lo) acc += f.values()[i] * g.values()[j] * (hi - lo);
    }
  return acc;
}

double log_integral(const StepFunction& f) {
  double acc = 0.0;
  for (std::size_t j = 0; j < f.pieces(); ++j)
    if (f.values()[j] != 0.0) acc += f.values()[j] * std::log(f.breaks()[j + 1] / f.breaks()[j]);
  return acc;
}

// int r^{1/2} f(r) dr/r for a step function, piece by piece.
double half_moment(const StepFunction& f) {
  double acc = 0.0;
  for (std::size_t j = 0; j < f.pieces(); ++j)
    acc += f.values()[j] * 2.0 * (std::sqrt(f.breaks()[j + 1]) - std::sqrt(f.breaks()[j]));
  return acc;
}

}  // namespace

TEST_CASE("multiplicative convolution of two log-unit indicators") {
  const double e = std::numbers::e;
  const StepFunction f({0.0, 1.0, e}, {0.0, 1.0});
  for (double L : {0.1, 0.5, 1.0, 1.5, 1.9}) {
    const double expected = std::min(L, 1.0) - std::max(0.0, L - 1.0);
    CHECK(mult_convolution(f, f, std::exp(L)) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(mult_convolution(f, f, 0.5) == 0.0);
  CHECK(mult_convolution(f, f, e * e * 1.01) == 0.0);
  CHECK(dt_over_t_norm(f, 1.0) == doctest::Approx(1.0));
  CHECK(convolution_dt_over_t_norm(f, f, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mult_convolution(f, StepFunction(), 1.0) == 0.0);
  CHECK_THROWS_AS(mult_convolution(f, f, 0.0), CalderonError);
}

TEST_CASE("multiplicative convolution matches the pairwise overlap oracle") {
  Sampler rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_step(rng, false);
    const auto g = random_step(rng, false);
    for (double x : {0.05, 0.3, 1.0, 2.7, 9.0, 30.0})
      CHECK(mult_convolution(f, g, x) == doctest::Approx(conv_oracle(f, g, x)).epsilon(1e-12));
    CHECK(convolution_dt_over_t_norm(f, g, 1.0) == doctest::Approx(log_integral(f) * log_integral(g)).epsilon(1e-10));
  }
}

TEST_CASE("Young's inequality with constant 1") {
  Sampler rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_step(rng, false);
    const auto g = random_step(rng, false);
    const auto eq = young_check(f, g, 1.0, 1.0, 1.0);
    CHECK(eq.holds);
    CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-12));
    for (auto [u, v, w] : {std::tuple{2.0, 2.0, kInf}, {1.0, 2.0, 2.0}, {1.5, 1.5, 3.0}, {1.0, kInf, kInf}}) {
      const auto c = young_check(f, g, u, v, w);
      CHECK(c.holds);
      CHECK(c.lhs <= c.rhs * (1 + 1e-9));
    }
  }
  const auto zero = young_check(StepFunction(), StepFunction::indicator(1.0), 2.0, 2.0, kInf);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.holds);
  CHECK_THROWS_AS(young_check(StepFunction(), StepFunction(), 2.0, 2.0, 2.0), CalderonError);
}

TEST_CASE("Hardy's inequality on an indicator") {
  const StepFunction phi({0.0, 1.0, 2.0}, {0.0, 1.0});
  const auto h = hardy_check(phi, 0.5, 2.0);
  CHECK(h.rhs_running == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(h.lhs_running == doctest::Approx(std::sqrt(2.0 - 2.0 * std::log(2.0))).epsilon(1e-12));
  CHECK(h.lhs_running < 2.0);
  CHECK(h.holds);
  const auto z = hardy_check(StepFunction(), 0.0, 1.0);
  CHECK(z.lhs_running == 0.0);
  CHECK(z.rhs_running == 0.0);
  CHECK(z.holds);
  CHECK_THROWS_AS(hardy_check(phi, 1.0, 2.0), CalderonError);
}

TEST_CASE("Hardy suite on random steps") {
  Sampler rng(7);
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto phi = random_step(rng, false, trial % 2 == 0);
    for (double delta : {-1.0, 0.0, 0.5})
      for (double q : {1.0, 2.0, kInf}) {
        const auto h = hardy_check(phi, delta, q);
        if (!h.holds) ++violations;
        if (std::isfinite(h.rhs_running)) CHECK(h.lhs_running <= h.rhs_running * (1 + 1e-9));
        if (std::isfinite(h.rhs_tail)) CHECK(h.lhs_tail <= h.rhs_tail * (1 + 1e-9));
      }
  }
  CHECK(violations == 0);
}

TEST_CASE("Calderon operator on the unit indicator") {
  const auto one = StepFunction::indicator(1.0);
  for (auto method : {CalderonMethod::exact, CalderonMethod::quadrature}) {
    CHECK(calderon_apply(stft_endpoints(), one, one, 1.0, method) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(calderon_apply(stft_endpoints(), one, one, 0.25, method) == doctest::Approx(2.0).epsilon(1e-8));
  }
  CHECK(calderon_apply(stft_endpoints(), StepFunction(), one, 1.0) == 0.0);
  CHECK_THROWS_AS(calderon_apply(stft_endpoints(), one, one, 0.0), CalderonError);
  CHECK(is_canonical(stft_endpoints()));
  CHECK(is_canonical(l21_endpoints()));
  CHECK_FALSE(is_canonical(EtaSet({{1.0, 0.0, 0.0}})));
}

TEST_CASE("L21 kernel separates") {
  Sampler rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_step(rng, true, true);
    const auto g = random_step(rng, true, true);
    for (double t : {0.1, 0.7, 1.0, 3.0, 40.0}) {
      const double expected = std::min(1.0, 1.0 / std::sqrt(t)) * half_moment(f) * half_moment(g);
      CHECK(calderon_apply(l21_endpoints(), f, g, t, CalderonMethod::exact) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("exact region decomposition agrees with quadrature") {
  Sampler rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_step(rng, true, true);
    const auto g = random_step(rng, true, true);
    const auto& eta = trial % 2 ? stft_endpoints() : l21_endpoints();
    const double t = std::exp(rng.uniform(-3.0, 3.0));
    const double exact = calderon_apply(eta, f, g, t, CalderonMethod::exact);
    const double quad = calderon_apply(eta, f, g, t, CalderonMethod::quadrature);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("symmetry and monotonicity in t") {
  Sampler rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_step(rng, true, true);
    const auto g = random_step(rng, true, true);
    double prev = kInf;
    for (double t = 0.05; t < 50.0; t *= 1.3) {
      const double a = calderon_apply(stft_endpoints(), f, g, t);
      CHECK(a == doctest::Approx(calderon_apply(stft_endpoints(), g, f, t)).epsilon(1e-10));
      CHECK(a <= prev * (1 + 1e-12));
      prev = a;
    }
  }
}

TEST_CASE("half-line Lorentz functional") {
  CHECK(halfline_lorentz_functional(StepFunction::indicator(1.0), 4.0, 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(halfline_lorentz_functional(StepFunction(), 4.0, 2.0) == 0.0);
  const PiecewisePower h{{0.0, 1.0, kInf}, {1.0, 1.0}, {0.0, -0.5}};
  CHECK(halfline_lorentz_functional(h, 3.0, 1.0) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(std::isinf(halfline_lorentz_functional(h, 2.0, 1.0)));
  auto numeric = [](double t) { return std::min(1.0, 1.0 / std::sqrt(t)); };
  CHECK(halfline_lorentz_functional(numeric, {1.0}, 3.0, 1.0) == doctest::Approx(9.0).epsilon(1e-6));
  CHECK(halfline_lorentz_functional(numeric, {1.0}, 3.0, kInf) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Calderon estimate harness") {
  const std::vector<cplx> ind{1, 1, 1, 0, 0, 0, 0, 0};
  const auto f = MeasuredFunction::uniform(Domain::group, ind, 1.0);
  const auto est = calderon_estimate_check(4.0, 3.0, 1.0, 2.0, 2.0, f, f);
  CHECK(std::isfinite(est.ratio));
  CHECK(est.ratio > 0.0);
  const auto zero = MeasuredFunction::uniform(Domain::group, std::vector<cplx>(8, 0.0), 1.0);
  CHECK(calderon_estimate_check(4.0, 3.0, 1.0, 2.0, 2.0, zero, f).lhs == 0.0);
  CHECK_THROWS_AS(calderon_estimate_check(2.0, 2.0, 1.0, 1.0, 1.0, f, f), CalderonError);

  Sampler rng(17);
  std::vector<cplx> a(8), b(8);
  for (auto& v : a) v = rng.complex_normal();
  for (auto& v : b) v = rng.complex_normal();
  const auto base = calderon_estimate_check(4.0, 3.0, 1.0, 2.0, 2.0, MeasuredFunction::uniform(Domain::group, a, 1.0),
                                            MeasuredFunction::uniform(Domain::group, b, 1.0));
  for (double lambda : {0.5, 2.0}) {
    const auto scaled =
        calderon_estimate_check(4.0, 3.0, 1.0, 2.0, 2.0, MeasuredFunction::uniform(Domain::group, a, lambda),
                                MeasuredFunction::uniform(Domain::group, b, lambda));
    CHECK(scaled.ratio == doctest::Approx(base.ratio).epsilon(1e-6));
  }
}

TEST_CASE("tail Hardy form needs the weight t^{2-delta}") {
  // phi = 1 on [10, 20), delta = 0, q = inf: sup_t t int_t^inf phi = 100 at t = 10,
  // while sup_t t phi(t) = 20 and sup_t t^2 phi(t) = 400.
  const StepFunction phi({0.0, 10.0, 20.0}, {0.0, 1.0});
  const auto h = hardy_check(phi, 0.0, kInf);
  CHECK(h.lhs_tail == doctest::Approx(100.0));
  CHECK(h.rhs_tail == doctest::Approx(400.0));
  CHECK(h.holds);
  double literal = 0.0;
  for (std::size_t j = 0; j < phi.pieces(); ++j) literal = std::max(literal, phi.breaks()[j + 1] * phi.values()[j]);
  CHECK(literal == 20.0);
  CHECK(h.lhs_tail > literal);
}
