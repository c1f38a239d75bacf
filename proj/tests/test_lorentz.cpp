#include "tflab/lorentz.hpp"
#include "tflab/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace tflab;

namespace {

MeasuredFunction real_values(std::vector<double> v, double weight = 1.0) {
  std::vector<cplx> c(v.begin(), v.end());
  return MeasuredFunction::uniform(Domain::group, c, weight);
}

MeasuredFunction random_weighted(Sampler& rng, std::size_t n) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    const double weight = rng.uniform(0.1, 2.0);
    cplx value = rng.complex_normal();
    if (rng.uniform() < 0.2) value = 0.0;
    if (rng.uniform() < 0.2 && i > 0) value = atoms.back().value;
    atoms.push_back({static_cast<std::int64_t>(i), weight, value});
  }
  return MeasuredFunction(Domain::group, atoms);
}

// Sorted (|value|, weight) pairs, largest first: a test-side rearrangement.
std::vector<std::pair<double, double>> sorted_levels(const MeasuredFunction& f) {
  std::vector<std::pair<double, double>> v;
  for (const auto& a : f.atoms())
    if (std::abs(a.value) > 0.0) v.emplace_back(std::abs(a.value), a.weight);
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first > b.first; });
  return v;
}

// The defining integral evaluated piece by piece from the sorted levels.
double oracle_norm(const MeasuredFunction& f, double p, double q) {
  const auto levels = sorted_levels(f);
  double t0 = 0.0;
  double acc = 0.0;
  for (const auto& [value, weight] : levels) {
    const double t1 = t0 + weight;
    if (std::isinf(q))
      acc = std::max(acc, value * (std::isinf(p) ? 1.0 : std::pow(t1, 1.0 / p)));
    else
      acc += std::pow(value, q) * (p / q) * (std::pow(t1, q / p) - std::pow(t0, q / p));
    t0 = t1;
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

}  // namespace

TEST_CASE("distribution function") {
  const auto f = real_values({3, 1, 2});
  CHECK(distribution(f, 1.5) == 2.0);
  CHECK(distribution(f, 3.0) == 0.0);
  CHECK(distribution(f, 10.0) == 0.0);
  CHECK(distribution(f, 0.0) == 3.0);
  const auto g = real_values({5, 4, 3, 1, 0.5, 0.2, 0.1, 0}, 0.25);
  CHECK(distribution(g, 2.0) == doctest::Approx(0.75));
}

TEST_CASE("rearrangement") {
  const auto fs = rearrangement(real_values({3, 1, 2}));
  CHECK(fs.breaks() == std::vector<double>{0, 1, 2, 3});
  CHECK(fs.values() == std::vector<double>{3, 2, 1});
  CHECK(fs.is_monotone());

  const auto hs = rearrangement(real_values({5, 5, 1}, 0.5));
  CHECK(hs(0.25) == 5.0);
  CHECK(hs(0.75) == 5.0);
  CHECK(hs(1.25) == 1.0);
  CHECK(hs(1.5) == 0.0);
  CHECK(hs.support_end() == doctest::Approx(1.5));
}

TEST_CASE("rearrangement is equimeasurable") {
  Sampler rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_weighted(rng, 9);
    const auto fs = rearrangement(f);
    for (const auto& a : f.atoms()) {
      for (double alpha : {std::abs(a.value), 0.5 * std::abs(a.value), 0.0}) {
        CHECK(fs.level_measure(alpha) == doctest::Approx(distribution(f, alpha)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("rearrangement is invariant under relabeling") {
  const auto f = real_values({0.3, 2.0, 1.5, 0.0, 2.0, 0.7});
  const auto perm = real_values({2.0, 0.7, 0.0, 0.3, 1.5, 2.0});
  CHECK(rearrangement(f) == rearrangement(perm));
}

TEST_CASE("double star") {
  const auto c = StepFunction::indicator(1.0, 4.0);
  CHECK(double_star(c, 0.5) == 4.0);
  CHECK(double_star(c, 1.0) == 4.0);
  const StepFunction s({0, 1, 2, 3}, {3, 2, 1});
  CHECK(double_star(s, 2.0) == doctest::Approx(2.5));
  CHECK_THROWS_AS(double_star(s, 0.0), LorentzError);
  for (double t = 0.05; t < 5.0; t += 0.05) {
    CHECK(double_star(s, t) >= s(t) * (1 - 1e-14));
    CHECK(double_star(s, t + 0.05) <= double_star(s, t) + 1e-15);
  }
}

TEST_CASE("Lorentz norm closed forms") {
  CHECK(lorentz_norm(StepFunction::indicator(4.0), 4.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(lorentz_norm(real_values({3, 4}), 2.0, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
  const double expected = 2.0 * (3.0 + 2.0 * (std::sqrt(2.0) - 1.0) + (std::sqrt(3.0) - std::sqrt(2.0)));
  CHECK(lorentz_norm(real_values({3, 1, 2}), 2.0, 1.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(lorentz_norm_via_distribution(real_values({3, 1, 2}), 2.0, 1.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::isinf(lorentz_norm(real_values({1, 0}), kInf, 1.0)));
  CHECK(lorentz_norm(real_values({0, 0}), kInf, 1.0) == 0.0);
  CHECK(lorentz_norm(real_values({3, 1, 2}), kInf, kInf) == 3.0);
  CHECK(lorentz_norm(real_values({0, 0}), 2.0, 1.0) == 0.0);
  CHECK(lorentz_norm_via_distribution(real_values({0, 0}), 2.0, 1.0) == 0.0);
}

TEST_CASE("Lorentz norm agrees with the piecewise oracle and the distribution formula") {
  Sampler rng(5);
  const double ps[] = {0.5, 1.0, 4.0 / 3.0, 2.0, 3.0, 7.5};
  const double qs[] = {0.5, 1.0, 2.0, 3.0, kInf};
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_weighted(rng, 1 + trial % 11);
    for (double p : ps)
      for (double q : qs) {
        const double a = lorentz_norm(f, p, q);
        CHECK(a == doctest::Approx(oracle_norm(f, p, q)).epsilon(1e-12));
        CHECK(a == doctest::Approx(lorentz_norm_via_distribution(f, p, q)).epsilon(1e-9));
      }
  }
}

TEST_CASE("Haar scaling multiplies the norm by lambda^{1/p}") {
  const std::vector<double> v{2.0, 0.5, 1.25, 3.0};
  for (double p : {1.5, 2.0, 4.0})
    for (double q : {1.0, 3.0, kInf}) {
      const double base = lorentz_norm(real_values(v, 1.0), p, q);
      CHECK(lorentz_norm(real_values(v, 0.125), p, q) == doctest::Approx(std::pow(0.125, 1.0 / p) * base));
    }
}

TEST_CASE("f** norm dominates the f* norm") {
  Sampler rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_weighted(rng, 6);
    for (double p : {1.5, 3.0})
      for (double q : {1.0, 2.0, kInf}) CHECK(lorentz_norm_double_star(f, p, q) >= lorentz_norm(f, p, q) * (1 - 1e-12));
  }
}

TEST_CASE("second-index embedding with constant (q/p)^{1/q-1/r}") {
  CHECK(embedding_constant(2.0, 1.0, kInf) == doctest::Approx(std::pow(0.5, 1.0)));
  CHECK(embedding_constant(3.0, 2.0, 2.0) == 1.0);
  Sampler rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_weighted(rng, 8);
    for (auto [p, q, r] : {std::tuple{2.0, 1.0, 2.0}, {3.0, 1.0, kInf}, {1.5, 2.0, 4.0}, {4.0, 4.0, kInf}}) {
      const double lhs = lorentz_norm(f, p, r);
      const double rhs = embedding_constant(p, q, r) * lorentz_norm(f, p, q);
      CHECK(lhs <= rhs * (1 + 1e-9));
    }
  }
}

TEST_CASE("Lorentz Hoelder with constant p'") {
  CHECK(holder_constant(2.0) == doctest::Approx(2.0));
  CHECK(holder_constant(3.0) == doctest::Approx(1.5));
  Sampler rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 7;
    std::vector<cplx> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.complex_normal();
      b[i] = rng.uniform() < 0.3 ? cplx(0.0) : rng.complex_normal();
    }
    const auto f = MeasuredFunction::uniform(Domain::group, a, 0.5);
    const auto g = MeasuredFunction::uniform(Domain::group, b, 0.5);
    const auto fg = pointwise_product(f, g);
    for (auto [p1, p2, q1, q2, q] : {std::tuple{3.0, 6.0, 2.0, 2.0, 1.0}, {4.0, 4.0, 1.0, kInf, 1.0}, {2.0, 6.0, 4.0, 4.0, 2.0}}) {
      const double p = 1.0 / (1.0 / p1 + 1.0 / p2);
      CHECK(lorentz_norm(fg, p, q) <= holder_constant(p) * lorentz_norm(f, p1, q1) * lorentz_norm(g, p2, q2) * (1 + 1e-9));
    }
  }
}

TEST_CASE("tensor product") {
  const auto delta = MeasuredFunction(Domain::group, {{0, 1.0, 1.0}, {1, 1.0, 0.0}});
  const auto delta_hat = MeasuredFunction(Domain::dual, {{0, 0.5, 0.0}, {1, 0.5, 2.0}});
  const auto t = tensor_product(delta, delta_hat);
  CHECK(t.domain() == Domain::phase_space);
  CHECK(t.size() == 4);
  CHECK(std::count_if(t.atoms().begin(), t.atoms().end(), [](const Atom& a) { return a.value != 0.0; }) == 1);
  CHECK(t.atoms()[1].id == 1);
  CHECK(t.atoms()[1].weight == 0.5);
  CHECK_THROWS_AS(tensor_product(delta, delta), LorentzError);

  Sampler rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_weighted(rng, 5);
    std::vector<Atom> atoms;
    for (int i = 0; i < 4; ++i) atoms.push_back({i, rng.uniform(0.2, 1.0), rng.complex_normal()});
    const MeasuredFunction h(Domain::dual, atoms);
    for (double p : {1.0, 2.5, 4.0})
      CHECK(lorentz_norm(tensor_product(f, h), p, p) ==
            doctest::Approx(lorentz_norm(f, p, p) * lorentz_norm(h, p, p)).epsilon(1e-12));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(MeasuredFunction(Domain::group, {{0, 0.0, 1.0}}), LorentzError);
  CHECK_THROWS_AS(StepFunction({0, 2, 1}, {1, 1}), LorentzError);
  CHECK_THROWS_AS(StepFunction({1, 2}, {1}), LorentzError);
  CHECK_THROWS_AS(lorentz_norm(real_values({1}), 0.0, 1.0), LorentzError);
  CHECK(domain_from_string(to_string(Domain::phase_space)) == Domain::phase_space);
  CHECK(conjugate(1.0) == kInf);
  CHECK(conjugate(kInf) == 1.0);
  CHECK(conjugate(4.0) == doctest::Approx(4.0 / 3.0));
}
