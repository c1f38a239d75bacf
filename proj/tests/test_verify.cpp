#include "tflab/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace tflab;

namespace {

Exponent ex(const char* s) { return Exponent::parse(s); }

TheoremInstance t1_instance(const char* p, const char* q) {
  TheoremInstance inst;
  inst.theorem = TheoremId::t1;
  inst.group = "8";
  inst.indices.p = ex(p);
  inst.indices.q = ex(q);
  inst.indices.u = ex("1");
  inst.indices.v = ex("1");
  inst.indices.w = ex("1");
  return inst;
}

TheoremInstance t2_instance(const char* group, std::uint64_t trials) {
  TheoremInstance inst;
  inst.theorem = TheoremId::t2;
  inst.group = group;
  inst.indices.q = ex("4");
  inst.trials = trials;
  return inst;
}

std::vector<bool> full_mask(std::size_t n) { return std::vector<bool>(n * n, true); }

}  // namespace

TEST_CASE("admissibility") {
  CHECK(check_admissibility(t1_instance("3", "4")).ok);
  const auto q2 = check_admissibility(t1_instance("3", "2"));
  CHECK_FALSE(q2.ok);
  CHECK(q2.explanation.find("q") != std::string::npos);
  const auto p2 = check_admissibility(t1_instance("2", "4"));
  CHECK_FALSE(p2.ok);
  CHECK(p2.explanation.find("p") != std::string::npos);
  CHECK_FALSE(check_admissibility(t1_instance("5", "4")).ok);

  TheoremInstance t1p;
  t1p.theorem = TheoremId::t1prime;
  t1p.indices = {.p1 = ex("3"), .p2 = ex("6"), .q = ex("2"), .u = ex("1"), .v = ex("1"), .w = ex("1")};
  CHECK_FALSE(check_admissibility(t1p).ok);
  t1p.indices.q = ex("4");
  t1p.indices.p1 = ex("2");
  t1p.indices.p2 = ex("4");
  CHECK(check_admissibility(t1p).ok);

  auto missing = t1_instance("3", "4");
  missing.indices.w.reset();
  CHECK_FALSE(check_admissibility(missing).ok);

  auto t3i = t1p;
  t3i.theorem = TheoremId::t3i;
  t3i.group = "4";
  t3i.tau = GroupEndomorphism::Matrix{{2}};
  CHECK_FALSE(check_admissibility(t3i).ok);
  t3i.tau = GroupEndomorphism::Matrix{{3}};
  CHECK(check_admissibility(t3i).ok);

  auto zero_trials = t2_instance("6", 0);
  CHECK_FALSE(check_admissibility(zero_trials).ok);
  CHECK_THROWS_AS(verify_theorem(t1_instance("2", "4")), VerifyError);
  CHECK(theorem_from_string("t1'") == TheoremId::t1prime);
  CHECK_THROWS_AS(theorem_from_string("t9"), VerifyError);
}

TEST_CASE("sampling") {
  const auto g = FiniteAbelianGroup::parse("12");
  for (auto kind : {SampleKind::gaussian_random, SampleKind::indicator, SampleKind::spike_plus_flat, SampleKind::tf_atom}) {
    const auto [a, b] = sample_functions(kind, g, 5);
    const auto [c, d] = sample_functions(kind, g, 5);
    CHECK(a.values() == c.values());
    CHECK(b.values() == d.values());
  }
  const auto [f, h] = sample_functions(SampleKind::indicator, g, 3);
  for (auto v : f.values()) CHECK((v == cplx(0.0) || v == cplx(1.0)));
  for (auto v : h.values()) CHECK((v == cplx(0.0) || v == cplx(1.0)));
  CHECK(sample_kind_from_string(to_string(SampleKind::tf_atom)) == SampleKind::tf_atom);

  const auto big = FiniteAbelianGroup::parse("64");
  const auto [a, b] = sample_functions(SampleKind::gaussian_random, big, 42);
  double mean = 0.0;
  for (auto v : a.values()) mean += std::norm(v);
  for (auto v : b.values()) mean += std::norm(v);
  mean /= 128.0;
  CHECK(std::abs(mean - 1.0) < 0.1);
}

TEST_CASE("zero functions are skipped") {
  const auto inst = t2_instance("6", 10);
  const auto g = FiniteAbelianGroup::parse("6");
  CHECK_FALSE(theorem_ratio(inst, GroupFunction::zeros(g), GroupFunction::constant(g, 1.0)));
  CHECK(theorem_ratio(inst, GroupFunction::point_mass(g, 0), GroupFunction::point_mass(g, 0)));
}

TEST_CASE("t2 report is deterministic and finite") {
  const auto inst = t2_instance("6", 100);
  const auto a = verify_theorem(inst);
  const auto b = verify_theorem(inst);
  CHECK(a == b);
  CHECK(a.violations.empty());
  CHECK(a.trials.size() + a.skipped == 100);
  CHECK(std::isfinite(a.max_ratio));
  CHECK(a.max_ratio >= a.mean_ratio);
  double best = 0.0;
  for (const auto& t : a.trials) best = std::max(best, t.ratio);
  CHECK(a.max_ratio == best);
  const auto [f, g] = trial_pair(inst, 7);
  CHECK(*theorem_ratio(inst, f, g) == a.trials[7].ratio);
  CHECK(a.trials[7].f == fingerprint(f.values()));
}

TEST_CASE("Rihaczek closed forms agree with the direct transform") {
  for (auto id : {TheoremId::t3iii, TheoremId::t3iv}) {
    TheoremInstance inst;
    inst.theorem = id;
    inst.group = "4x6";
    inst.indices = {.p = ex("3"), .u = ex("1"), .v = ex("1"), .w = ex("1")};
    inst.trials = 40;
    REQUIRE(check_admissibility(inst).ok);
    const auto rep = verify_theorem(inst);
    CHECK(rep.violations.empty());
    REQUIRE_FALSE(rep.notes.empty());
  }
}

TEST_CASE("restricted weak type at the endpoints") {
  const auto g = FiniteAbelianGroup::parse("8");
  const std::vector<Index> U{0, 1, 2};
  const std::vector<Index> V{3, 5};
  const auto a = restricted_weak_type_check(g, U, V, 1.0, kInf, kInf);
  CHECK(a.holds);
  CHECK(a.rhs == doctest::Approx(3.0));
  CHECK(a.lhs <= a.rhs * (1 + 1e-12));
  const auto b = restricted_weak_type_check(g, U, V, kInf, 1.0, kInf);
  CHECK(b.holds);
  CHECK(b.rhs == doctest::Approx(2.0));

  // |V_{1_{0}} 1_{0}| = 1 on the eight cells with x = 0, total measure 1: F** = 1 then 1/t, peak 1 at t = 1.
  const auto s = restricted_weak_type_check(g, {0}, {0}, 2.0, 2.0, 2.0);
  CHECK(s.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.holds);
  CHECK_THROWS(restricted_weak_type_check(g, {}, V, 2.0, 2.0, 2.0));

  Sampler rng(1);
  const auto z6 = FiniteAbelianGroup::parse("6");
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Index> A, B;
    for (Index x = 0; x < 6; ++x) {
      if (rng.uniform() < 0.5) A.push_back(x);
      if (rng.uniform() < 0.5) B.push_back(x);
    }
    if (A.empty() || B.empty()) continue;
    CHECK(restricted_weak_type_check(z6, A, B, 2.0, 2.0, 2.0).holds);
    CHECK(restricted_weak_type_check(z6, A, B, 1.0, kInf, kInf).holds);
    CHECK(restricted_weak_type_check(z6, A, B, kInf, 1.0, kInf).holds);
  }
}

TEST_CASE("weighted double star supremum") {
  // h = 1 on [0, 1): h** = 1 then 1/t, so t^{1/2} h** peaks at t = 1.
  CHECK(sup_weighted_double_star(StepFunction::indicator(1.0), 2.0) == doctest::Approx(1.0));
  CHECK(sup_weighted_double_star(StepFunction::indicator(1.0), kInf) == doctest::Approx(1.0));
  CHECK(sup_weighted_double_star(StepFunction::indicator(4.0, 0.5), 1.0) == doctest::Approx(2.0));
  const StepFunction h({0, 1, 3}, {2, 1});
  // t^{1/2}(2 + (t - 1))/t on [1, 3] peaks at t = 1 with value 2; beyond 3 it is 4/sqrt(t).
  CHECK(sup_weighted_double_star(h, 2.0) == doctest::Approx(4.0 / std::sqrt(3.0)));
}

TEST_CASE("majorization by the Calderon operator") {
  const auto g = FiniteAbelianGroup::parse("12");
  CHECK(majorization_check(GroupFunction::zeros(g), GroupFunction::constant(g, 1.0)) == 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [f, h] = sample_functions(SampleKind::indicator, g, seed);
    if (f.is_zero() || h.is_zero()) continue;
    const double ratio = majorization_check(f, h);
    CHECK(std::isfinite(ratio));
    CHECK(ratio <= 10.0);
  }
}

TEST_CASE("uncertainty chain") {
  const auto g = FiniteAbelianGroup::parse("6");
  const auto [f, h] = sample_functions(SampleKind::gaussian_random, g, 4);
  const auto full = uncertainty_check(f, h, full_mask(6), 4.0, 3.0, 1.0, 1.0);
  const double l2 = f.lp_norm(2.0) * h.lp_norm(2.0);
  CHECK(full.epsilon == doctest::Approx(l2 * l2).epsilon(1e-12));
  CHECK(full.holds);
  CHECK(full.chain_lhs <= full.chain_rhs * (1 + 1e-9));
  CHECK_THROWS(uncertainty_check(f, h, full_mask(6), 4.0, 3.0, 1.0, 1.0, l2 * l2 * 1.01));
  CHECK_THROWS(uncertainty_check(GroupFunction::zeros(g), h, full_mask(6), 4.0, 3.0, 1.0, 1.0));
  CHECK_THROWS(uncertainty_check(f, h, std::vector<bool>(36, false), 4.0, 3.0, 1.0, 1.0));

  Sampler rng(8);
  int runs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double q = std::array{3.0, 4.0, 6.0}[trial % 3];
    const double p = q == 3.0 ? 2.5 : 3.0;
    const auto [a, b] = sample_functions(SampleKind::gaussian_random, g, 100 + trial);
    std::vector<bool> omega(36);
    for (std::size_t i = 0; i < omega.size(); ++i) omega[i] = rng.uniform() < 0.3;
    omega[rng.index(36)] = true;
    const auto r = uncertainty_check(a, b, omega, q, p, 1.0, 2.0);
    CHECK(r.holds);
    CHECK(r.chain_lhs <= r.chain_rhs * (1 + 1e-9));
    ++runs;
  }
  CHECK(runs == 200);
}

TEST_CASE("extremizer search") {
  const auto inst = t2_instance("4", 50);
  const auto rep = verify_theorem(inst);
  const auto zero = extremizer_search(inst, 0);
  CHECK(zero.ratio == rep.max_ratio);
  CHECK(zero.evaluations == 0);
  const auto a = extremizer_search(inst, 400, 4);
  CHECK(a.ratio >= rep.max_ratio);
  CHECK(*theorem_ratio(inst, a.f, a.g) == doctest::Approx(a.ratio).epsilon(1e-12));
  const auto b = extremizer_search(inst, 400, 4);
  CHECK(a.ratio == b.ratio);
  CHECK(a.f.values() == b.f.values());
  CHECK(a.g.values() == b.g.values());
  auto t5 = inst;
  t5.theorem = TheoremId::t5;
  CHECK_THROWS(extremizer_search(t5, 10));
}

TEST_CASE("Weyl operator norm sampling") {
  const auto g = FiniteAbelianGroup::parse("5");
  const GroupEndomorphism tau(g, {{3}});
  CHECK(weyl_norm_sample(TFArray::zeros(g), tau, 3.0, 1.0, 3.0, 2.0, 20, 1) == 0.0);
  Sampler rng(2);
  auto phi = sample_symbol(g, rng);
  const double base = weyl_norm_sample(phi, tau, 3.0, 1.0, 3.0, 2.0, 20, 1);
  CHECK(std::isfinite(base));
  CHECK(base > 0.0);
  for (auto& v : phi.values()) v *= 2.5;
  CHECK(weyl_norm_sample(phi, tau, 3.0, 1.0, 3.0, 2.0, 20, 1) == doctest::Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("ratios are invariant under a common time-frequency shift") {
  const auto inst = t1_instance("3", "4");
  const auto g = FiniteAbelianGroup::parse("8");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [f, h] = sample_functions(SampleKind::gaussian_random, g, seed);
    const double base = *theorem_ratio(inst, f, h);
    for (auto [x, xi] : {std::pair<Index, Index>{1, 0}, {3, 5}, {0, 7}})
      CHECK(*theorem_ratio(inst, tf_shift(f, x, xi), tf_shift(h, x, xi)) == doctest::Approx(base).epsilon(1e-12));
  }
}
