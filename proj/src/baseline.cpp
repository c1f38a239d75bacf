#include "tflab/baseline.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace tflab {

namespace {

TheoremInstance make(TheoremId id, std::string group, IndexTuple idx, std::uint64_t seed,
                     std::optional<GroupEndomorphism::Matrix> tau = {}, std::uint64_t trials = 200) {
  TheoremInstance inst;
  inst.theorem = id;
  inst.group = std::move(group);
  inst.indices = std::move(idx);
  inst.tau = std::move(tau);
  inst.trials = trials;
  inst.seed = seed;
  return inst;
}

Exponent ex(const char* s) { return Exponent::parse(s); }

std::string fmt_opt(const char* name, const std::optional<Exponent>& e) {
  return e ? fmt::format(" {}={}", name, e->to_string()) : std::string();
}

}  // namespace

std::string instance_key(const TheoremInstance& inst) {
  const auto& i = inst.indices;
  std::string key = fmt::format("{} G={}", to_string(inst.theorem), FiniteAbelianGroup::parse(inst.group).spec());
  key += fmt_opt("p", i.p) + fmt_opt("p1", i.p1) + fmt_opt("p2", i.p2) + fmt_opt("q", i.q) + fmt_opt("s", i.s) +
         fmt_opt("u", i.u) + fmt_opt("v", i.v) + fmt_opt("w", i.w) + fmt_opt("r", i.r);
  if (inst.tau) {
    key += " tau=[";
    for (std::size_t r = 0; r < inst.tau->size(); ++r) {
      if (r) key += ";";
      for (std::size_t c = 0; c < (*inst.tau)[r].size(); ++c) key += fmt::format("{}{}", c ? "," : "", (*inst.tau)[r][c]);
    }
    key += "]";
  }
  if (inst.sampling) key += " sampling=" + to_string(*inst.sampling);
  key += fmt::format(" trials={} seed={}", inst.trials, inst.seed);
  return key;
}

std::vector<TheoremInstance> baseline_instances(std::uint64_t seed) {
  std::vector<TheoremInstance> out;
  out.push_back(make(TheoremId::t1prime, "6",
                     {.p1 = ex("2"), .p2 = ex("4"), .q = ex("4"), .u = ex("2"), .v = ex("2"), .w = ex("2")}, seed));
  out.push_back(make(TheoremId::t1, "8", {.p = ex("3"), .q = ex("4"), .u = ex("1"), .v = ex("1"), .w = ex("1")}, seed));
  out.push_back(
      make(TheoremId::t1, "4x6", {.p = ex("3/2"), .q = ex("3"), .u = ex("1"), .v = ex("2"), .w = ex("2")}, seed));
  out.push_back(make(TheoremId::t2, "6", {.q = ex("4")}, seed, std::nullopt, 500));
  out.push_back(make(TheoremId::t3i, "9",
                     {.p1 = ex("2"), .p2 = ex("4"), .q = ex("4"), .u = ex("2"), .v = ex("2"), .w = ex("2")}, seed,
                     GroupEndomorphism::Matrix{{2}}));
  out.push_back(make(TheoremId::t3ii, "5x5", {.p = ex("3"), .q = ex("4"), .u = ex("1"), .v = ex("1"), .w = ex("1")},
                     seed, GroupEndomorphism::Matrix{{2, 1}, {0, 2}}));
  out.push_back(make(TheoremId::t3iii, "12", {.p = ex("3"), .u = ex("1"), .v = ex("1"), .w = ex("1")}, seed));
  out.push_back(make(TheoremId::t3iv, "8", {.p = ex("4"), .u = ex("1"), .v = ex("2"), .w = ex("2")}, seed));
  return out;
}

double hausdorff_young_ratio(const FiniteAbelianGroup& group, double p, double q, std::uint64_t trials,
                             std::uint64_t seed) {
  double best = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Sampler rng(trial_seed(seed, t));
    const GroupFunction f = sample_function(kAllSampleKinds[t % 4], group, rng);
    const double den = lorentz_norm(f.measured(), p, q);
    if (!(den > 0.0)) continue;
    best = std::max(best, lorentz_norm(fourier(f).measured(Domain::dual), conjugate(p), q) / den);
  }
  return best;
}

double tensor_ratio(const FiniteAbelianGroup& group, double p, double u, double v, double w, std::uint64_t trials,
                    std::uint64_t seed) {
  const FiniteAbelianGroup dual = group.dual();
  double best = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Sampler rng(trial_seed(seed, t));
    const SampleKind kind = kAllSampleKinds[t % 4];
    const GroupFunction f = sample_function(kind, group, rng);
    const GroupFunction h = sample_function(kind, dual, rng);
    const auto fm = f.measured(Domain::group);
    const auto hm = h.measured(Domain::dual);
    const double den = lorentz_norm(fm, p, u) * lorentz_norm(hm, p, v);
    if (!(den > 0.0)) continue;
    best = std::max(best, lorentz_norm(tensor_product(fm, hm), p, w) / den);
  }
  return best;
}

double majorization_ratio(const FiniteAbelianGroup& group, SampleKind kind, std::uint64_t trials,
                          std::uint64_t seed) {
  double best = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Sampler rng(trial_seed(seed, t));
    const GroupFunction f = sample_function(kind, group, rng);
    const GroupFunction g = sample_function(kind, group, rng);
    best = std::max(best, majorization_check(f, g));
  }
  return best;
}

BaselineSet compute_baselines(std::uint64_t seed) {
  BaselineSet set;
  set.seed = seed;
  for (const auto& inst : baseline_instances(seed))
    set.entries.push_back({instance_key(inst), "max ratio of the randomized suite", verify_theorem(inst).max_ratio});

  const auto z12 = FiniteAbelianGroup::parse("12");
  set.entries.push_back({"majorization G=Z_12 sampling=indicator trials=100",
                         "sup_t (V_g f)*(t) / S(f*, g*)(t) over indicator pairs",
                         majorization_ratio(z12, SampleKind::indicator, 100, seed)});

  const auto z8 = FiniteAbelianGroup::parse("8");
  for (const char* p : {"4/3", "3/2"})
    for (const char* q : {"1", "2", "inf"}) {
      const double pd = Exponent::parse(p).to_double();
      const double qd = Exponent::parse(q).to_double();
      set.entries.push_back({fmt::format("hausdorff-young G=Z_8 p={} q={} trials=100", p, q),
                             "max ||f^||_{p',q} / ||f||_{p,q}", hausdorff_young_ratio(z8, pd, qd, 100, seed)});
    }

  const auto z6 = FiniteAbelianGroup::parse("6");
  for (auto [u, v, w] : {std::tuple{"1", "2", "2"}, std::tuple{"3/2", "3/2", "3"}}) {
    set.entries.push_back(
        {fmt::format("tensor G=Z_6 p=3 u={} v={} w={} trials=200", u, v, w),
         "max ||f (x) h||_{p,w} / (||f||_{p,u} ||h||_{p,v})",
         tensor_ratio(z6, 3.0, Exponent::parse(u).to_double(), Exponent::parse(v).to_double(),
                      Exponent::parse(w).to_double(), 200, seed)});
  }
  return set;
}

std::vector<std::string> compare_baselines(const BaselineSet& stored, const BaselineSet& computed, double rel_tol) {
  std::vector<std::string> problems;
  for (const auto& c : computed.entries) {
    const auto it = std::find_if(stored.entries.begin(), stored.entries.end(),
                                 [&](const BaselineEntry& s) { return s.name == c.name; });
    if (it == stored.entries.end()) {
      problems.push_back(fmt::format("{}: no stored baseline", c.name));
      continue;
    }
    if (!std::isfinite(c.value)) {
      problems.push_back(fmt::format("{}: non-finite value {}", c.name, c.value));
      continue;
    }
    const double diff = std::abs(c.value - it->value);
    if (!(diff <= rel_tol * std::max(1.0, std::abs(it->value))))
      problems.push_back(fmt::format("{}: computed {:.17g}, stored {:.17g}", c.name, c.value, it->value));
  }
  return problems;
}

std::optional<double> find_baseline(const BaselineSet& set, const TheoremInstance& instance) {
  const std::string key = instance_key(instance);
  for (const auto& e : set.entries)
    if (e.name == key) return e.value;
  return std::nullopt;
}

}  // namespace tflab
