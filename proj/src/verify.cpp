#include "tflab/verify.hpp"

#include "tflab/quadrature.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>

namespace tflab {

namespace {

using Rational = Exponent::Rational;

class Checker {
 public:

  bool ok() const { return ok_; }
  const std::string& explanation() const { return why_; }

  void fail(std::string why) {
    if (ok_) {
      ok_ = false;
      why_ = std::move(why);
    }
  }

  const Exponent* get(const std::optional<Exponent>& e, const char* name) {
    if (!e) {
      fail(fmt::format("index {} is required", name));
      return nullptr;
    }
    return &*e;
  }

  // lo < x < hi or lo <= x <= hi, with inf allowed as a bound.
  void in_range(const Exponent* x, const char* name, Exponent lo, bool lo_closed, Exponent hi, bool hi_closed) {
    if (!x) return;
    const bool lo_ok = lo_closed ? lo <= *x : lo < *x;
    const bool hi_ok = hi_closed ? *x <= hi : *x < hi;
    if (!lo_ok || !hi_ok)
      fail(fmt::format("{} = {} must lie in {}{}, {}{}", name, x->to_string(), lo_closed ? "[" : "(", lo.to_string(),
                       hi.to_string(), hi_closed ? "]" : ")"));
  }

 private:
  bool ok_ = true;
  std::string why_;
};

const Exponent kOne{1};
const Exponent kTwo{2};
const Exponent kInfExp = Exponent::infinity();

void check_q_open(Checker& c, const Exponent* q) { c.in_range(q, "q", kTwo, false, kInfExp, false); }

void check_p_between_conjugates(Checker& c, const Exponent* p, const Exponent* q) {
  if (!p || !q || !c.ok()) return;
  const Exponent qc = q->conjugate();
  if (*p < qc || *q < *p) c.fail(fmt::format("p = {} must lie in [q', q] = [{}, {}]", p->to_string(), qc.to_string(),
                                             q->to_string()));
  else if (*p == kTwo)
    c.fail("p = 2 is excluded (p != 2)");
}

void check_holder_pair(Checker& c, const Exponent* p1, const Exponent* p2, const Exponent* q) {
  if (!p1 || !p2 || !q || !c.ok()) return;
  if (p1->reciprocal() + p2->reciprocal() != Rational(1) - q->reciprocal())
    c.fail(fmt::format("1/p1 + 1/p2 = {} must equal 1 - 1/q = {}",
                       Exponent::from_reciprocal(p1->reciprocal() + p2->reciprocal()).to_string(),
                       Exponent::from_reciprocal(Rational(1) - q->reciprocal()).to_string()));
}

void check_uvw(Checker& c, const Exponent* u, const Exponent* v, const Exponent* w, Rational shift) {
  if (!u || !v || !w || !c.ok()) return;
  const Rational lhs = u->reciprocal() + v->reciprocal();
  const Rational rhs = shift + w->reciprocal();
  if (lhs < rhs)
    c.fail(fmt::format("1/u + 1/v >= {}1/w fails: {} < {}", shift == Rational(0) ? "" : "1 + ", boost::rational_cast<double>(lhs),
                       boost::rational_cast<double>(rhs)));
}

void check_tau(Checker& c, const TheoremInstance& inst) {
  if (!c.ok()) return;
  if (!inst.tau) {
    c.fail("this theorem needs an endomorphism tau");
    return;
  }
  try {
    const auto g = FiniteAbelianGroup::parse(inst.group);
    const GroupEndomorphism tau(g, *inst.tau);
    if (!tau.is_automorphism()) c.fail("tau must be an automorphism of G");
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
}

struct Exps {
  double p = 0, p1 = 0, p2 = 0, q = 0, u = 0, v = 0, w = 0;
};

double d(const std::optional<Exponent>& e) { return e ? e->to_double() : 0.0; }

Exps exps(const IndexTuple& idx) {
  return {d(idx.p), d(idx.p1), d(idx.p2), d(idx.q), d(idx.u), d(idx.v), d(idx.w)};
}

struct Context {
  FiniteAbelianGroup group;
  Exps e;
  std::optional<GroupEndomorphism> tau;
};

Context make_context(const TheoremInstance& inst) {
  Context ctx{FiniteAbelianGroup::parse(inst.group), exps(inst.indices), std::nullopt};
  switch (inst.theorem) {
    case TheoremId::t3i:
    case TheoremId::t3ii:
    case TheoremId::t4dual: ctx.tau = GroupEndomorphism(ctx.group, *inst.tau); break;
    case TheoremId::t3iii: ctx.tau = GroupEndomorphism::zero(ctx.group); break;
    case TheoremId::t3iv: ctx.tau = GroupEndomorphism::identity(ctx.group); break;
    default: break;
  }
  return ctx;
}

double lnorm(const GroupFunction& f, double p, double q) { return lorentz_norm(f.measured(), p, q); }
double lnorm(const TFArray& a, double p, double q) { return lorentz_norm(a.measured(), p, q); }

struct TrialOutcome {
  std::optional<double> ratio;
  std::string f_print;
  std::string g_print;
  std::vector<std::string> violations;
  double deviation = 0.0;
  std::string error;
};

SampleKind kind_for(const TheoremInstance& inst, std::uint64_t trial) {
  return inst.sampling ? *inst.sampling : kAllSampleKinds[trial % 4];
}

std::optional<double> safe_ratio(double num, double den) {
  if (!(den > 0.0)) return std::nullopt;
  return num / den;
}

// Ratio plus, for the Rihaczek cases, the deviation between the direct and
// the closed-form evaluation paths.
std::pair<std::optional<double>, double> ratio_with_paths(const TheoremInstance& inst, const Context& ctx,
                                                          const GroupFunction& f, const GroupFunction& g) {
  const Exps& e = ctx.e;
  switch (inst.theorem) {
    case TheoremId::t1prime:
      return {safe_ratio(lnorm(stft(f, g), e.q, e.w), lnorm(f, e.p1, e.u) * lnorm(g, e.p2, e.v)), 0.0};
    case TheoremId::t1:
      return {safe_ratio(lnorm(stft(f, g), e.q, e.w), lnorm(f, conjugate(e.p), e.u) * lnorm(g, e.p, e.v)), 0.0};
    case TheoremId::t2: return {safe_ratio(lnorm(stft(f, g), e.q, 1.0), lnorm(f, 2.0, 1.0) * lnorm(g, 2.0, 1.0)), 0.0};
    case TheoremId::t3i:
      return {safe_ratio(lnorm(wigner_tau(f, g, *ctx.tau), e.q, e.w), lnorm(f, e.p1, e.u) * lnorm(g, e.p2, e.v)), 0.0};
    case TheoremId::t3ii:
      return {safe_ratio(lnorm(wigner_tau(f, g, *ctx.tau), e.q, e.w),
                         lnorm(f, conjugate(e.p), e.u) * lnorm(g, e.p, e.v)),
              0.0};
    case TheoremId::t3iii:
    case TheoremId::t3iv: {
      const bool plain = inst.theorem == TheoremId::t3iii;
      const TFArray direct = wigner_tau(f, g, *ctx.tau);
      const TFArray closed = plain ? rihaczek(f, g) : conjugate_rihaczek(f, g);
      const double den = plain ? lnorm(f, e.p, e.u) * lnorm(g, conjugate(e.p), e.v)
                               : lnorm(f, conjugate(e.p), e.u) * lnorm(g, e.p, e.v);
      const auto r_direct = safe_ratio(lnorm(direct, e.p, e.w), den);
      const auto r_closed = safe_ratio(lnorm(closed, e.p, e.w), den);
      double dev = max_abs_difference(direct, closed);
      if (r_direct && r_closed) dev = std::max(dev, std::abs(*r_direct - *r_closed));
      return {r_direct, dev};
    }
    default: throw VerifyError(fmt::format("{} has no two-function ratio", to_string(inst.theorem)));
  }
}

TrialOutcome run_trial(const TheoremInstance& inst, const Context& ctx, std::uint64_t trial) {
  TrialOutcome out;
  Sampler rng(trial_seed(inst.seed, trial));
  const SampleKind kind = kind_for(inst, trial);
  const Exps& e = ctx.e;
  if (inst.theorem == TheoremId::t4dual) {
    const TFArray phi = sample_symbol(ctx.group, rng);
    const GroupFunction f = sample_function(kind, ctx.group, rng);
    const GroupFunction g = sample_function(kind, ctx.group, rng);
    out.f_print = fingerprint(f.values());
    out.g_print = fingerprint(g.values());
    const OperatorMatrix op = weyl_operator(phi, *ctx.tau);
    const GroupFunction af = op.apply(f);
    const cplx lhs = inner_product(af, g);
    const cplx rhs = inner_product(phi, wigner_tau(g, f, *ctx.tau));
    const double scale = phi.lp_norm(2.0) * f.lp_norm(2.0) * g.lp_norm(2.0);
    out.deviation = scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
    if (out.deviation > inst.tolerance)
      out.violations.push_back(fmt::format("trial {}: duality deviation {:.3e}", trial, out.deviation));
    out.ratio = safe_ratio(lnorm(af, e.p, conjugate(e.u)),
                           lnorm(phi, conjugate(e.q), conjugate(e.w)) * lnorm(f, e.p, e.v));
    return out;
  }
  const GroupFunction f = sample_function(kind, ctx.group, rng);
  const GroupFunction g = sample_function(kind, ctx.group, rng);
  out.f_print = fingerprint(f.values());
  out.g_print = fingerprint(g.values());
  if (inst.theorem == TheoremId::t5) {
    const std::size_t cells = ctx.group.order() * ctx.group.order();
    std::vector<bool> omega(cells, false);
    for (std::size_t c = 0; c < cells; ++c) omega[c] = rng.uniform() < 0.25;
    omega[rng.index(cells)] = true;
    const TFArray v = stft(f, g);
    double captured = 0.0;
    for (std::size_t c = 0; c < cells; ++c)
      if (omega[c]) captured += std::norm(v.values()[c]);
    if (captured == 0.0) return out;
    const auto res = uncertainty_check(f, g, omega, e.q, e.p, e.u, e.v, std::nullopt, inst.tolerance);
    if (!res.holds)
      out.violations.push_back(
          fmt::format("trial {}: uncertainty chain sqrt(eps) = {:.17g} > {:.17g}", trial, res.chain_lhs, res.chain_rhs));
    out.ratio = res.ratio;
    return out;
  }
  const auto [ratio, dev] = ratio_with_paths(inst, ctx, f, g);
  out.ratio = ratio;
  out.deviation = dev;
  if (dev > 1e-10 * std::max(1.0, ratio.value_or(1.0)))
    out.violations.push_back(fmt::format("trial {}: closed-form path deviates by {:.3e}", trial, dev));
  return out;
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::t1prime: return "t1prime";
    case TheoremId::t1: return "t1";
    case TheoremId::t2: return "t2";
    case TheoremId::t3i: return "t3i";
    case TheoremId::t3ii: return "t3ii";
    case TheoremId::t3iii: return "t3iii";
    case TheoremId::t3iv: return "t3iv";
    case TheoremId::t4dual: return "t4dual";
    case TheoremId::t5: return "t5";
  }
  return "t2";
}

TheoremId theorem_from_string(const std::string& s) {
  for (auto id : {TheoremId::t1prime, TheoremId::t1, TheoremId::t2, TheoremId::t3i, TheoremId::t3ii, TheoremId::t3iii,
                  TheoremId::t3iv, TheoremId::t4dual, TheoremId::t5})
    if (to_string(id) == s) return id;
  if (s == "t1'") return TheoremId::t1prime;
  throw VerifyError(fmt::format("unknown theorem '{}'", s));
}

Admissibility check_admissibility(const TheoremInstance& inst) {
  const IndexTuple& idx = inst.indices;
  Checker c;
  try {
    (void)FiniteAbelianGroup::parse(inst.group);
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
  switch (inst.theorem) {
    case TheoremId::t1prime:
    case TheoremId::t3i: {
      const auto* q = c.get(idx.q, "q");
      const auto* p1 = c.get(idx.p1, "p1");
      const auto* p2 = c.get(idx.p2, "p2");
      const auto* u = c.get(idx.u, "u");
      const auto* v = c.get(idx.v, "v");
      const auto* w = c.get(idx.w, "w");
      check_q_open(c, q);
      c.in_range(p1, "p1", kOne, false, kInfExp, false);
      c.in_range(p2, "p2", kOne, false, kInfExp, false);
      for (auto [x, n] : {std::pair{u, "u"}, {v, "v"}, {w, "w"}}) c.in_range(x, n, kOne, true, kInfExp, true);
      check_holder_pair(c, p1, p2, q);
      check_uvw(c, u, v, w, Rational(0));
      if (inst.theorem == TheoremId::t3i) check_tau(c, inst);
      break;
    }
    case TheoremId::t1:
    case TheoremId::t3ii: {
      const auto* q = c.get(idx.q, "q");
      const auto* p = c.get(idx.p, "p");
      const auto* u = c.get(idx.u, "u");
      const auto* v = c.get(idx.v, "v");
      const auto* w = c.get(idx.w, "w");
      check_q_open(c, q);
      for (auto [x, n] : {std::pair{u, "u"}, {v, "v"}, {w, "w"}}) c.in_range(x, n, kOne, true, kInfExp, false);
      check_p_between_conjugates(c, p, q);
      check_uvw(c, u, v, w, Rational(1));
      if (inst.theorem == TheoremId::t3ii) check_tau(c, inst);
      break;
    }
    case TheoremId::t2: check_q_open(c, c.get(idx.q, "q")); break;
    case TheoremId::t3iii:
    case TheoremId::t3iv: {
      const auto* p = c.get(idx.p, "p");
      const auto* u = c.get(idx.u, "u");
      const auto* v = c.get(idx.v, "v");
      const auto* w = c.get(idx.w, "w");
      c.in_range(p, "p", kTwo, false, kInfExp, false);
      for (auto [x, n] : {std::pair{u, "u"}, {v, "v"}, {w, "w"}}) c.in_range(x, n, kOne, true, kInfExp, true);
      check_uvw(c, u, v, w, Rational(1));
      break;
    }
    case TheoremId::t4dual: {
      const auto* q = c.get(idx.q, "q");
      const auto* p = c.get(idx.p, "p");
      const auto* u = c.get(idx.u, "u");
      const auto* v = c.get(idx.v, "v");
      const auto* w = c.get(idx.w, "w");
      c.in_range(w, "w", kOne, false, kInfExp, false);
      check_q_open(c, q);
      c.in_range(u, "u", kOne, false, kInfExp, false);
      c.in_range(v, "v", kOne, true, kInfExp, false);
      check_p_between_conjugates(c, p, q);
      check_uvw(c, u, v, w, Rational(1));
      check_tau(c, inst);
      break;
    }
    case TheoremId::t5: {
      const auto* q = c.get(idx.q, "q");
      const auto* p = c.get(idx.p, "p");
      const auto* u = c.get(idx.u, "u");
      const auto* v = c.get(idx.v, "v");
      check_q_open(c, q);
      check_p_between_conjugates(c, p, q);
      c.in_range(u, "u", kOne, true, kInfExp, false);
      c.in_range(v, "v", kOne, true, kInfExp, false);
      if (c.ok() && !(u->reciprocal() + v->reciprocal() > Rational(1))) c.fail("1/u + 1/v > 1 fails");
      break;
    }
  }
  if (inst.trials == 0 && c.ok()) c.fail("trial count must be positive");
  return {c.ok(), c.ok() ? "admissible" : c.explanation()};
}

std::pair<GroupFunction, GroupFunction> trial_pair(const TheoremInstance& instance, std::uint64_t trial) {
  const auto group = FiniteAbelianGroup::parse(instance.group);
  Sampler rng(trial_seed(instance.seed, trial));
  if (instance.theorem == TheoremId::t4dual) (void)sample_symbol(group, rng);
  const SampleKind kind = kind_for(instance, trial);
  auto f = sample_function(kind, group, rng);
  auto g = sample_function(kind, group, rng);
  return {std::move(f), std::move(g)};
}

std::optional<double> theorem_ratio(const TheoremInstance& instance, const GroupFunction& f, const GroupFunction& g) {
  const Context ctx = make_context(instance);
  return ratio_with_paths(instance, ctx, f, g).first;
}

VerificationReport verify_theorem(const TheoremInstance& instance, bool record_runtime) {
  const auto adm = check_admissibility(instance);
  if (!adm.ok) throw VerifyError(fmt::format("inadmissible {} instance: {}", to_string(instance.theorem), adm.explanation));
  const auto start = std::chrono::steady_clock::now();
  const Context ctx = make_context(instance);
  const auto n = static_cast<std::ptrdiff_t>(instance.trials);
  std::vector<TrialOutcome> outcomes(instance.trials);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    try {
      outcomes[static_cast<std::size_t>(t)] = run_trial(instance, ctx, static_cast<std::uint64_t>(t));
    } catch (const std::exception& e) {
      outcomes[static_cast<std::size_t>(t)].error = e.what();
    }
  }
  VerificationReport rep;
  rep.instance = instance;
  rep.trial_count = instance.trials;
  double sum = 0.0;
  double max_dev = 0.0;
  for (std::uint64_t t = 0; t < instance.trials; ++t) {
    const auto& o = outcomes[t];
    if (!o.error.empty()) throw VerifyError(fmt::format("trial {} failed: {}", t, o.error));
    for (const auto& v : o.violations) rep.violations.push_back(v);
    max_dev = std::max(max_dev, o.deviation);
    if (!o.ratio) {
      ++rep.skipped;
      continue;
    }
    const double r = *o.ratio;
    if (!std::isfinite(r)) rep.violations.push_back(fmt::format("trial {}: non-finite ratio", t));
    rep.trials.push_back({t, r, o.f_print, o.g_print});
    rep.max_ratio = std::max(rep.max_ratio, r);
    sum += r;
  }
  if (!rep.trials.empty()) rep.mean_ratio = sum / static_cast<double>(rep.trials.size());
  switch (instance.theorem) {
    case TheoremId::t3i:
    case TheoremId::t3ii:
      rep.notes.push_back(
          "the modulus hypothesis Delta_tau in (0,1) cannot hold on a finite group, where every automorphism has "
          "modulus 1; ratios are sampled for tau in Aut(G)");
      break;
    case TheoremId::t3iii:
    case TheoremId::t3iv:
      rep.notes.push_back(fmt::format("max deviation between direct and closed-form evaluation: {:.3e}", max_dev));
      break;
    case TheoremId::t4dual:
      rep.notes.push_back(
          "the nonatomic hypothesis fails for counting measure; only the defining duality and sampled operator-norm "
          "ratios are checked");
      rep.notes.push_back(fmt::format("max relative duality deviation: {:.3e}", max_dev));
      break;
    case TheoremId::t5:
      rep.notes.push_back("ratio = eps^{s/2} / (measure(Omega) ||f||_{p',u} ||g||_{p,v}); the bound is 1/C");
      rep.notes.push_back(
          "the bound is not invariant under f -> lambda f, since eps scales by lambda^2 and the denominator by lambda; "
          "ratios depend on the normalization of the sampled pair");
      break;
    default: break;
  }
  if (record_runtime)
    rep.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

ExtremizerResult extremizer_search(const TheoremInstance& instance, std::uint64_t budget, int restarts) {
  if (instance.theorem == TheoremId::t4dual || instance.theorem == TheoremId::t5)
    throw VerifyError("extremizer search supports the two-function ratios t1prime, t1, t2 and t3*");
  if (restarts < 1) throw VerifyError("extremizer needs at least one restart");
  const auto suite = verify_theorem(instance);
  if (suite.trials.empty()) throw VerifyError("randomized suite produced no usable trial");
  const auto best_trial = std::max_element(suite.trials.begin(), suite.trials.end(),
                                           [](const TrialRecord& a, const TrialRecord& b) { return a.ratio < b.ratio; });
  auto [bf, bg] = trial_pair(instance, best_trial->trial);
  ExtremizerResult best{best_trial->ratio, bf, bg, 0};
  if (budget == 0) return best;

  const Context ctx = make_context(instance);
  const std::size_t n = ctx.group.order();
  auto evaluate = [&](const GroupFunction& f, const GroupFunction& g) -> double {
    const auto r = ratio_with_paths(instance, ctx, f, g).first;
    return r && std::isfinite(*r) ? *r : -1.0;
  };
  Sampler rng(splitmix64(instance.seed ^ 0x6a09e667f3bcc909ULL));
  std::uint64_t used = 0;
  for (int restart = 0; restart < restarts && used < budget; ++restart) {
    const std::uint64_t share = budget / static_cast<std::uint64_t>(restarts) +
                                (static_cast<std::uint64_t>(restart) < budget % static_cast<std::uint64_t>(restarts));
    GroupFunction f = restart == 0 ? bf : sample_function(SampleKind::gaussian_random, ctx.group, rng);
    GroupFunction g = restart == 0 ? bg : sample_function(SampleKind::gaussian_random, ctx.group, rng);
    double current = evaluate(f, g);
    double scale = 0.0;
    for (Index i = 0; i < n; ++i) scale = std::max({scale, std::abs(f[i]), std::abs(g[i])});
    double step = 0.5 * (scale > 0.0 ? scale : 1.0);
    for (std::uint64_t k = 0; k < share && used < budget; ++k, ++used) {
      const std::size_t coord = rng.index(4 * n);
      const double delta = rng.uniform() < 0.5 ? -step : step;
      GroupFunction& target = coord < 2 * n ? f : g;
      const Index at = (coord % (2 * n)) / 2;
      const bool imag = coord % 2 == 1;
      const cplx old = target[at];
      target[at] = imag ? old + cplx(0.0, delta) : old + cplx(delta, 0.0);
      const double candidate = evaluate(f, g);
      if (candidate > current) {
        current = candidate;
      } else {
        target[at] = old;
        step *= 0.9;
      }
    }
    if (current > best.ratio) {
      best.ratio = current;
      best.f = f;
      best.g = g;
    }
  }
  best.evaluations = used;
  return best;
}

double sup_weighted_double_star(const StepFunction& h, double r) {
  const double e = (std::isinf(r) ? 0.0 : 1.0 / r) - 1.0;
  const auto& T = h.breaks();
  const auto& v = h.values();
  double best = 0.0;
  for (std::size_t j = 0; j <= v.size(); ++j) {
    const double lo = T[std::min(j, v.size())];
    const double hi = j < v.size() ? T[j + 1] : kInf;
    const double b = j < v.size() ? v[j] : 0.0;
    const double a = h.running_integral(lo) - b * lo;
    if (a == 0.0 && b == 0.0) continue;
    best = std::max(best, sup_power_linear(e, a, b, lo, hi));
  }
  return best;
}

RestrictedWeakType restricted_weak_type_check(const FiniteAbelianGroup& group, const std::vector<Index>& U,
                                              const std::vector<Index>& V, double p, double q, double r,
                                              double rel_tol) {
  if (U.empty() || V.empty()) throw VerifyError("restricted weak type needs nonempty sets");
  auto indicator = [&](const std::vector<Index>& set) {
    auto f = GroupFunction::zeros(group);
    for (Index i : set) f.values().at(i) = 1.0;
    return f;
  };
  const auto fu = indicator(U);
  const auto fv = indicator(V);
  auto measure = [&](const GroupFunction& f) {
    double m = 0.0;
    for (const auto& x : f.values()) m += std::abs(x) * group.haar_weight();
    return m;
  };
  RestrictedWeakType res;
  res.lhs = sup_weighted_double_star(rearrangement(stft(fu, fv).measured()), r);
  auto power = [](double m, double e) { return std::isinf(e) ? 1.0 : std::pow(m, 1.0 / e); };
  res.rhs = power(measure(fu), p) * power(measure(fv), q);
  res.holds = res.lhs <= res.rhs * (1.0 + rel_tol);
  return res;
}

double majorization_check(const GroupFunction& f, const GroupFunction& g, const EtaSet& eta) {
  const StepFunction vs = rearrangement(stft(f, g).measured());
  if (vs.is_zero()) return 0.0;
  const StepFunction fs = rearrangement(f.measured());
  const StepFunction gs = rearrangement(g.measured());
  double best = 0.0;
  const auto& T = vs.breaks();
  for (std::size_t j = 0; j < vs.pieces(); ++j) {
    const double v = vs.values()[j];
    best = std::max(best, v / calderon_apply(eta, fs, gs, T[j + 1]));
    const double lo = j == 0 ? T[1] * 1e-3 : T[j];
    for (int k = 1; k <= 4; ++k) {
      const double t = lo * std::pow(T[j + 1] / lo, k / 5.0);
      best = std::max(best, vs(t) / calderon_apply(eta, fs, gs, t));
    }
  }
  return best;
}

UncertaintyResult uncertainty_check(const GroupFunction& f, const GroupFunction& g, const std::vector<bool>& omega,
                                    double q, double p, double u, double v, std::optional<double> epsilon,
                                    double rel_tol) {
  if (!(q > 2.0) || std::isinf(q)) throw VerifyError("uncertainty chain needs q in (2, inf)");
  if (!(p >= conjugate(q) && p <= q) || p == 2.0) throw VerifyError("uncertainty chain needs p in [q', q], p != 2");
  if (!(u >= 1.0) || !(v >= 1.0) || std::isinf(u) || std::isinf(v)) throw VerifyError("u, v must lie in [1, inf)");
  if (!(1.0 / u + 1.0 / v > 1.0)) throw VerifyError("uncertainty chain needs 1/u + 1/v > 1");
  const std::size_t n = f.group().order();
  if (omega.size() != n * n) throw VerifyError("Omega mask has the wrong size");
  const TFArray vgf = stft(f, g);
  const double cell = vgf.cell_weight();
  UncertaintyResult res;
  double captured = 0.0;
  std::size_t count = 0;
  for (std::size_t c = 0; c < omega.size(); ++c)
    if (omega[c]) {
      captured += std::norm(vgf.values()[c]) * cell;
      ++count;
    }
  if (count == 0) throw VerifyError("Omega must be nonempty");
  const double ceiling = std::pow(f.lp_norm(2.0) * g.lp_norm(2.0), 2);
  if (epsilon) {
    if (*epsilon > ceiling * (1.0 + 1e-12))
      throw VerifyError(fmt::format("epsilon = {} exceeds ||f||^2 ||g||^2 = {}: hypothesis unsatisfiable", *epsilon, ceiling));
    if (captured < *epsilon * (1.0 - 1e-12))
      throw VerifyError(fmt::format("Omega captures {} < epsilon = {}", captured, *epsilon));
  }
  res.epsilon = epsilon.value_or(captured);
  if (!(res.epsilon > 0.0)) throw VerifyError("epsilon = 0 makes the uncertainty bound vacuous");
  const double inv_s = 0.5 - 1.0 / q;
  const double inv_w = 1.0 / u + 1.0 / v - 1.0;
  const double inv_r = std::clamp(0.5 - inv_w, 0.0, 0.5);
  res.s = 1.0 / inv_s;
  res.w = 1.0 / inv_w;
  res.r = inv_r == 0.0 ? kInf : 1.0 / inv_r;
  res.measure = static_cast<double>(count) * cell;
  const double v_norm = lorentz_norm(vgf.measured(), q, res.w);
  const double omega_norm = lorentz_norm(StepFunction::indicator(res.measure), res.s, res.r);
  res.chain_lhs = std::sqrt(res.epsilon);
  res.chain_rhs = 2.0 * v_norm * omega_norm;
  res.holds = res.chain_lhs <= res.chain_rhs * (1.0 + rel_tol);
  const double shape = std::isinf(res.r) ? 1.0 : std::pow(res.s / res.r, 1.0 / res.r);
  res.final_bound = std::pow(res.chain_lhs / (2.0 * v_norm * shape), res.s);
  const double den = res.measure * lorentz_norm(f.measured(), conjugate(p), u) * lorentz_norm(g.measured(), p, v);
  res.ratio = den > 0.0 ? std::pow(res.epsilon, res.s / 2.0) / den : 0.0;
  return res;
}

double weyl_norm_sample(const TFArray& phi, const GroupEndomorphism& tau, double p_in, double v, double p_out,
                        double u_out, std::uint64_t trials, std::uint64_t seed) {
  const OperatorMatrix op = weyl_operator(phi, tau);
  double best = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Sampler rng(trial_seed(seed, t));
    const GroupFunction f = sample_function(kAllSampleKinds[t % 4], phi.group(), rng);
    const double den = lnorm(f, p_in, v);
    if (!(den > 0.0)) continue;
    best = std::max(best, lnorm(op.apply(f), p_out, u_out) / den);
  }
  return best;
}

GroupEndomorphism make_endomorphism(const FiniteAbelianGroup& g, const std::optional<GroupEndomorphism::Matrix>& m,
                                    std::int64_t default_scalar) {
  return m ? GroupEndomorphism(g, *m) : GroupEndomorphism::scalar(g, default_scalar);
}

}  // namespace tflab
