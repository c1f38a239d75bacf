#pragma once

#include "tflab/calderon.hpp"
#include "tflab/exponent.hpp"
#include "tflab/sampling.hpp"
#include "tflab/tfa.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tflab {

class VerifyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TheoremId { t1prime, t1, t2, t3i, t3ii, t3iii, t3iv, t4dual, t5 };

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);

struct IndexTuple {
  std::optional<Exponent> p{}, p1{}, p2{}, q{}, s{}, u{}, v{}, w{}, r{};
  bool operator==(const IndexTuple&) const = default;
};

struct TheoremInstance {
  TheoremId theorem = TheoremId::t2;
  std::string group = "6";
  IndexTuple indices;
  std::optional<GroupEndomorphism::Matrix> tau;
  /// Empty means cycling through every kind, one per trial.
  std::optional<SampleKind> sampling;
  std::uint64_t trials = 200;
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  bool operator==(const TheoremInstance&) const = default;
};

struct Admissibility {
  bool ok = true;
  std::string explanation;
};

Admissibility check_admissibility(const TheoremInstance& instance);

struct TrialRecord {
  std::uint64_t trial = 0;
  double ratio = 0.0;
  std::string f;
  std::string g;
  bool operator==(const TrialRecord&) const = default;
};

struct VerificationReport {
  TheoremInstance instance;
  std::optional<double> baseline;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::vector<std::string> violations;
  std::vector<TrialRecord> trials;
  std::uint64_t trial_count = 0;
  std::uint64_t skipped = 0;
  double runtime_ms = 0.0;
  std::vector<std::string> notes;
  bool operator==(const VerificationReport&) const = default;
};

/// Runs the randomized suite. Trials are independent and run in parallel;
/// aggregation happens in trial order, so the report does not depend on the
/// thread count. Wall time is only recorded on request, which keeps reports
/// byte-identical across runs by default.
VerificationReport verify_theorem(const TheoremInstance& instance, bool record_runtime = false);

/// The (f, g) pair drawn for one trial.
std::pair<GroupFunction, GroupFunction> trial_pair(const TheoremInstance& instance, std::uint64_t trial);

/// Ratio of one trial, or nullopt when a denominator vanishes.
std::optional<double> theorem_ratio(const TheoremInstance& instance, const GroupFunction& f, const GroupFunction& g);

struct ExtremizerResult {
  double ratio = 0.0;
  GroupFunction f;
  GroupFunction g;
  std::uint64_t evaluations = 0;
};

/// Random-restart coordinate hill climbing over the real and imaginary parts
/// of f and g. Restart 0 begins at the best pair of the randomized suite.
ExtremizerResult extremizer_search(const TheoremInstance& instance, std::uint64_t budget, int restarts = 20);

struct RestrictedWeakType {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// sup_t t^{1/r} F**(t) for F = |V_{1_V} 1_U| against mu(U)^{1/p} mu(V)^{1/q};
/// constant 1 for (2,2;2), (1,inf;inf) and (inf,1;inf).
RestrictedWeakType restricted_weak_type_check(const FiniteAbelianGroup& group, const std::vector<Index>& U,
                                              const std::vector<Index>& V, double p, double q, double r,
                                              double rel_tol = 1e-9);

/// sup_t t^{1/r} h**(t) for a non-increasing step function h.
double sup_weighted_double_star(const StepFunction& h, double r);

/// sup_t (V_g f)*(t) / S_eta(f*, g*)(t), evaluated at the breakpoints of (V_g f)*
/// (where the sup over each piece is approached) plus a log-spaced fill.
double majorization_check(const GroupFunction& f, const GroupFunction& g, const EtaSet& eta = stft_endpoints());

struct UncertaintyResult {
  double epsilon = 0.0;
  double chain_lhs = 0.0;    // sqrt(eps)
  double chain_rhs = 0.0;    // 2 ||V_g f||_{q,w} ||1_Omega||_{s,r}
  double final_bound = 0.0;  // implied lower bound on the measure of Omega
  double measure = 0.0;
  double ratio = 0.0;        // eps^{s/2} / (measure ||f||_{p',u} ||g||_{p,v})
  double s = 0.0, w = 0.0, r = 0.0;
  bool holds = true;
};

/// Omega is a mask over G x G^ (x-major). With `epsilon` set, the capture
/// hypothesis is checked and that value enters the chain.
UncertaintyResult uncertainty_check(const GroupFunction& f, const GroupFunction& g, const std::vector<bool>& omega,
                                    double q, double p, double u, double v, std::optional<double> epsilon = {},
                                    double rel_tol = 1e-9);

/// max over sampled f of ||W^phi f||_{p_out, u_out} / ||f||_{p_in, v}.
double weyl_norm_sample(const TFArray& phi, const GroupEndomorphism& tau, double p_in, double v, double p_out,
                        double u_out, std::uint64_t trials, std::uint64_t seed);

/// Parses a group spec and a matrix into an endomorphism of that group.
GroupEndomorphism make_endomorphism(const FiniteAbelianGroup& g, const std::optional<GroupEndomorphism::Matrix>& m,
                                    std::int64_t default_scalar);

}  // namespace tflab
