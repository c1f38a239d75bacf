#pragma once

#include "tflab/verify.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tflab {

/// One fixed-seed empirical constant.
struct BaselineEntry {
  std::string name;
  std::string description;
  double value = 0.0;
  bool operator==(const BaselineEntry&) const = default;
};

struct BaselineSet {
  int version = 1;
  std::uint64_t seed = 42;
  std::vector<BaselineEntry> entries;
  bool operator==(const BaselineSet&) const = default;
};

/// Stable key of a theorem instance, used as the baseline name.
std::string instance_key(const TheoremInstance& instance);

/// The theorem instances of the regression grid.
std::vector<TheoremInstance> baseline_instances(std::uint64_t seed = 42);

/// Recomputes every entry of the grid: theorem suites, majorization on
/// indicators, Hausdorff-Young and tensor-product ratios.
BaselineSet compute_baselines(std::uint64_t seed = 42);

/// Returns one message per entry that is missing, non-finite or off by more
/// than rel_tol (relative to max(1, |stored|)).
std::vector<std::string> compare_baselines(const BaselineSet& stored, const BaselineSet& computed,
                                           double rel_tol = 1e-9);

std::optional<double> find_baseline(const BaselineSet& set, const TheoremInstance& instance);

/// max ||f^||_{p',q} / ||f||_{p,q} over sampled f.
double hausdorff_young_ratio(const FiniteAbelianGroup& group, double p, double q, std::uint64_t trials,
                             std::uint64_t seed);

/// max ||f (x) h||_{p,w} / (||f||_{p,u} ||h||_{p,v}) with f on G and h on the dual.
double tensor_ratio(const FiniteAbelianGroup& group, double p, double u, double v, double w, std::uint64_t trials,
                    std::uint64_t seed);

/// max majorization ratio over sampled pairs of the given kind.
double majorization_ratio(const FiniteAbelianGroup& group, SampleKind kind, std::uint64_t trials,
                          std::uint64_t seed);

}  // namespace tflab
