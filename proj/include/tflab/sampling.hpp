#pragma once

#include "tflab/tfa.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>

namespace tflab {

enum class SampleKind { gaussian_random, indicator, spike_plus_flat, tf_atom };

std::string to_string(SampleKind k);
SampleKind sample_kind_from_string(const std::string& s);
inline constexpr SampleKind kAllSampleKinds[] = {SampleKind::gaussian_random, SampleKind::indicator,
                                                 SampleKind::spike_plus_flat, SampleKind::tf_atom};

std::uint64_t splitmix64(std::uint64_t x);
/// Independent stream for one trial.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Platform-independent draws on top of mt19937_64 (the standard distributions
/// are implementation-defined).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform();                            // [0, 1)
  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);            // [0, n)
  double normal();
  cplx complex_normal();                       // E|z|^2 = 1
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

GroupFunction sample_function(SampleKind kind, const FiniteAbelianGroup& group, Sampler& rng);
std::pair<GroupFunction, GroupFunction> sample_functions(SampleKind kind, const FiniteAbelianGroup& group,
                                                         std::uint64_t seed);
TFArray sample_symbol(const FiniteAbelianGroup& group, Sampler& rng);

/// 64-bit FNV-1a over the bit patterns of the values, as 16 hex digits.
std::string fingerprint(const std::vector<cplx>& values);

}  // namespace tflab
