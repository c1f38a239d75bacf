#include "tflab/sampling.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <numbers>

namespace tflab {

std::string to_string(SampleKind k) {
  switch (k) {
    case SampleKind::gaussian_random: return "gaussian-random";
    case SampleKind::indicator: return "indicator";
    case SampleKind::spike_plus_flat: return "spike-plus-flat";
    case SampleKind::tf_atom: return "tf-atom";
  }
  return "gaussian-random";
}

SampleKind sample_kind_from_string(const std::string& s) {
  for (auto k : kAllSampleKinds)
    if (to_string(k) == s) return k;
  throw std::invalid_argument(fmt::format("unknown sampling kind '{}'", s));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return splitmix64(seed ^ trial); }

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Sampler::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Sampler::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

cplx Sampler::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) / std::numbers::sqrt2;
}

namespace {

GroupFunction random_indicator(const FiniteAbelianGroup& group, Sampler& rng) {
  auto f = GroupFunction::zeros(group);
  for (Index i = 0; i < group.order(); ++i)
    if (rng.uniform() < 0.5) f[i] = 1.0;
  f[rng.index(group.order())] = 1.0;
  return f;
}

}  // namespace

GroupFunction sample_function(SampleKind kind, const FiniteAbelianGroup& group, Sampler& rng) {
  const std::size_t n = group.order();
  switch (kind) {
    case SampleKind::gaussian_random: {
      auto f = GroupFunction::zeros(group);
      for (Index i = 0; i < n; ++i) f[i] = rng.complex_normal();
      return f;
    }
    case SampleKind::indicator: return random_indicator(group, rng);
    case SampleKind::spike_plus_flat: {
      const double flat = rng.uniform(0.05, 0.5);
      auto f = GroupFunction::constant(group, flat);
      f[rng.index(n)] += rng.uniform(1.0, static_cast<double>(n));
      return f;
    }
    case SampleKind::tf_atom: {
      const auto base = random_indicator(group, rng);
      const Index x = rng.index(n);
      const Index xi = rng.index(n);
      return tf_shift(base, x, xi);
    }
  }
  return GroupFunction::zeros(group);
}

std::pair<GroupFunction, GroupFunction> sample_functions(SampleKind kind, const FiniteAbelianGroup& group,
                                                         std::uint64_t seed) {
  Sampler rng(seed);
  auto f = sample_function(kind, group, rng);
  auto g = sample_function(kind, group, rng);
  return {std::move(f), std::move(g)};
}

TFArray sample_symbol(const FiniteAbelianGroup& group, Sampler& rng) {
  auto phi = TFArray::zeros(group);
  for (auto& v : phi.values()) v = rng.complex_normal();
  return phi;
}

std::string fingerprint(const std::vector<cplx>& values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](double d) {
    auto bits = std::bit_cast<std::uint64_t>(d == 0.0 ? 0.0 : d);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& v : values) {
    mix(v.real());
    mix(v.imag());
  }
  return fmt::format("{:016x}", h);
}

}  // namespace tflab
