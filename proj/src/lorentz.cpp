#include "tflab/lorentz.hpp"

#include "tflab/quadrature.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tflab {

namespace {

void check_exponents(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw LorentzError(fmt::format("Lorentz exponents must be positive, got ({}, {})", p, q));
}

}  // namespace

std::string to_string(Domain d) {
  switch (d) {
    case Domain::group: return "G";
    case Domain::dual: return "dual";
    case Domain::phase_space: return "GxdualG";
  }
  return "G";
}

Domain domain_from_string(const std::string& s) {
  if (s == "G" || s == "group") return Domain::group;
  if (s == "dual" || s == "Ghat") return Domain::dual;
  if (s == "GxdualG" || s == "phase_space" || s == "GxGhat") return Domain::phase_space;
  throw LorentzError(fmt::format("unknown domain '{}'", s));
}

MeasuredFunction::MeasuredFunction(Domain domain, std::vector<Atom> atoms)
    : domain_(domain), atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw LorentzError(fmt::format("atom {} has non-positive weight {}", a.id, a.weight));
    if (!std::isfinite(a.value.real()) || !std::isfinite(a.value.imag()))
      throw LorentzError(fmt::format("atom {} has a non-finite value", a.id));
  }
}

MeasuredFunction MeasuredFunction::uniform(Domain domain, const std::vector<cplx>& values, double weight) {
  std::vector<Atom> atoms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    atoms[i] = {static_cast<std::int64_t>(i), weight, values[i]};
  return MeasuredFunction(domain, std::move(atoms));
}

double MeasuredFunction::total_measure() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

bool MeasuredFunction::is_zero() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.value == cplx{}; });
}

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (breaks_.empty() || breaks_.front() != 0.0) throw LorentzError("step function breaks must start at 0");
  if (breaks_.size() != values_.size() + 1)
    throw LorentzError(fmt::format("{} breaks do not fit {} values", breaks_.size(), values_.size()));
  for (std::size_t j = 1; j < breaks_.size(); ++j)
    if (!(breaks_[j] > breaks_[j - 1]) || !std::isfinite(breaks_[j]))
      throw LorentzError("step function breaks must be finite and strictly increasing");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!(values_[j] >= 0.0) || !std::isfinite(values_[j]))
      throw LorentzError("step function values must be finite and non-negative");
    if (j > 0 && values_[j] > values_[j - 1]) monotone_ = false;
  }
}

StepFunction StepFunction::indicator(double length, double height) {
  return StepFunction({0.0, length}, {height});
}

bool StepFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double StepFunction::operator()(double t) const {
  if (t < 0.0) return 0.0;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const auto j = static_cast<std::size_t>(it - breaks_.begin());
  return j >= breaks_.size() ? 0.0 : values_[j - 1];
}

double StepFunction::running_integral(double t) const {
  double s = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (t <= breaks_[j]) break;
    s += values_[j] * (std::min(t, breaks_[j + 1]) - breaks_[j]);
  }
  return s;
}

double StepFunction::level_measure(double alpha) const {
  double m = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j)
    if (values_[j] > alpha) m += breaks_[j + 1] - breaks_[j];
  return m;
}

double distribution(const MeasuredFunction& f, double alpha) {
  if (alpha < 0.0) throw LorentzError("distribution level must be non-negative");
  double m = 0.0;
  for (const auto& a : f.atoms())
    if (std::abs(a.value) > alpha) m += a.weight;
  return m;
}

StepFunction rearrangement(const MeasuredFunction& f) {
  struct Entry {
    double modulus;
    std::int64_t id;
    double weight;
  };
  std::vector<Entry> entries;
  entries.reserve(f.size());
  for (const auto& a : f.atoms())
    if (a.value != cplx{}) entries.push_back({std::abs(a.value), a.id, a.weight});
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.modulus != y.modulus) return x.modulus > y.modulus;
    return x.id < y.id;
  });
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  double t = 0.0;
  for (std::size_t i = 0; i < entries.size();) {
    const double v = entries[i].modulus;
    double w = 0.0;
    for (; i < entries.size() && entries[i].modulus == v; ++i) w += entries[i].weight;
    t += w;
    if (v > 0.0) {
      breaks.push_back(t);
      values.push_back(v);
    }
  }
  return StepFunction(std::move(breaks), std::move(values));
}

double double_star(const StepFunction& fstar, double t) {
  if (!(t > 0.0)) throw LorentzError("f** is defined for t > 0 only");
  return fstar.running_integral(t) / t;
}

double lorentz_norm(const StepFunction& h, double p, double q) {
  check_exponents(p, q);
  const auto& T = h.breaks();
  const auto& v = h.values();
  if (h.is_zero()) return 0.0;
  if (std::isinf(q)) {
    double best = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0.0) continue;
      best = std::max(best, std::isinf(p) ? v[j] : v[j] * std::pow(T[j + 1], 1.0 / p));
    }
    return best;
  }
  if (std::isinf(p)) {
    double sum = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0.0) continue;
      if (T[j] == 0.0) return kInf;
      sum += std::pow(v[j], q) * std::log(T[j + 1] / T[j]);
    }
    return std::pow(sum, 1.0 / q);
  }
  // Scale by the largest value to keep v^q in range.
  const double vmax = *std::max_element(v.begin(), v.end());
  const double e = q / p;
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0.0) continue;
    sum += std::pow(v[j] / vmax, q) * power_integral(T[j], T[j + 1], e);
  }
  return vmax * std::pow(sum, 1.0 / q);
}

double lorentz_norm(const MeasuredFunction& f, double p, double q) {
  return lorentz_norm(rearrangement(f), p, q);
}

double lorentz_norm_via_distribution(const MeasuredFunction& f, double p, double q) {
  check_exponents(p, q);
  std::vector<double> levels;
  for (const auto& a : f.atoms())
    if (a.value != cplx{}) levels.push_back(std::abs(a.value));
  if (levels.empty()) return 0.0;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  // On [a_{i-1}, a_i) the distribution is the weight of atoms with |f| >= a_i.
  std::vector<double> mass(levels.size(), 0.0);
  for (const auto& a : f.atoms()) {
    if (a.value == cplx{}) continue;
    const double m = std::abs(a.value);
    const auto k = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), m) - levels.begin());
    mass[k] += a.weight;
  }
  std::vector<double> D(levels.size());
  double acc = 0.0;
  for (std::size_t i = levels.size(); i-- > 0;) {
    acc += mass[i];
    D[i] = acc;
  }
  const double top = levels.back();
  if (std::isinf(p)) return std::isinf(q) ? top : kInf;
  if (std::isinf(q)) {
    double best = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) best = std::max(best, levels[i] * std::pow(D[i], 1.0 / p));
    return best;
  }
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double a = levels[i] / top;
    sum += std::pow(D[i], q / p) * power_difference(prev, a, q) / q;
    prev = a;
  }
  return top * std::pow(p * sum, 1.0 / q);
}

double lorentz_norm_double_star(const MeasuredFunction& f, double p, double q) {
  check_exponents(p, q);
  const StepFunction fs = rearrangement(f);
  if (fs.is_zero()) return 0.0;
  const auto& T = fs.breaks();
  const auto& v = fs.values();
  // On each piece f**(t) = v_j + a_j / t with a_j = I_{j-1} - v_j T_{j-1};
  // past the support f**(t) = I / t.
  const double c = std::isinf(p) ? 0.0 : 1.0 / p;
  double integral = 0.0;
  double best = 0.0;
  for (std::size_t j = 0; j <= v.size(); ++j) {
    const double lo = T[std::min(j, v.size())];
    const double hi = j < v.size() ? T[j + 1] : kInf;
    const double running = fs.running_integral(lo);
    const double b = j < v.size() ? v[j] : 0.0;
    const double a = running - b * lo;
    // t^c (b + a/t) = t^{c-1} (a + b t)
    if (std::isinf(q)) {
      best = std::max(best, sup_power_linear(c - 1.0, a, b, lo, hi));
    } else {
      integral += power_linear_integral(c * q - q, a, b, q, lo, hi);
    }
  }
  if (std::isinf(q)) return best;
  return std::pow(integral, 1.0 / q);
}

MeasuredFunction pointwise_product(const MeasuredFunction& f, const MeasuredFunction& g) {
  if (f.size() != g.size()) throw LorentzError("pointwise product needs a shared atom set");
  std::vector<Atom> atoms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& a = f.atoms()[i];
    const auto& b = g.atoms()[i];
    if (a.id != b.id || a.weight != b.weight) throw LorentzError("pointwise product needs a shared atom set");
    atoms[i] = {a.id, a.weight, a.value * b.value};
  }
  return MeasuredFunction(f.domain(), std::move(atoms));
}

MeasuredFunction tensor_product(const MeasuredFunction& f, const MeasuredFunction& h) {
  if (f.domain() != Domain::group || h.domain() != Domain::dual)
    throw LorentzError("tensor product takes a function on G and one on the dual group");
  std::vector<Atom> atoms;
  atoms.reserve(f.size() * h.size());
  const auto stride = static_cast<std::int64_t>(h.size());
  for (const auto& a : f.atoms())
    for (const auto& b : h.atoms()) atoms.push_back({a.id * stride + b.id, a.weight * b.weight, a.value * b.value});
  return MeasuredFunction(Domain::phase_space, std::move(atoms));
}

double embedding_constant(double p, double q, double r) {
  if (!(q <= r)) throw LorentzError("embedding needs q <= r");
  if (std::isinf(p) || q == r) return 1.0;
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  return std::pow(q / p, 1.0 / q - inv_r);
}

double holder_constant(double p) {
  if (!(p > 1.0)) throw LorentzError("Hoelder constant needs p > 1");
  return conjugate(p);
}

double conjugate(double p) {
  if (!(p >= 1.0)) throw LorentzError(fmt::format("conjugate exponent needs p >= 1, got {}", p));
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

}  // namespace tflab
