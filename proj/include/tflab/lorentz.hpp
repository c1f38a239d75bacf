#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tflab {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class LorentzError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Domain { group, dual, phase_space };

std::string to_string(Domain d);
Domain domain_from_string(const std::string& s);

struct Atom {
  std::int64_t id = 0;
  double weight = 1.0;
  cplx value{};
  bool operator==(const Atom&) const = default;
};

/// Complex values on finitely many atoms of positive weight.
class MeasuredFunction {
 public:
  MeasuredFunction() = default;
  MeasuredFunction(Domain domain, std::vector<Atom> atoms);
  /// Atoms 0..n-1 of a common weight.
  static MeasuredFunction uniform(Domain domain, const std::vector<cplx>& values, double weight);

  Domain domain() const { return domain_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_measure() const;
  bool is_zero() const;

  bool operator==(const MeasuredFunction&) const = default;

 private:
  Domain domain_ = Domain::group;
  std::vector<Atom> atoms_;
};

/// Non-negative step function on (0, inf): values[j] on [breaks[j], breaks[j+1]),
/// zero from breaks.back() on. breaks[0] is always 0.
class StepFunction {
 public:
  StepFunction() : breaks_{0.0} {}
  StepFunction(std::vector<double> breaks, std::vector<double> values);

  static StepFunction indicator(double length, double height = 1.0);

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }
  double support_end() const { return breaks_.back(); }
  bool is_monotone() const { return monotone_; }
  bool is_zero() const;

  double operator()(double t) const;
  /// Integral of the function over [0, t].
  double running_integral(double t) const;
  /// Lebesgue measure of {t : value > alpha}.
  double level_measure(double alpha) const;

  bool operator==(const StepFunction& o) const { return breaks_ == o.breaks_ && values_ == o.values_; }

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
  bool monotone_ = true;
};

/// Measure of {|f| > alpha}.
double distribution(const MeasuredFunction& f, double alpha);

/// Non-increasing rearrangement; equal values are merged into one piece.
StepFunction rearrangement(const MeasuredFunction& f);

/// (1/t) * integral of fstar over [0, t].
double double_star(const StepFunction& fstar, double t);

/// Lorentz quasi-norm of a (not necessarily monotone) step function, read as
/// {int_0^inf [t^{1/p} h(t)]^q dt/t}^{1/q}; p, q in (0, inf].
double lorentz_norm(const StepFunction& h, double p, double q);
double lorentz_norm(const MeasuredFunction& f, double p, double q);

/// Same quasi-norm computed from the distribution function only.
double lorentz_norm_via_distribution(const MeasuredFunction& f, double p, double q);

/// The variant with f** in place of f*.
double lorentz_norm_double_star(const MeasuredFunction& f, double p, double q);

/// Pointwise product on a shared atom set.
MeasuredFunction pointwise_product(const MeasuredFunction& f, const MeasuredFunction& g);

/// Product measure function on G x G^; atom id = id_f * |h| + id_h.
MeasuredFunction tensor_product(const MeasuredFunction& f, const MeasuredFunction& h);

/// Constant in ||f||_{p,r} <= C ||f||_{p,q} for q <= r.
double embedding_constant(double p, double q, double r);

/// Lorentz Hoelder constant p' for 1/p = 1/p1 + 1/p2 with p > 1.
double holder_constant(double p);

/// Conjugate exponent, with 1' = inf and inf' = 1.
double conjugate(double p);

}  // namespace tflab
