#pragma once

#include "tflab/lorentz.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace tflab {

class CalderonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent triple (a, b, c) of the monomial r^a s^b t^{-c}.
struct EtaTriple {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool operator==(const EtaTriple&) const = default;
};

/// Kernel min_k r^{a_k} s^{b_k} t^{-c_k} of a bilinear Calderon-type operator.
class EtaSet {
 public:
  explicit EtaSet(std::vector<EtaTriple> triples);

  const std::vector<EtaTriple>& triples() const { return triples_; }
  double kernel(double r, double s, double t) const;
  bool operator==(const EtaSet&) const = default;

 private:
  std::vector<EtaTriple> triples_;
};

/// {(1/2,1/2,1/2), (1,0,0), (0,1,0)}: kernel min{sqrt(rs/t), r, s}, which
/// dominates the rearranged STFT.
EtaSet stft_endpoints();
/// {(1/2,1/2,1/2), (1/2,1/2,0)}: kernel sqrt(rs) min{1, t^{-1/2}}, the
/// L^{2,1} x L^{2,1} case.
EtaSet l21_endpoints();
bool is_canonical(const EtaSet& eta);

/// Integral of f(y) g(x/y) dy/y over (0, inf), evaluated exactly.
double mult_convolution(const StepFunction& f, const StepFunction& g, double x);

/// Norm of a step function in L^w((0, inf), dt/t); w in [1, inf].
double dt_over_t_norm(const StepFunction& f, double w);
/// ||f * g||_{L^w(dt/t)} using the exact piecewise-linear-in-log form of f * g.
double convolution_dt_over_t_norm(const StepFunction& f, const StepFunction& g, double w);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// ||f * g||_w <= ||f||_u ||g||_v with 1/u + 1/v = 1 + 1/w.
InequalityCheck young_check(const StepFunction& f, const StepFunction& g, double u, double v, double w,
                            double rel_tol = 1e-9);

struct HardyCheck {
  double lhs_running = 0.0;  // {int [t^{d-1} int_0^t phi]^q dt/t}^{1/q}
  double rhs_running = 0.0;  // (1/(1-d)) {int [t^d phi]^q dt/t}^{1/q}
  double lhs_tail = 0.0;     // {int [t^{1-d} int_t^inf phi]^q dt/t}^{1/q}
  double rhs_tail = 0.0;     // (1/(1-d)) {int [t^{2-d} phi]^q dt/t}^{1/q}
  bool holds = true;
};

/// Both Hardy inequalities with constant 1/(1 - delta); delta < 1, q in [1, inf].
/// A side is only asserted when its right-hand side is finite.
HardyCheck hardy_check(const StepFunction& phi, double delta, double q, double rel_tol = 1e-9);

enum class CalderonMethod { automatic, exact, quadrature };

/// S_eta(f, g)(t) = int int min_k{r^{a_k} s^{b_k} t^{-c_k}} f(r) g(s) dr/r ds/s.
double calderon_apply(const EtaSet& eta, const StepFunction& f, const StepFunction& g, double t,
                      CalderonMethod method = CalderonMethod::automatic);

/// Values of t at which t -> S_eta(f, g)(t) may fail to be smooth.
std::vector<double> calderon_kinks(const EtaSet& eta, const StepFunction& f, const StepFunction& g);

/// c_j t^{e_j} on [breaks[j], breaks[j+1]); the last interval may extend to inf.
struct PiecewisePower {
  std::vector<double> breaks;
  std::vector<double> coeffs;
  std::vector<double> exponents;
};

/// {int_0^inf [t^{1/q} h(t)]^w dt/t}^{1/w}, q in (0, inf], w in [1, inf].
double halfline_lorentz_functional(const StepFunction& h, double q, double w);
double halfline_lorentz_functional(const PiecewisePower& h, double q, double w);
/// Numerical version for a callable h >= 0 that is smooth between `kinks`.
double halfline_lorentz_functional(const std::function<double(double)>& h, const std::vector<double>& kinks, double q,
                                   double w, double rel_tol = 1e-10);

struct CalderonEstimate {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// {int [t^{1/q} S_eta(f*, g*)(t)]^w dt/t}^{1/w} against ||f||_{p',u} ||g||_{p,v}
/// for the STFT kernel; q in (2, inf], p in [q', q], p != 2, 1/u + 1/v = 1 + 1/w.
CalderonEstimate calderon_estimate_check(double q, double p, double u, double v, double w, const MeasuredFunction& f,
                                         const MeasuredFunction& g);

}  // namespace tflab
