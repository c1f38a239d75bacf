#pragma once

#include "tflab/group.hpp"
#include "tflab/lorentz.hpp"

#include <vector>

namespace tflab {

class TransformError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense function on a finite abelian group (or its dual), indexed by element.
class GroupFunction {
 public:
  GroupFunction(FiniteAbelianGroup group, std::vector<cplx> values);
  static GroupFunction zeros(const FiniteAbelianGroup& group);
  static GroupFunction point_mass(const FiniteAbelianGroup& group, Index at);
  static GroupFunction constant(const FiniteAbelianGroup& group, cplx c);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](Index i) const { return values_[i]; }
  cplx& operator[](Index i) { return values_[i]; }

  bool is_zero() const;
  /// Lebesgue norm with respect to the group's Haar weight; p in (0, inf].
  double lp_norm(double p) const;
  MeasuredFunction measured(Domain domain = Domain::group) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<cplx> values_;
};

/// <f, g> = sum f conj(g) times the Haar weight.
cplx inner_product(const GroupFunction& f, const GroupFunction& g);

/// Function on G x G^, x-major. Each cell carries weight haar(G) * haar(G^) = 1/|G|.
class TFArray {
 public:
  TFArray(FiniteAbelianGroup group, std::vector<cplx> values);
  static TFArray zeros(const FiniteAbelianGroup& group);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }
  std::size_t side() const { return group_.order(); }
  double cell_weight() const { return group_.haar_weight() * group_.dual_haar_weight(); }

  cplx operator()(Index x, Index xi) const { return values_[x * side() + xi]; }
  cplx& operator()(Index x, Index xi) { return values_[x * side() + xi]; }

  double lp_norm(double p) const;
  MeasuredFunction measured() const;

 private:
  FiniteAbelianGroup group_;
  std::vector<cplx> values_;
};

cplx inner_product(const TFArray& a, const TFArray& b);
double max_abs_difference(const TFArray& a, const TFArray& b);

/// f^(xi) = haar * sum_x f(x) conj<x, xi>; the result lives on the dual group.
GroupFunction fourier(const GroupFunction& f);
/// Inverse transform of a function on the dual group, back onto `group`.
GroupFunction inverse_fourier(const GroupFunction& fhat, const FiniteAbelianGroup& group);

GroupFunction translate(const GroupFunction& f, Index x);
GroupFunction modulate(const GroupFunction& f, Index xi);
/// (pi(x, xi) f)(y) = <y, xi> f(y - x).
GroupFunction tf_shift(const GroupFunction& f, Index x, Index xi);

/// V_g f(x, xi) = <f, pi(x, xi) g>, computed as the Fourier transform of f conj(T_x g).
TFArray stft(const GroupFunction& f, const GroupFunction& g);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = true;
};

/// ||V_g f||_q <= ||f||_{p'} ||g||_p for q in [2, inf], p in [q', q].
BoundCheck stft_lebesgue_bound_check(const GroupFunction& f, const GroupFunction& g, double p, double q,
                                     double rel_tol = 1e-12);

/// W_tau(f, g)(x, xi) = haar * sum_y f(x + tau y) conj g(x - (I - tau) y) conj<y, xi>.
TFArray wigner_tau(const GroupFunction& f, const GroupFunction& g, const GroupEndomorphism& tau);
/// f(x) conj<x, xi> conj g^(xi)
TFArray rihaczek(const GroupFunction& f, const GroupFunction& g);
/// conj g(x) <x, xi> f^(xi)
TFArray conjugate_rihaczek(const GroupFunction& f, const GroupFunction& g);

/// g((I - tau^{-1}) x)
GroupFunction a_tau(const GroupFunction& g, const GroupEndomorphism& tau);
/// V((I - tau)^{-1} x, (tau^{-1})^* xi)
TFArray stft_dilate(const TFArray& v, const GroupEndomorphism& tau);

/// Max |W_tau(f,g) - Delta^{-1} <x, (tau^{-1})^* xi> V^tau_{A_tau g} f| over all cells.
double wigner_factorization_check(const GroupFunction& f, const GroupFunction& g, const GroupEndomorphism& tau);

/// Dense operator on L^2(G): (A f)(y) = sum_z entries[y * |G| + z] f(z).
class OperatorMatrix {
 public:
  OperatorMatrix(FiniteAbelianGroup group, std::vector<cplx> entries);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<cplx>& entries() const { return entries_; }
  std::size_t side() const { return group_.order(); }
  cplx operator()(Index y, Index z) const { return entries_[y * side() + z]; }

  GroupFunction apply(const GroupFunction& f) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<cplx> entries_;
};

double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b);

/// The operator with <W^phi f, g> = <phi, W_tau(g, f)> for all f, g.
OperatorMatrix weyl_operator(const TFArray& phi, const GroupEndomorphism& tau);

}  // namespace tflab
