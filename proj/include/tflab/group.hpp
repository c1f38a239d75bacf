#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tflab {

using cplx = std::complex<double>;
using Index = std::size_t;

/// Thrown for malformed groups, out-of-range elements and invalid endomorphisms.
class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupElement {
  std::vector<std::int64_t> coords;
  bool operator==(const GroupElement&) const = default;
};

struct DualElement {
  std::vector<std::int64_t> coords;
  bool operator==(const DualElement&) const = default;
};

/// Z_{n_1} x ... x Z_{n_k} with Haar measure `haar_weight` times counting measure.
///
/// Elements are addressed by a mixed-radix index with the first factor most
/// significant. The dual group has the same factor list; its Haar weight is
/// 1 / (haar_weight * |G|), which makes the Fourier transform unitary.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders, double haar_weight = 1.0);

  /// Parses "n1xn2x...xnk", e.g. "12x5".
  static FiniteAbelianGroup parse(std::string_view spec, double haar_weight = 1.0);

  std::string spec() const;
  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t order() const { return order_; }
  double haar_weight() const { return haar_; }
  double dual_haar_weight() const { return 1.0 / (haar_ * static_cast<double>(order_)); }

  FiniteAbelianGroup dual() const;
  FiniteAbelianGroup with_haar_weight(double w) const;
  /// Same factors (ignores the Haar scale).
  bool same_structure(const FiniteAbelianGroup& other) const { return orders_ == other.orders_; }

  Index index_of(std::span<const std::int64_t> coords) const;
  Index index_of(const GroupElement& x) const { return index_of(x.coords); }
  std::vector<std::int64_t> coords_of(Index i) const;
  std::int64_t coord(Index i, std::size_t axis) const { return coords_[i * rank() + axis]; }

  Index add(Index a, Index b) const;
  Index sub(Index a, Index b) const;
  Index neg(Index a) const { return sub(0, a); }

  /// <x, xi> as a root of unity. Exact phase bookkeeping: the phase is an
  /// integer modulo lcm(n_i), looked up in a precomputed root table.
  cplx character(Index x, Index xi) const { return roots_[phase(x, xi)]; }
  std::int64_t phase(Index x, Index xi) const;
  std::int64_t phase_modulus() const { return lcm_; }
  cplx root(std::int64_t k) const { return roots_[static_cast<std::size_t>(k)]; }

  bool operator==(const FiniteAbelianGroup& o) const {
    return orders_ == o.orders_ && haar_ == o.haar_;
  }

 private:
  std::vector<std::int64_t> orders_;
  double haar_;
  std::size_t order_ = 1;
  std::int64_t lcm_ = 1;
  std::vector<std::int64_t> coords_;        // |G| x k, reduced coordinates
  std::vector<std::int64_t> phase_scale_;   // lcm / n_i
  std::vector<cplx> roots_;                 // exp(2 pi i k / lcm)
};

/// <x, xi> = exp(2 pi i sum_j x_j xi_j / n_j).
cplx character(const FiniteAbelianGroup& g, const GroupElement& x, const DualElement& xi);

/// x -> M x (mod n_i), an endomorphism of a finite abelian group given by an
/// integer matrix. Well-definedness requires n_i | M_ij n_j for all i, j.
class GroupEndomorphism {
 public:
  using Matrix = std::vector<std::vector<std::int64_t>>;

  GroupEndomorphism(FiniteAbelianGroup group, Matrix matrix);

  static GroupEndomorphism identity(const FiniteAbelianGroup& g);
  static GroupEndomorphism zero(const FiniteAbelianGroup& g);
  static GroupEndomorphism scalar(const FiniteAbelianGroup& g, std::int64_t c);

  const FiniteAbelianGroup& group() const { return group_; }
  const Matrix& matrix() const { return matrix_; }

  Index apply(Index x) const { return table_[x]; }
  GroupElement apply(const GroupElement& x) const;
  /// Image of every element, indexed by element.
  const std::vector<Index>& table() const { return table_; }

  bool is_automorphism() const { return bijective_; }
  /// Recovered from the inverse permutation and re-verified; empty when not bijective.
  std::optional<GroupEndomorphism> inverse() const;

  /// this o inner
  GroupEndomorphism compose(const GroupEndomorphism& inner) const;
  /// I - M
  GroupEndomorphism identity_minus() const;
  /// M* on the dual group, <M x, xi> = <x, M* xi>.
  GroupEndomorphism dual() const;

  bool operator==(const GroupEndomorphism& o) const {
    return group_.same_structure(o.group_) && matrix_ == o.matrix_;
  }

 private:
  FiniteAbelianGroup group_;
  Matrix matrix_;
  std::vector<Index> table_;
  bool bijective_ = false;
};

struct AutomorphismCertificate {
  bool automorphism = false;
  std::optional<GroupEndomorphism> inverse;
};

AutomorphismCertificate certify_automorphism(const GroupEndomorphism& m);

GroupEndomorphism dual_automorphism(const GroupEndomorphism& m);

/// Delta_tau, defined by sum f(tau x) = Delta_tau^{-1} sum f(x). Computed as
/// mu(G) / mu(tau(G)); throws for non-automorphisms.
double modulus(const GroupEndomorphism& m);

}  // namespace tflab
