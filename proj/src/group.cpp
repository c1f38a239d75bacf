#include "tflab/group.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

namespace tflab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders, double haar_weight)
    : orders_(std::move(orders)), haar_(haar_weight) {
  if (orders_.empty()) throw GroupError("group needs at least one cyclic factor");
  if (!(haar_ > 0.0) || !std::isfinite(haar_)) throw GroupError("haar weight must be positive and finite");
  for (auto n : orders_) {
    if (n < 1) throw GroupError(fmt::format("cyclic order {} is not positive", n));
    if (order_ > (std::size_t{1} << 24) / static_cast<std::size_t>(n))
      throw GroupError("group order too large");
    order_ *= static_cast<std::size_t>(n);
    lcm_ = std::lcm(lcm_, n);
  }
  const std::size_t k = rank();
  coords_.resize(order_ * k);
  for (Index i = 0; i < order_; ++i) {
    Index rest = i;
    for (std::size_t a = k; a-- > 0;) {
      const auto n = static_cast<Index>(orders_[a]);
      coords_[i * k + a] = static_cast<std::int64_t>(rest % n);
      rest /= n;
    }
  }
  phase_scale_.resize(k);
  for (std::size_t a = 0; a < k; ++a) phase_scale_[a] = lcm_ / orders_[a];
  roots_.resize(static_cast<std::size_t>(lcm_));
  for (std::int64_t j = 0; j < lcm_; ++j) {
    // Exact values on the axes keep trivial characters exactly real.
    const std::int64_t r = 4 * j;
    if (r % lcm_ == 0) {
      static constexpr cplx axes[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      roots_[static_cast<std::size_t>(j)] = axes[(r / lcm_) % 4];
    } else {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(lcm_);
      roots_[static_cast<std::size_t>(j)] = {std::cos(angle), std::sin(angle)};
    }
  }
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view spec, double haar_weight) {
  std::vector<std::int64_t> orders;
  if (spec.empty()) throw GroupError("empty group spec");
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = spec.find_first_of("xX", pos);
    const std::string_view part = spec.substr(pos, next == std::string_view::npos ? spec.npos : next - pos);
    std::int64_t n = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), n);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      throw GroupError(fmt::format("malformed group spec '{}'", spec));
    orders.push_back(n);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return FiniteAbelianGroup(std::move(orders), haar_weight);
}

std::string FiniteAbelianGroup::spec() const {
  return fmt::format("{}", fmt::join(orders_, "x"));
}

FiniteAbelianGroup FiniteAbelianGroup::dual() const {
  return FiniteAbelianGroup(orders_, dual_haar_weight());
}

FiniteAbelianGroup FiniteAbelianGroup::with_haar_weight(double w) const {
  return FiniteAbelianGroup(orders_, w);
}

Index FiniteAbelianGroup::index_of(std::span<const std::int64_t> coords) const {
  if (coords.size() != rank())
    throw GroupError(fmt::format("element has {} coordinates, group has rank {}", coords.size(), rank()));
  Index i = 0;
  for (std::size_t a = 0; a < rank(); ++a)
    i = i * static_cast<Index>(orders_[a]) + static_cast<Index>(mod(coords[a], orders_[a]));
  return i;
}

std::vector<std::int64_t> FiniteAbelianGroup::coords_of(Index i) const {
  if (i >= order_) throw GroupError("element index out of range");
  return {coords_.begin() + static_cast<std::ptrdiff_t>(i * rank()),
          coords_.begin() + static_cast<std::ptrdiff_t>((i + 1) * rank())};
}

Index FiniteAbelianGroup::add(Index a, Index b) const {
  Index i = 0;
  for (std::size_t k = 0; k < rank(); ++k) {
    const auto n = orders_[k];
    auto c = coord(a, k) + coord(b, k);
    if (c >= n) c -= n;
    i = i * static_cast<Index>(n) + static_cast<Index>(c);
  }
  return i;
}

Index FiniteAbelianGroup::sub(Index a, Index b) const {
  Index i = 0;
  for (std::size_t k = 0; k < rank(); ++k) {
    const auto n = orders_[k];
    auto c = coord(a, k) - coord(b, k);
    if (c < 0) c += n;
    i = i * static_cast<Index>(n) + static_cast<Index>(c);
  }
  return i;
}

std::int64_t FiniteAbelianGroup::phase(Index x, Index xi) const {
  std::int64_t ph = 0;
  for (std::size_t k = 0; k < rank(); ++k)
    ph = (ph + coord(x, k) * coord(xi, k) % orders_[k] * phase_scale_[k]) % lcm_;
  return ph;
}

cplx character(const FiniteAbelianGroup& g, const GroupElement& x, const DualElement& xi) {
  if (x.coords.size() != g.rank() || xi.coords.size() != g.rank())
    throw GroupError("character arguments do not match the group rank");
  return g.character(g.index_of(x.coords), g.index_of(xi.coords));
}

GroupEndomorphism::GroupEndomorphism(FiniteAbelianGroup group, Matrix matrix)
    : group_(std::move(group)), matrix_(std::move(matrix)) {
  const std::size_t k = group_.rank();
  const auto& n = group_.orders();
  if (matrix_.size() != k) throw GroupError(fmt::format("matrix must be {0}x{0}", k));
  for (std::size_t i = 0; i < k; ++i) {
    if (matrix_[i].size() != k) throw GroupError(fmt::format("matrix must be {0}x{0}", k));
    for (std::size_t j = 0; j < k; ++j) {
      if ((matrix_[i][j] % n[i]) * n[j] % n[i] != 0)
        throw GroupError(fmt::format("entry ({},{}) = {} does not define a homomorphism Z_{} -> Z_{}", i, j,
                                     matrix_[i][j], n[j], n[i]));
      matrix_[i][j] = mod(matrix_[i][j], n[i]);
    }
  }
  const std::size_t order = group_.order();
  table_.resize(order);
  std::vector<std::int64_t> img(k);
  std::vector<bool> hit(order, false);
  std::size_t distinct = 0;
  for (Index x = 0; x < order; ++x) {
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < k; ++j) s = (s + matrix_[i][j] * group_.coord(x, j)) % n[i];
      img[i] = s;
    }
    const Index y = group_.index_of(img);
    table_[x] = y;
    if (!hit[y]) {
      hit[y] = true;
      ++distinct;
    }
  }
  bijective_ = distinct == order;
}

GroupEndomorphism GroupEndomorphism::identity(const FiniteAbelianGroup& g) { return scalar(g, 1); }

GroupEndomorphism GroupEndomorphism::zero(const FiniteAbelianGroup& g) { return scalar(g, 0); }

GroupEndomorphism GroupEndomorphism::scalar(const FiniteAbelianGroup& g, std::int64_t c) {
  Matrix m(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
  for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = c;
  return GroupEndomorphism(g, std::move(m));
}

GroupElement GroupEndomorphism::apply(const GroupElement& x) const {
  return {group_.coords_of(apply(group_.index_of(x.coords)))};
}

std::optional<GroupEndomorphism> GroupEndomorphism::inverse() const {
  if (!bijective_) return std::nullopt;
  const std::size_t k = group_.rank();
  std::vector<Index> inv(table_.size());
  for (Index x = 0; x < table_.size(); ++x) inv[table_[x]] = x;
  Matrix m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::int64_t> e(k, 0);
    e[j] = 1;
    const auto col = group_.coords_of(inv[group_.index_of(e)]);
    for (std::size_t i = 0; i < k; ++i) m[i][j] = col[i];
  }
  GroupEndomorphism candidate(group_, std::move(m));
  for (Index x = 0; x < table_.size(); ++x)
    if (candidate.apply(table_[x]) != x) return std::nullopt;
  return candidate;
}

GroupEndomorphism GroupEndomorphism::compose(const GroupEndomorphism& inner) const {
  if (!group_.same_structure(inner.group_)) throw GroupError("cannot compose endomorphisms of different groups");
  const std::size_t k = group_.rank();
  Matrix m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::int64_t s = 0;
      for (std::size_t l = 0; l < k; ++l) s = (s + matrix_[i][l] * inner.matrix_[l][j]) % group_.orders()[i];
      m[i][j] = s;
    }
  return GroupEndomorphism(group_, std::move(m));
}

GroupEndomorphism GroupEndomorphism::identity_minus() const {
  const std::size_t k = group_.rank();
  Matrix m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m[i][j] = (i == j ? 1 : 0) - matrix_[i][j];
  return GroupEndomorphism(group_, std::move(m));
}

GroupEndomorphism GroupEndomorphism::dual() const {
  const std::size_t k = group_.rank();
  const auto& n = group_.orders();
  Matrix m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      const std::int64_t scaled = matrix_[i][j] * n[j];
      if (scaled % n[i] != 0) throw GroupError("dual map undefined: divisibility fails");
      m[j][i] = mod(scaled / n[i], n[j]);
    }
  return GroupEndomorphism(group_.dual(), std::move(m));
}

AutomorphismCertificate certify_automorphism(const GroupEndomorphism& m) {
  AutomorphismCertificate cert;
  cert.inverse = m.inverse();
  cert.automorphism = cert.inverse.has_value();
  return cert;
}

GroupEndomorphism dual_automorphism(const GroupEndomorphism& m) {
  if (!m.is_automorphism()) throw GroupError("dual automorphism requires an automorphism");
  return m.dual();
}

double modulus(const GroupEndomorphism& m) {
  if (!m.is_automorphism()) throw GroupError("modulus is defined for automorphisms only");
  std::vector<bool> hit(m.group().order(), false);
  for (Index y : m.table()) hit[y] = true;
  double image = 0.0;
  for (bool h : hit)
    if (h) image += m.group().haar_weight();
  return m.group().haar_weight() * static_cast<double>(m.group().order()) / image;
}

}  // namespace tflab
