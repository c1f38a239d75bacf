#include "tflab/tfa.hpp"

#include "tflab/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace tflab {

namespace {

void require_same_group(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  if (!(a == b)) throw TransformError(fmt::format("group mismatch: {} vs {}", a.spec(), b.spec()));
}

double lebesgue_norm(const std::vector<cplx>& values, double weight, double p) {
  if (!(p > 0.0)) throw TransformError("Lebesgue exponent must be positive");
  double mx = 0.0;
  for (const auto& v : values) mx = std::max(mx, std::abs(v));
  if (std::isinf(p) || mx == 0.0) return mx;
  double s = 0.0;
  for (const auto& v : values) s += std::pow(std::abs(v) / mx, p);
  return mx * std::pow(weight * s, 1.0 / p);
}

}  // namespace

GroupFunction::GroupFunction(FiniteAbelianGroup group, std::vector<cplx> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.order())
    throw TransformError(fmt::format("function has {} values, group {} has {} elements", values_.size(),
                                     group_.spec(), group_.order()));
}

GroupFunction GroupFunction::zeros(const FiniteAbelianGroup& group) {
  return GroupFunction(group, std::vector<cplx>(group.order()));
}

GroupFunction GroupFunction::point_mass(const FiniteAbelianGroup& group, Index at) {
  auto f = zeros(group);
  f.values_.at(at) = 1.0;
  return f;
}

GroupFunction GroupFunction::constant(const FiniteAbelianGroup& group, cplx c) {
  return GroupFunction(group, std::vector<cplx>(group.order(), c));
}

bool GroupFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == cplx{}; });
}

double GroupFunction::lp_norm(double p) const { return lebesgue_norm(values_, group_.haar_weight(), p); }

MeasuredFunction GroupFunction::measured(Domain domain) const {
  return MeasuredFunction::uniform(domain, values_, group_.haar_weight());
}

cplx inner_product(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f.group(), g.group());
  cplx s{};
  for (Index i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
  return f.group().haar_weight() * s;
}

TFArray::TFArray(FiniteAbelianGroup group, std::vector<cplx> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.order() * group_.order())
    throw TransformError(fmt::format("time-frequency array has {} cells, expected {}", values_.size(),
                                     group_.order() * group_.order()));
}

TFArray TFArray::zeros(const FiniteAbelianGroup& group) {
  return TFArray(group, std::vector<cplx>(group.order() * group.order()));
}

double TFArray::lp_norm(double p) const { return lebesgue_norm(values_, cell_weight(), p); }

MeasuredFunction TFArray::measured() const {
  return MeasuredFunction::uniform(Domain::phase_space, values_, cell_weight());
}

cplx inner_product(const TFArray& a, const TFArray& b) {
  require_same_group(a.group(), b.group());
  cplx s{};
  for (std::size_t i = 0; i < a.values().size(); ++i) s += a.values()[i] * std::conj(b.values()[i]);
  return a.cell_weight() * s;
}

double max_abs_difference(const TFArray& a, const TFArray& b) {
  require_same_group(a.group(), b.group());
  double d = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
  return d;
}

GroupFunction fourier(const GroupFunction& f) {
  return GroupFunction(f.group().dual(), parallel::fourier(f.group(), f.values()));
}

GroupFunction inverse_fourier(const GroupFunction& fhat, const FiniteAbelianGroup& group) {
  if (!fhat.group().same_structure(group)) throw TransformError("inverse transform onto a different group");
  const auto& dual = fhat.group();
  std::vector<cplx> out(group.order());
  for (Index x = 0; x < group.order(); ++x) {
    cplx s{};
    for (Index xi = 0; xi < dual.order(); ++xi) s += fhat[xi] * group.character(x, xi);
    out[x] = dual.haar_weight() * s;
  }
  return GroupFunction(group, std::move(out));
}

GroupFunction translate(const GroupFunction& f, Index x) {
  const auto& g = f.group();
  std::vector<cplx> out(g.order());
  for (Index y = 0; y < g.order(); ++y) out[y] = f[g.sub(y, x)];
  return GroupFunction(g, std::move(out));
}

GroupFunction modulate(const GroupFunction& f, Index xi) {
  const auto& g = f.group();
  std::vector<cplx> out(g.order());
  for (Index y = 0; y < g.order(); ++y) out[y] = g.character(y, xi) * f[y];
  return GroupFunction(g, std::move(out));
}

GroupFunction tf_shift(const GroupFunction& f, Index x, Index xi) { return modulate(translate(f, x), xi); }

TFArray stft(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f.group(), g.group());
  return TFArray(f.group(), parallel::stft(f.group(), f.values(), g.values()));
}

BoundCheck stft_lebesgue_bound_check(const GroupFunction& f, const GroupFunction& g, double p, double q,
                                     double rel_tol) {
  if (!(q >= 2.0)) throw TransformError("STFT Lebesgue bound needs q in [2, inf]");
  const double qc = conjugate(q);
  if (!(p >= qc && p <= q)) throw TransformError(fmt::format("STFT Lebesgue bound needs p in [{}, {}]", qc, q));
  BoundCheck c;
  c.lhs = stft(f, g).lp_norm(q);
  c.rhs = f.lp_norm(conjugate(p)) * g.lp_norm(p);
  c.ratio = c.rhs > 0.0 ? c.lhs / c.rhs : 0.0;
  c.holds = c.lhs <= c.rhs * (1.0 + rel_tol) + 1e-300;
  return c;
}

TFArray wigner_tau(const GroupFunction& f, const GroupFunction& g, const GroupEndomorphism& tau) {
  require_same_group(f.group(), g.group());
  if (!tau.group().same_structure(f.group())) throw TransformError("endomorphism acts on a different group");
  return TFArray(f.group(), parallel::wigner(f.group(), f.values(), g.values(), tau));
}

TFArray rihaczek(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f.group(), g.group());
  const auto& grp = f.group();
  const auto ghat = fourier(g);
  auto out = TFArray::zeros(grp);
  for (Index x = 0; x < grp.order(); ++x)
    for (Index xi = 0; xi < grp.order(); ++xi)
      out(x, xi) = f[x] * std::conj(grp.character(x, xi)) * std::conj(ghat[xi]);
  return out;
}

TFArray conjugate_rihaczek(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f.group(), g.group());
  const auto& grp = f.group();
  const auto fhat = fourier(f);
  auto out = TFArray::zeros(grp);
  for (Index x = 0; x < grp.order(); ++x)
    for (Index xi = 0; xi < grp.order(); ++xi) out(x, xi) = std::conj(g[x]) * grp.character(x, xi) * fhat[xi];
  return out;
}

GroupFunction a_tau(const GroupFunction& g, const GroupEndomorphism& tau) {
  const auto inv = tau.inverse();
  if (!inv) throw TransformError("A_tau needs tau to be an automorphism");
  const auto map = inv->identity_minus();
  if (!map.is_automorphism()) throw TransformError("A_tau needs I - tau^{-1} to be an automorphism");
  std::vector<cplx> out(g.size());
  for (Index x = 0; x < g.size(); ++x) out[x] = g[map.apply(x)];
  return GroupFunction(g.group(), std::move(out));
}

TFArray stft_dilate(const TFArray& v, const GroupEndomorphism& tau) {
  const auto inv = tau.inverse();
  if (!inv) throw TransformError("dilation needs tau to be an automorphism");
  const auto shear = tau.identity_minus().inverse();
  if (!shear) throw TransformError("dilation needs I - tau to be an automorphism");
  const auto freq = inv->dual();
  const std::size_t n = v.side();
  auto out = TFArray::zeros(v.group());
  for (Index x = 0; x < n; ++x)
    for (Index xi = 0; xi < n; ++xi) out(x, xi) = v(shear->apply(x), freq.apply(xi));
  return out;
}

double wigner_factorization_check(const GroupFunction& f, const GroupFunction& g, const GroupEndomorphism& tau) {
  const auto inv = tau.inverse();
  if (!inv) throw TransformError("factorization needs tau to be an automorphism");
  if (!tau.identity_minus().is_automorphism()) throw TransformError("factorization needs I - tau invertible");
  if (!inv->identity_minus().is_automorphism()) throw TransformError("factorization needs I - tau^{-1} invertible");
  const auto lhs = wigner_tau(f, g, tau);
  const auto dilated = stft_dilate(stft(f, a_tau(g, tau)), tau);
  const auto freq = inv->dual();
  const double delta = modulus(tau);
  const auto& grp = f.group();
  double dev = 0.0;
  for (Index x = 0; x < grp.order(); ++x)
    for (Index xi = 0; xi < grp.order(); ++xi) {
      const cplx rhs = grp.character(x, freq.apply(xi)) * dilated(x, xi) / delta;
      dev = std::max(dev, std::abs(lhs(x, xi) - rhs));
    }
  return dev;
}

OperatorMatrix::OperatorMatrix(FiniteAbelianGroup group, std::vector<cplx> entries)
    : group_(std::move(group)), entries_(std::move(entries)) {
  if (entries_.size() != group_.order() * group_.order()) throw TransformError("operator matrix has the wrong size");
}

GroupFunction OperatorMatrix::apply(const GroupFunction& f) const {
  if (!f.group().same_structure(group_)) throw TransformError("operator applied to a function on another group");
  const std::size_t n = side();
  std::vector<cplx> out(n);
  for (Index y = 0; y < n; ++y) {
    cplx s{};
    for (Index z = 0; z < n; ++z) s += entries_[y * n + z] * f[z];
    out[y] = s;
  }
  return GroupFunction(f.group(), std::move(out));
}

double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.entries().size() != b.entries().size()) throw TransformError("operator size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  return d;
}

OperatorMatrix weyl_operator(const TFArray& phi, const GroupEndomorphism& tau) {
  if (!tau.group().same_structure(phi.group())) throw TransformError("endomorphism acts on a different group");
  return OperatorMatrix(phi.group(), parallel::weyl(phi.group(), phi.values(), tau));
}

}  // namespace tflab
