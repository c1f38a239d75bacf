#include "kernel_rows.hpp"
#include "tflab/kernels.hpp"

namespace tflab::serial {

namespace {

void check_size(const FiniteAbelianGroup& g, std::size_t len) {
  if (len != g.order()) throw GroupError("array length does not match the group order");
}

}  // namespace

std::vector<cplx> fourier(const FiniteAbelianGroup& g, std::span<const cplx> f) {
  check_size(g, f.size());
  std::vector<cplx> out(g.order());
  detail::dft_row(g, f, g.haar_weight(), out);
  return out;
}

std::vector<cplx> stft(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> window) {
  check_size(g, f.size());
  check_size(g, window.size());
  const std::size_t n = g.order();
  std::vector<cplx> out(n * n);
  std::vector<cplx> scratch;
  for (Index x = 0; x < n; ++x) detail::stft_row(g, f, window, x, scratch, std::span<cplx>(out).subspan(x * n, n));
  return out;
}

std::vector<cplx> wigner(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> h,
                         const GroupEndomorphism& tau) {
  check_size(g, f.size());
  check_size(g, h.size());
  const std::size_t n = g.order();
  std::vector<cplx> out(n * n);
  std::vector<cplx> scratch;
  for (Index x = 0; x < n; ++x)
    detail::wigner_row(g, f, h, tau, x, scratch, std::span<cplx>(out).subspan(x * n, n));
  return out;
}

std::vector<cplx> weyl(const FiniteAbelianGroup& g, std::span<const cplx> symbol, const GroupEndomorphism& tau) {
  const std::size_t n = g.order();
  if (symbol.size() != n * n) throw GroupError("symbol size does not match |G|^2");
  const double cell = g.haar_weight() * g.dual_haar_weight();
  std::vector<cplx> out(n * n);
  std::vector<cplx> da(n), dz(n);
  for (Index a = 0; a < n; ++a) {
    std::fill(da.begin(), da.end(), cplx{});
    da[a] = 1.0;
    for (Index z = 0; z < n; ++z) {
      std::fill(dz.begin(), dz.end(), cplx{});
      dz[z] = 1.0;
      const auto w = wigner(g, da, dz, tau);
      cplx s{};
      for (std::size_t c = 0; c < n * n; ++c) s += symbol[c] * std::conj(w[c]);
      out[a * n + z] = cell * s / g.haar_weight();
    }
  }
  return out;
}

}  // namespace tflab::serial
