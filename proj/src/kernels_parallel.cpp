#include "kernel_rows.hpp"
#include "tflab/kernels.hpp"

namespace tflab::parallel {

namespace {

void check_size(const FiniteAbelianGroup& g, std::size_t len) {
  if (len != g.order()) throw GroupError("array length does not match the group order");
}

}  // namespace

std::vector<cplx> fourier(const FiniteAbelianGroup& g, std::span<const cplx> f) {
  check_size(g, f.size());
  const auto n = static_cast<std::ptrdiff_t>(g.order());
  std::vector<cplx> out(g.order());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t xi = 0; xi < n; ++xi) {
    cplx s{};
    for (Index x = 0; x < g.order(); ++x) s += f[x] * detail::conj_character(g, x, static_cast<Index>(xi));
    out[static_cast<Index>(xi)] = g.haar_weight() * s;
  }
  return out;
}

std::vector<cplx> stft(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> window) {
  check_size(g, f.size());
  check_size(g, window.size());
  const std::size_t n = g.order();
  std::vector<cplx> out(n * n);
#pragma omp parallel
  {
    std::vector<cplx> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t x = 0; x < static_cast<std::ptrdiff_t>(n); ++x)
      detail::stft_row(g, f, window, static_cast<Index>(x), scratch,
                       std::span<cplx>(out).subspan(static_cast<Index>(x) * n, n));
  }
  return out;
}

std::vector<cplx> wigner(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> h,
                         const GroupEndomorphism& tau) {
  check_size(g, f.size());
  check_size(g, h.size());
  const std::size_t n = g.order();
  std::vector<cplx> out(n * n);
#pragma omp parallel
  {
    std::vector<cplx> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t x = 0; x < static_cast<std::ptrdiff_t>(n); ++x)
      detail::wigner_row(g, f, h, tau, static_cast<Index>(x), scratch,
                         std::span<cplx>(out).subspan(static_cast<Index>(x) * n, n));
  }
  return out;
}

std::vector<cplx> weyl(const FiniteAbelianGroup& g, std::span<const cplx> symbol, const GroupEndomorphism& tau) {
  const std::size_t n = g.order();
  if (symbol.size() != n * n) throw GroupError("symbol size does not match |G|^2");
  std::vector<cplx> out(n * n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(n); ++a)
    detail::weyl_row(g, symbol, tau, static_cast<Index>(a), std::span<cplx>(out).subspan(static_cast<Index>(a) * n, n));
  return out;
}

}  // namespace tflab::parallel
