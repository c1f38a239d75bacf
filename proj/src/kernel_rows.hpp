#pragma once

#include "tflab/group.hpp"

#include <span>
#include <vector>

// Per-row kernels shared by the serial and the parallel drivers, so both
// accumulate every output entry in the same order.

namespace tflab::detail {

inline cplx conj_character(const FiniteAbelianGroup& g, Index x, Index xi) {
  const std::int64_t ph = g.phase(x, xi);
  return g.root(ph == 0 ? 0 : g.phase_modulus() - ph);
}

/// out[xi] = scale * sum_y u[y] conj<y, xi>
inline void dft_row(const FiniteAbelianGroup& g, std::span<const cplx> u, double scale, std::span<cplx> out) {
  const std::size_t n = g.order();
  for (Index xi = 0; xi < n; ++xi) {
    cplx s{};
    for (Index y = 0; y < n; ++y) s += u[y] * conj_character(g, y, xi);
    out[xi] = scale * s;
  }
}

inline void stft_row(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> window, Index x,
                     std::vector<cplx>& scratch, std::span<cplx> out) {
  const std::size_t n = g.order();
  scratch.resize(n);
  for (Index y = 0; y < n; ++y) scratch[y] = f[y] * std::conj(window[g.sub(y, x)]);
  dft_row(g, scratch, g.haar_weight(), out);
}

inline void wigner_row(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> h,
                       const GroupEndomorphism& tau, Index x, std::vector<cplx>& scratch, std::span<cplx> out) {
  const std::size_t n = g.order();
  scratch.resize(n);
  for (Index y = 0; y < n; ++y) {
    const Index ty = tau.apply(y);
    scratch[y] = f[g.add(x, ty)] * std::conj(h[g.add(g.sub(x, y), ty)]);
  }
  dft_row(g, scratch, g.haar_weight(), out);
}

/// Row a of the Weyl matrix: entry z is Phi(a - tau(a - z), a - z) / |G| with
/// Phi(x, u) = sum_xi symbol(x, xi) <u, xi>.
inline void weyl_row(const FiniteAbelianGroup& g, std::span<const cplx> symbol, const GroupEndomorphism& tau, Index a,
                     std::span<cplx> out) {
  const std::size_t n = g.order();
  const double scale = 1.0 / static_cast<double>(n);
  for (Index z = 0; z < n; ++z) {
    const Index u = g.sub(a, z);
    const Index x = g.sub(a, tau.apply(u));
    cplx s{};
    for (Index xi = 0; xi < n; ++xi) s += symbol[x * n + xi] * g.character(u, xi);
    out[z] = scale * s;
  }
}

}  // namespace tflab::detail
