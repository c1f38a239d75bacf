#pragma once

#include "tflab/group.hpp"

#include <span>
#include <vector>

// Transform kernels on flat arrays. `parallel` distributes the outer loop with
// OpenMP; `serial` is the single-threaded reference. Both use the same
// summation order per output entry, so their results agree bit for bit,
// except for the Weyl kernels, which are assembled by different routes.

namespace tflab::parallel {

std::vector<cplx> fourier(const FiniteAbelianGroup& g, std::span<const cplx> f);
std::vector<cplx> stft(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> window);
std::vector<cplx> wigner(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> h,
                         const GroupEndomorphism& tau);
/// Gathers each row from the partial Fourier transform of the symbol in xi.
std::vector<cplx> weyl(const FiniteAbelianGroup& g, std::span<const cplx> symbol, const GroupEndomorphism& tau);

}  // namespace tflab::parallel

namespace tflab::serial {

std::vector<cplx> fourier(const FiniteAbelianGroup& g, std::span<const cplx> f);
std::vector<cplx> stft(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> window);
std::vector<cplx> wigner(const FiniteAbelianGroup& g, std::span<const cplx> f, std::span<const cplx> h,
                         const GroupEndomorphism& tau);
/// Assembles entry (y, z) as <symbol, W_tau(delta_y, delta_z)> / haar.
std::vector<cplx> weyl(const FiniteAbelianGroup& g, std::span<const cplx> symbol, const GroupEndomorphism& tau);

}  // namespace tflab::serial
