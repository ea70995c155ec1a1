#pragma once

#include <complex>
#include <span>

namespace fracwave::detail {

// Unnormalised complex DFTs of any length >= 1:
//   forward:  X_k = Sum_j x_j e^{-2 pi i jk / M}
//   backward: x_j = Sum_k X_k e^{+2 pi i jk / M}
// `in` and `out` may alias. Safe to call concurrently.
void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace fracwave::detail
