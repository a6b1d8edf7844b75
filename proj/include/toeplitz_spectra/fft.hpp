#pragma once

#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

/// X[k] = sum_n x[n] exp(-2 pi i k n / L). Unnormalized, any length.
ComplexVector fft_forward(const ComplexVector& x);

/// x[n] = sum_k X[k] exp(+2 pi i k n / L). Unnormalized.
ComplexVector fft_backward(const ComplexVector& x);

} // namespace toeplitz
