#pragma once

#include <complex>

namespace nlslab::detail {

// Unnormalized in-place DFT of a row-major n0 x n1 array (n1 == 1 for 1d).
// sign = -1 computes sum_j x_j e^{-2 pi i j m / n}, sign = +1 the conjugate kernel.
void fft_inplace(std::complex<double>* data, int n0, int n1, int sign);

}  // namespace nlslab::detail
