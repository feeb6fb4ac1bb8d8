#pragma once
#include <complex>
#include <vector>

namespace fbmjump::detail {

// In-place complex DFT (FFTW behind a planning mutex; execution is lock-free).
// sign = -1 forward, +1 backward (unnormalized, FFTW convention).
void fft(std::vector<std::complex<double>>& data, int sign);

} // namespace fbmjump::detail
