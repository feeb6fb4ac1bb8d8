#include "fft_util.hpp"

#include <fftw3.h>

#include <mutex>

namespace fbmjump::detail {

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

void fft(std::vector<std::complex<double>>& data, int sign) {
  const auto n = static_cast<int>(data.size());
  if (n == 0) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    // FFTW planning is not thread-safe; FFTW_ESTIMATE keeps the input intact.
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
}

} // namespace fbmjump::detail
