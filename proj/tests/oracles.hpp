#pragma once
// Test-side oracles, kept independent of the implementation paths they check.
#include <cmath>
#include <functional>
#include <vector>

#include "fbmjump/fbm.hpp"
#include "fbmjump/grid_function.hpp"
#include "fbmjump/special_functions.hpp"

namespace oracles {

// relative L2 error over the grid, optionally skipping a prefix (and suffix)
inline double rel_l2(const fbmjump::GridFunction& got, const fbmjump::GridFunction& want,
                     std::size_t skip_prefix = 0) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = skip_prefix; j < got.size(); ++j) {
    const double d = got[j] - want[j];
    num += d * d;
    den += want[j] * want[j];
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

inline double rel_l2_masked(const std::vector<double>& got, const std::vector<double>& want,
                            const std::vector<char>& keep) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < got.size(); ++j) {
    if (!keep[j]) continue;
    const double d = got[j] - want[j];
    num += d * d;
    den += want[j] * want[j];
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

inline fbmjump::GridFunction sample_fn(double t0, double t1, std::size_t n,
                                       const std::function<double(double)>& f) {
  std::vector<double> v(n);
  const double h = (t1 - t0) / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(t0 + h * static_cast<double>(j));
  return fbmjump::GridFunction(t0, t1, std::move(v));
}

// kernel evaluation guarded for quadrature nodes that round onto an endpoint
inline double kern_guarded(double t, double s, fbmjump::HurstParam H) {
  if (!(s > 0.0) || !(s < t)) return 0.0;
  return fbmjump::kernel_kh(t, s, H);
}

// direct singular quadrature of int_0^t K_H(t,s) f(s) ds (tanh-sinh handles
// both endpoint singularities); the independent oracle for apply_kh
inline double kernel_integral_direct(double t, fbmjump::HurstParam H,
                                     const std::function<double(double)>& f) {
  return fbmjump::tanh_sinh([&](double s) { return kern_guarded(t, s, H) * f(s); }, 0.0, t, 10);
}

// int_0^{min(t,s)} K_H(t,r) K_H(s,r) dr by tanh-sinh; oracle for the
// covariance factorization
inline double kernel_factorization(double t, double s, fbmjump::HurstParam H) {
  const double top = std::min(t, s);
  return fbmjump::tanh_sinh(
      [&](double r) { return kern_guarded(t, r, H) * kern_guarded(s, r, H); }, 0.0, top, 10);
}

// reflection-principle ruin probability for X = x0 + c t + W_t on [0,T]
inline double ruin_reflection(double x0, double c, double T) {
  auto Phi = [](double x) { return fbmjump::norm_cdf(x); };
  return Phi(-(x0 + c * T) / std::sqrt(T)) +
         std::exp(-2.0 * c * x0) * Phi((-x0 + c * T) / std::sqrt(T));
}

// Welford-style mean/stderr accumulator
struct MeanAcc {
  long double sum = 0.0L, sumsq = 0.0L;
  std::size_t n = 0;
  void add(double x) {
    sum += x;
    sumsq += static_cast<long double>(x) * x;
    ++n;
  }
  double mean() const { return static_cast<double>(sum / n); }
  double stderr_() const {
    const long double m = static_cast<long double>(n);
    const double var = static_cast<double>((sumsq - sum * sum / m) / (m - 1.0L)) / n;
    return std::sqrt(std::max(0.0, var));
  }
};

} // namespace oracles
