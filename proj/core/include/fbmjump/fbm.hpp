#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbmjump/grid_function.hpp"

namespace fbmjump {

struct HurstParam {
  explicit HurstParam(double hurst);
  double h;
  bool is_brownian() const { return h == 0.5; }
};

// fBM covariance R_H(t,s) = (t^{2H} + s^{2H} - |t-s|^{2H}) / 2.
double covariance_rh(double t, double s, HurstParam H);

// Gauss hypergeometric F(a,b,c,z) re-exported here for kernel call sites.
double gauss_2f1(double a, double b, double c, double z);

// Square-integrable Volterra kernel with
//   K_H(t,s) = nu_H * (t-s)^{H-1/2} F(H-1/2, 1/2-H, H+1/2, 1-t/s) / Gamma(H+1/2)
// normalized (nu_H) so that int_0^{t^s} K_H(t,r)K_H(s,r)dr = R_H(t,s).
double kernel_kh(double t, double s, HurstParam H);

// nu_H = sqrt( 2H / (Gamma(2-2H) * sinc(pi(1/2-H))) ); nu_{1/2} = 1.
double kernel_norm_const(HurstParam H);

// (K_H f)(t) = int_0^t K_H(t,s) f(s) ds via the composed fractional-operator
// form (branching on H<1/2 / H>1/2; H=1/2 is the cumulative integral).
GridFunction apply_kh(const GridFunction& f, HurstParam H);

// K_H^{-1} h, with h' obtained by forward grid differencing; requires
// h(t0) = 0. H=1/2 returns h'. Value at t=0 is set to 0.
GridFunction invert_kh(const GridFunction& h, HurstParam H);

// Brownian increments over a uniform grid; path starts at 0.
struct WienerPath {
  double t0 = 0.0, t1 = 1.0;
  std::vector<double> increments; // n-1 values, each N(0,h)
  double spacing() const { return (t1 - t0) / static_cast<double>(increments.size()); }
  GridFunction path() const;
};

enum class FbmMethod { cholesky, circulant, kernel_from_wiener };
std::string to_string(FbmMethod m);
FbmMethod fbm_method_from_string(const std::string& s);

struct FbmPath {
  GridFunction path; // value 0 at t0
  double hurst;
  FbmMethod provenance;
  std::optional<WienerPath> wiener; // present for kernel_from_wiener
};

// Deterministic given (seed, method, H, T, n).
FbmPath sample_fbm(HurstParam H, double T, std::size_t n, FbmMethod method, std::uint64_t seed);

// Row j of the cached lower-triangular discretized kernel: B_j = sum_i M[j][i] dW_i.
// Cell-integrated (singular factor exact; hypergeometric factor refined near s=0).
const std::vector<std::vector<double>>& kernel_matrix(HurstParam H, double T, std::size_t n);

void write_fbm_csv(const FbmPath& p, const std::string& path, std::uint64_t seed);

} // namespace fbmjump
