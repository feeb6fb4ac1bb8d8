#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fbmjump/fbm.hpp"
#include "fbmjump/girsanov.hpp"
#include "fbmjump/grid_function.hpp"
#include "fbmjump/point_process.hpp"

namespace fbmjump {

// Constants of the occupation-time estimate
//   E int_0^T g(t,X_t) dt <= G ( int int g^{beta*gamma} dx dt )^{1/(beta*gamma)}
// with 1/alpha + 1/beta = 1, 1/gamma + 1/gamma' = 1, gamma > 1 + H, and
//   J = (2 pi)^{(1-gamma')/2} T^{1+(1-gamma')H} / ( sqrt(gamma') (1+(1-gamma')H) )
//   K = ( E exp{ 2 alpha^2 int_0^T v^2 dt } )^{1/2}   (Monte Carlo)
//   G = J^{1/(gamma' beta)} K^{1/alpha}
// G is evaluated with the conservative K + 2*K_stderr.
struct KrylovConstants {
  double alpha, beta, gamma, gamma_p;
  double J;
  double K;        // point estimate
  double K_stderr; // Monte Carlo standard error of K
  double G;
};

// v_samples: v paths from drift-free weak-solution draws (operationally, from
// sample_weak_solution runs with the target drift).
KrylovConstants krylov_constants(HurstParam H, double T, double gamma, double alpha,
                                 const std::vector<GridFunction>& v_samples);

// A nonnegative test function with compact support (the box is also the
// quadrature window for its integral norm).
struct OccupationTestFn {
  std::string id;
  std::function<double(double, double)> g;
  double t_lo, t_hi, x_lo, x_hi;
};

struct KrylovReport {
  std::string g_id;
  double lhs;        // MC estimate of E int g(t,X_t) dt over strong paths
  double lhs_stderr;
  double rhs;        // G * ||g||_{beta gamma}
  bool pass;         // lhs <= rhs + 3*stderr
};

KrylovReport krylov_check(const DriftSpec& b, HurstParam H, const CompoundPoissonSpec& spec,
                          const OccupationTestFn& g, double x0, std::size_t m,
                          std::uint64_t seed, std::size_t n_grid, const KrylovConstants& consts);

// ( int int g^p dx dt )^{1/p} over the support box by midpoint quadrature.
double g_norm(const OccupationTestFn& g, double p, std::size_t nodes = 400);

void write_krylov_csv(const std::vector<KrylovReport>& reports, const std::string& file,
                      const std::string& meta);

} // namespace fbmjump
