#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fbmjump/fbm.hpp"
#include "fbmjump/grid_function.hpp"
#include "fbmjump/point_process.hpp"

namespace fbmjump {

// Drift coefficient with its regularity metadata.
//   low_h  (for H < 1/2): |b(t,x)| <= k (1 + |x|^rho), 0 < rho < 1/2
//   high_h (for H > 1/2): |b(t,x)-b(s,y)| <= k (|x-y|^alpha + |t-s|^gamma),
//                         gamma > H - 1/2, 1 - 1/(2H) < alpha < 1
struct DriftSpec {
  std::function<double(double, double)> b;
  enum class Regime { low_h, high_h, both } regime = Regime::both;
  double k = 1.0;
  double rho = 0.25;
  double alpha = 0.9;
  double gamma = 1.0;
  std::optional<double> bound; // uniform bound, when known
  bool requires_truncation = false;
  std::string label = "drift";

  double operator()(double t, double x) const { return b(t, x); }
};

// Spot-checks the declared regularity on a random (t,x) grid and the
// high-H parameter window for the given H; throws invalid_input on failure.
void validate_drift(const DriftSpec& spec, HurstParam H, double T, std::uint64_t seed = 17);

// u_t = -b(t, sigma*B^H_t - L_t + x0) on the fBM grid (L evaluated cadlag,
// jumps snapped to the grid).
GridFunction drift_u(const DriftSpec& b, const FbmPath& fbm, const JumpPath& jumps, double x0,
                     double sigma = 1.0);

// v = K_H^{-1}( int_0^. u dr ). H=1/2 returns u itself. For H>1/2 the
// derivative is assembled piecewise across the jump times (the Phi_k
// decomposition); u's discontinuities must sit at the (snapped) jump times.
// v(t0) is 0 for H != 1/2 (see compute_v_pieces for the near-jump handling).
GridFunction compute_v(const GridFunction& u, HurstParam H, const JumpPath& jumps);

// Diagnostic variant exposing the piecewise assembly: returns v together with
// the A^k and B^k regroupings whose sum must reproduce t^{H-1/2} Phi_k(t)
// (pure algebra; used as a numerical-stability cross-check). H > 1/2 only.
struct PiecewiseV {
  GridFunction v;
  GridFunction a_part; // weighted A^k(t)/nu contribution
  GridFunction b_part; // weighted B^k(t)/nu contribution
  std::vector<double> max_abs_per_piece;
};
PiecewiseV compute_v_pieces(const GridFunction& u, HurstParam H, const JumpPath& jumps);

// Z_T = exp( -sum_j v_j dW_j - 1/2 sum_j v_j^2 h )  (left-point Ito sums).
double girsanov_weight(const GridFunction& v, const WienerPath& w);

struct WeightedSample {
  GridFunction x_path; // X_t = x0 + sigma B^H_t - L_t
  double weight = 1.0; // Z_T
  GridFunction v_path;
  WienerPath wiener;
  JumpPath jumps;
};

// Draws (W, B^H, L) with B^H generated from W through the discretized kernel
// so that v is adapted to W; under the weighted measure the returned path has
// the weak-solution law of dX = b dt + sigma dB^H - dL.
WeightedSample sample_weak_solution(const DriftSpec& b, HurstParam H,
                                    const CompoundPoissonSpec& spec, double x0,
                                    std::uint64_t seed, std::size_t n_grid, double sigma = 1.0);

struct NovikovReport {
  double estimate = 1.0;
  double stderr_ = 0.0;
  double estimate_tenth = 1.0; // estimate over the first m/10 draws
  bool stable = true;          // finite summands and ratio in [1/3, 3]
};

// Monte Carlo estimate of E exp( 1/2 int_0^T v^2 dt ) over m (fBM, jump) draws.
NovikovReport novikov_diagnostic(const DriftSpec& b, HurstParam H,
                                 const CompoundPoissonSpec& spec, double x0, std::size_t m,
                                 std::uint64_t seed, std::size_t n_grid = 256);

// Unnormalized importance-sampling estimator of E[phi(X_T)]; returns
// (estimate, stderr).
std::pair<double, double> weighted_expectation(const std::vector<WeightedSample>& samples,
                                               const std::function<double(double)>& phi);

// Batch CSV: seed,X_T,weight,logZ,max_abs_v
void write_weighted_samples_csv(const std::vector<std::pair<std::uint64_t, WeightedSample>>& rows,
                                const std::string& file, const std::string& meta);

} // namespace fbmjump
