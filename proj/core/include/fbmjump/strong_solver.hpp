#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "fbmjump/fbm.hpp"
#include "fbmjump/girsanov.hpp"
#include "fbmjump/grid_function.hpp"
#include "fbmjump/point_process.hpp"

namespace fbmjump {

enum class MollifierFamily { poly_bump, cos_bump };

struct SolverConfig {
  double truncation_radius = 16.0; // R
  double mollifier_scale = 0.25;   // delta_1; the j-th mollifier uses delta_1/j
  std::size_t n_start = 1;         // first index of the outer (n) sequence
  std::size_t n_max = 5;           // last outer index tried
  std::size_t k_extra = 24;        // inner (k) iterations allowed past n
  double tolerance = 1e-3;         // sup-norm stopping threshold (twice in a row)
  double ledger_slack = 1e-8;      // monotonicity slack for the exact-min construction
  MollifierFamily family = MollifierFamily::poly_bump;
  double sigma = 1.0;              // noise scale on B^H
};

struct LedgerEntry {
  std::size_t n_index, k_index;
  double sup_change;          // sup |X_new - X_prev| within the sweep
  double monotone_margin;     // >= -slack when the scheme behaves
  bool k_step;                // true: inner (downward) step, false: outer (upward)
};

struct PathSolution {
  GridFunction x_path;
  GridFunction noise_path; // sigma * B^H on the grid
  GridFunction jump_level; // L on the grid (snapped)
  enum class Scheme { euler, monotone } scheme = Scheme::euler;
  double residual = 0.0; // max defect of the integral equation (trapezoid re-evaluation)
  std::vector<LedgerEntry> ledger;
};

// Explicit left-point Euler stepping on the fBM grid with jumps applied at
// their (snapped) times. Throws divergence_error on non-finite state.
PathSolution solve_pathwise_euler(const DriftSpec& b, const FbmPath& fbm, const JumpPath& jumps,
                                  double x0, const SolverConfig& cfg);

// b_R(t,x) = b(t, clamp(x, -R, R)); records the uniform bound sup_{|x|<=R}|b|.
DriftSpec truncate_drift(const DriftSpec& b, double R);

// Convolution in x with a compactly supported unit-mass bump of width delta
// (Gauss quadrature); preserves bound and Hoelder metadata.
DriftSpec mollify_drift(const DriftSpec& b, double delta,
                        MollifierFamily family = MollifierFamily::poly_bump);

// Monotone approximation: solves with btilde_{n,k} = min_{j=n..k} b_j
// (pointwise lazy min over mollifier indices), k increasing until the path
// stabilizes, then n increasing likewise. The ledger records the required
// monotonicity (k-steps non-increasing, n-steps non-decreasing); a violation
// beyond the slack throws scheme_violation_error.
PathSolution monotone_solve(const DriftSpec& b, const FbmPath& fbm, const JumpPath& jumps,
                            double x0, const SolverConfig& cfg);

// A-priori sup bound (|x0| + ||B||_inf + C T + |L|_T) e^{CT} for drift bound C.
double apriori_sup_bound(double x0, const GridFunction& noise_path, const JumpPath& jumps,
                         double drift_bound, double T);

void write_solution_csv(const PathSolution& sol, const std::string& file, const std::string& meta);
void write_ledger_csv(const PathSolution& sol, const std::string& file);

} // namespace fbmjump
