#pragma once
#include <cstdint>
#include <functional>
#include <string>

#include "fbmjump/fbm.hpp"
#include "fbmjump/girsanov.hpp"
#include "fbmjump/point_process.hpp"

namespace fbmjump {

// Perturbed insurance reserve model: the drift is b(t,x) = r x + c (1 + rho(t,x)).
struct ReserveSpec {
  double x0 = 1.0;          // initial surplus, >= 0
  double premium_rate = 1.0; // c > 0
  double interest_rate = 0.0; // r >= 0
  std::function<double(double, double)> safety_loading; // rho(t,x) > -1
  double sigma = 1.0;       // noise scale
  double horizon = 1.0;
  void validate() const;
};

// Builds the DriftSpec with regularity metadata inferred from the loading
// (Lipschitz constant estimated on a scan grid; Hoelder exponent capped
// below 1). r > 0 exceeds the admissible growth, so the result is flagged
// requires_truncation and solvers clamp it with R-doubling.
DriftSpec reserve_drift(const ReserveSpec& spec);

struct RuinEstimate {
  double probability = 0.0;
  double stderr_ = 0.0;
  std::size_t m = 0;
  std::size_t ruined = 0;
  double tau_mean = 0.0; // over ruined paths; 0 when none
  double tau_min = 0.0;
  double tau_max = 0.0;
};

// Monte Carlo fraction of strong-solution paths whose grid minimum (jump
// times snapped onto the grid, so post-claim values are checked) drops
// below zero. Crossings strictly between grid points are missed by
// construction; refine the grid to bound the effect.
RuinEstimate ruin_probability(const ReserveSpec& spec, HurstParam H,
                              const CompoundPoissonSpec& jumps, std::size_t m,
                              std::uint64_t seed, std::size_t n_grid);

void write_ruin_csv(const RuinEstimate& est, const std::string& file, const std::string& meta);

} // namespace fbmjump
