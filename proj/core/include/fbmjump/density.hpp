#pragma once
#include <cstddef>

#include "fbmjump/fbm.hpp"
#include "fbmjump/point_process.hpp"

namespace fbmjump {

// Parameters of the drift-free transition density of X_t = x0 + B^H_t - L_t:
// a Gaussian of variance t^{2H} mixed over the compound-Poisson law of L_t,
// including the zero-jump (pure Gaussian) term so the mixture has unit mass.
struct DensityParams {
  double t = 1.0;
  double x0 = 0.0;
  double hurst = 0.5;
  CompoundPoissonSpec spec;
  double poisson_tail = 1e-12; // series truncated when the tail mass drops below this
};

double transition_density(const DensityParams& p, double y);

// Number of Poisson terms kept for the given parameters.
std::size_t density_terms(const DensityParams& p);

// Quadrature of the density over [lo,hi] (trapezoid at `points` nodes).
double density_mass(const DensityParams& p, double lo, double hi, std::size_t points = 20001);

} // namespace fbmjump
