#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "fbmjump/rng.hpp"

namespace fbmjump {

// Jump-size law. Families are restricted to those with closed-form E e^{b|U|}
// so the moment identities are exact.
struct JumpDistribution {
  enum class Family { constant, gaussian, exponential, two_point };
  Family family = Family::constant;
  // constant: p1 = value
  // gaussian: p1 = mean, p2 = stddev
  // exponential: p1 = rate (law on (0,inf))
  // two_point: p1 = value a, p2 = value b, p3 = P(U = a)
  double p1 = 1.0, p2 = 0.0, p3 = 0.5;

  static JumpDistribution constant(double value);
  static JumpDistribution gaussian(double mean, double stddev);
  static JumpDistribution exponential(double rate);
  static JumpDistribution two_point(double a, double b, double prob_a);

  double sample(Rng& rng) const;
  double mean_abs() const;      // E|U|
  double second_abs() const;    // E U^2
  double exp_moment(double beta) const; // E e^{beta |U|}, beta >= 0
  std::string describe() const;
};

struct CompoundPoissonSpec {
  double lambda = 1.0; // >= 0; zero gives the empty path a.s.
  JumpDistribution jumps;
  double horizon = 1.0;
  void validate() const;
};

// Realized path of the compound Poisson process: ordered jump times in (0,T)
// with sizes; L_t = sum_{sigma_i <= t} dL_i is cadlag.
struct JumpPath {
  std::vector<double> times; // strictly increasing, in (0,T)
  std::vector<double> sizes;
  double horizon = 1.0;

  JumpPath() = default;
  JumpPath(std::vector<double> times, std::vector<double> sizes, double horizon);

  std::size_t count() const { return times.size(); }
  double level(double t) const;           // L_t, cadlag
  double variation(double t) const;       // |L|_t = sum_{sigma_i <= t} |dL_i|
  // cumulative level on each point of a uniform grid, jumps snapped to the
  // first grid point >= sigma_i
  std::vector<double> levels_on_grid(double t0, double t1, std::size_t n) const;
  // snapped grid indices of the jump times (deduplicated, ascending)
  std::vector<std::size_t> grid_break_indices(double t0, double t1, std::size_t n) const;
};

JumpPath sample_jump_path(const CompoundPoissonSpec& spec, std::uint64_t seed);

double total_variation(const JumpPath& path, double t);

// Closed form of E{ int_0^T |L|_t^2 dt + e^{beta |L|_T} }:
//   (lambda E|U|)^2 T^3/3 + lambda E U^2 T^2/2 + exp(lambda T (E e^{beta|U|} - 1))
double moment_functional(const CompoundPoissonSpec& spec, double beta);

void write_jump_csv(const JumpPath& path, const std::string& file, std::uint64_t seed);

} // namespace fbmjump
