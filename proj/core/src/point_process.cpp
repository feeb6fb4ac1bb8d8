#include "fbmjump/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "fbmjump/errors.hpp"
#include "fbmjump/grid_function.hpp"

namespace fbmjump {

namespace {
double phi_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }
} // namespace

JumpDistribution JumpDistribution::constant(double value) {
  return {Family::constant, value, 0.0, 0.0};
}
JumpDistribution JumpDistribution::gaussian(double mean, double stddev) {
  if (!(stddev > 0.0)) throw invalid_input("gaussian jump law needs stddev > 0");
  return {Family::gaussian, mean, stddev, 0.0};
}
JumpDistribution JumpDistribution::exponential(double rate) {
  if (!(rate > 0.0)) throw invalid_input("exponential jump law needs rate > 0");
  return {Family::exponential, rate, 0.0, 0.0};
}
JumpDistribution JumpDistribution::two_point(double a, double b, double prob_a) {
  if (!(prob_a >= 0.0 && prob_a <= 1.0)) throw invalid_input("two_point needs prob in [0,1]");
  return {Family::two_point, a, b, prob_a};
}

double JumpDistribution::sample(Rng& rng) const {
  switch (family) {
    case Family::constant: return p1;
    case Family::gaussian: return p1 + p2 * rng.normal();
    case Family::exponential: return rng.exponential(p1);
    case Family::two_point: return rng.uniform() < p3 ? p1 : p2;
  }
  return 0.0;
}

double JumpDistribution::mean_abs() const {
  switch (family) {
    case Family::constant: return std::abs(p1);
    case Family::gaussian: {
      // folded normal mean
      const double m = p1, s = p2;
      return s * std::sqrt(2.0 / M_PI) * std::exp(-m * m / (2.0 * s * s)) +
             m * (1.0 - 2.0 * phi_cdf(-m / s));
    }
    case Family::exponential: return 1.0 / p1;
    case Family::two_point: return p3 * std::abs(p1) + (1.0 - p3) * std::abs(p2);
  }
  return 0.0;
}

double JumpDistribution::second_abs() const {
  switch (family) {
    case Family::constant: return p1 * p1;
    case Family::gaussian: return p1 * p1 + p2 * p2;
    case Family::exponential: return 2.0 / (p1 * p1);
    case Family::two_point: return p3 * p1 * p1 + (1.0 - p3) * p2 * p2;
  }
  return 0.0;
}

double JumpDistribution::exp_moment(double beta) const {
  if (beta < 0.0) throw domain_error("exp_moment needs beta >= 0");
  if (beta == 0.0) return 1.0;
  switch (family) {
    case Family::constant: return std::exp(beta * std::abs(p1));
    case Family::gaussian: {
      // E e^{beta|U|} for U ~ N(m, s^2), via the two half-lines
      const double m = p1, s = p2;
      const double up = std::exp(beta * m + 0.5 * beta * beta * s * s) * phi_cdf(m / s + beta * s);
      const double dn = std::exp(-beta * m + 0.5 * beta * beta * s * s) * phi_cdf(-m / s + beta * s);
      return up + dn;
    }
    case Family::exponential:
      if (beta >= p1)
        throw unsupported_error("exponential jump law: E e^{beta|U|} diverges for beta >= rate");
      return p1 / (p1 - beta);
    case Family::two_point:
      return p3 * std::exp(beta * std::abs(p1)) + (1.0 - p3) * std::exp(beta * std::abs(p2));
  }
  return 1.0;
}

std::string JumpDistribution::describe() const {
  char buf[96];
  switch (family) {
    case Family::constant: std::snprintf(buf, sizeof buf, "constant:%g", p1); break;
    case Family::gaussian: std::snprintf(buf, sizeof buf, "gaussian:%g,%g", p1, p2); break;
    case Family::exponential: std::snprintf(buf, sizeof buf, "exponential:%g", p1); break;
    case Family::two_point: std::snprintf(buf, sizeof buf, "two-point:%g,%g,%g", p1, p2, p3); break;
  }
  return buf;
}

void CompoundPoissonSpec::validate() const {
  if (lambda < 0.0) throw invalid_input("compound Poisson rate must be >= 0");
  if (!(horizon > 0.0)) throw invalid_input("compound Poisson horizon must be > 0");
}

JumpPath::JumpPath(std::vector<double> t, std::vector<double> s, double T)
    : times(std::move(t)), sizes(std::move(s)), horizon(T) {
  if (times.size() != sizes.size()) throw invalid_input("JumpPath times/sizes length mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || !(times[i] < horizon))
      throw invalid_input("jump times must lie in (0,T)");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw invalid_input("jump times must be strictly increasing");
  }
}

double JumpPath::level(double t) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < times.size() && times[i] <= t; ++i) acc += sizes[i];
  return acc;
}

double JumpPath::variation(double t) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < times.size() && times[i] <= t; ++i) acc += std::abs(sizes[i]);
  return acc;
}

std::vector<double> JumpPath::levels_on_grid(double t0, double t1, std::size_t n) const {
  const double h = (t1 - t0) / static_cast<double>(n - 1);
  std::vector<double> out(n, 0.0);
  double acc = 0.0;
  std::size_t i = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double tj = t0 + h * static_cast<double>(j);
    while (i < times.size() && times[i] <= tj + 1e-12 * h) acc += sizes[i++];
    out[j] = acc;
  }
  // jumps beyond the last grid point (t1 < horizon) stay out by construction
  return out;
}

std::vector<std::size_t> JumpPath::grid_break_indices(double t0, double t1, std::size_t n) const {
  const double h = (t1 - t0) / static_cast<double>(n - 1);
  std::vector<std::size_t> idx;
  for (double s : times) {
    if (s <= t0 || s > t1) continue;
    auto j = static_cast<std::size_t>(std::ceil((s - t0) / h - 1e-12));
    j = std::min(j, n - 1);
    if (idx.empty() || idx.back() != j) idx.push_back(j);
  }
  return idx;
}

JumpPath sample_jump_path(const CompoundPoissonSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(stream_seed(seed, 0x20));
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::uint64_t count = rng.poisson(spec.lambda * spec.horizon);
    std::vector<double> times(count);
    for (auto& t : times) t = spec.horizon * rng.uniform();
    std::sort(times.begin(), times.end());
    const bool distinct = std::adjacent_find(times.begin(), times.end()) == times.end();
    if (!distinct) continue; // measure-zero tie; redraw
    std::vector<double> sizes(count);
    for (auto& s : sizes) s = spec.jumps.sample(rng);
    return JumpPath(std::move(times), std::move(sizes), spec.horizon);
  }
  throw std::runtime_error("sample_jump_path: persistent jump-time ties");
}

double total_variation(const JumpPath& path, double t) {
  if (t < 0.0 || t > path.horizon) throw domain_error("total_variation needs 0 <= t <= T");
  return path.variation(t);
}

double moment_functional(const CompoundPoissonSpec& spec, double beta) {
  spec.validate();
  if (!(beta > 0.0)) throw domain_error("moment_functional needs beta > 0");
  const double l = spec.lambda, T = spec.horizon;
  const double m1 = spec.jumps.mean_abs();
  const double m2 = spec.jumps.second_abs();
  const double em = spec.jumps.exp_moment(beta);
  return (l * m1) * (l * m1) * T * T * T / 3.0 + l * m2 * T * T / 2.0 +
         std::exp(l * T * (em - 1.0));
}

void write_jump_csv(const JumpPath& path, const std::string& file, std::uint64_t seed) {
  std::ofstream out(file);
  if (!out) throw invalid_input("cannot open for writing: " + file);
  out << "# jump path seed=" << seed << " T=" << format_full(path.horizon)
      << " count=" << path.count() << "\n";
  out << "time,size\n";
  for (std::size_t i = 0; i < path.count(); ++i)
    out << format_full(path.times[i]) << "," << format_full(path.sizes[i]) << "\n";
}

} // namespace fbmjump
