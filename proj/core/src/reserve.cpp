#include "fbmjump/reserve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fbmjump/errors.hpp"
#include "fbmjump/strong_solver.hpp"

namespace fbmjump {

void ReserveSpec::validate() const {
  if (x0 < 0.0) throw invalid_input("initial surplus must be >= 0");
  if (!(premium_rate > 0.0)) throw invalid_input("premium rate must be > 0");
  if (interest_rate < 0.0) throw invalid_input("interest rate must be >= 0");
  if (!(sigma > 0.0)) throw invalid_input("noise scale must be > 0");
  if (!(horizon > 0.0)) throw invalid_input("horizon must be > 0");
  if (safety_loading) {
    for (int it = 0; it <= 20; ++it)
      for (int ix = -20; ix <= 20; ++ix) {
        const double t = horizon * it / 20.0;
        const double x = x0 + ix * std::max(1.0, x0) / 4.0;
        if (!(safety_loading(t, x) > -1.0 + 1e-9))
          throw invalid_input("safety loading must stay above -1");
      }
  }
}

DriftSpec reserve_drift(const ReserveSpec& spec) {
  spec.validate();
  const double r = spec.interest_rate, c = spec.premium_rate;
  auto rho = spec.safety_loading;
  DriftSpec out;
  out.b = [r, c, rho](double t, double x) {
    return r * x + c * (1.0 + (rho ? rho(t, x) : 0.0));
  };
  out.regime = DriftSpec::Regime::both;
  out.label = "reserve";
  // Lipschitz-in-x estimate of the loading on a scan grid
  double lip = 0.0;
  if (rho) {
    const double dx = 1e-4 * std::max(1.0, spec.x0);
    for (int it = 0; it <= 20; ++it)
      for (int ix = -40; ix <= 40; ++ix) {
        const double t = spec.horizon * it / 20.0;
        const double x = spec.x0 + ix * std::max(1.0, spec.x0) / 8.0;
        lip = std::max(lip, std::abs(rho(t, x + dx) - rho(t, x - dx)) / (2.0 * dx));
      }
  }
  out.k = r + c * lip + c;
  out.rho = 0.49;            // bounded-plus-linear growth fits any admissible exponent
  out.alpha = 0.99;          // Lipschitz regularity capped below 1
  out.gamma = 1.0;
  out.requires_truncation = (r > 0.0);
  if (r == 0.0) {
    // scan estimate of sup |b| (loading is required to be bounded here)
    double bound = 0.0;
    for (int it = 0; it <= 20; ++it)
      for (int ix = -60; ix <= 60; ++ix)
        bound = std::max(bound, std::abs(out.b(spec.horizon * it / 20.0,
                                               spec.x0 + ix * std::max(1.0, spec.x0) / 4.0)));
    out.bound = bound;
  }
  return out;
}

RuinEstimate ruin_probability(const ReserveSpec& spec, HurstParam H,
                              const CompoundPoissonSpec& jumps, std::size_t m,
                              std::uint64_t seed, std::size_t n_grid) {
  if (m < 100) throw invalid_input("ruin_probability needs m >= 100");
  spec.validate();
  DriftSpec drift = reserve_drift(spec);
  const double T = spec.horizon;

  SolverConfig cfg;
  cfg.sigma = spec.sigma;

  RuinEstimate est;
  est.m = m;
  double tau_sum = 0.0;
  est.tau_min = T;
  est.tau_max = 0.0;

  for (std::size_t i = 0; i < m; ++i) {
    const auto fbm = sample_fbm(H, T, n_grid, FbmMethod::circulant, stream_seed(seed, 1000 + i));
    const auto path = sample_jump_path(jumps, stream_seed(seed, 5000000 + i));

    // R-doubling: clamp, solve, and re-solve wider whenever the path reached
    // the truncation radius (agreement on the pre-exit segment is automatic
    // by pathwise uniqueness of the clamped drift).
    double R = 4.0 * (std::abs(spec.x0) + drift.k * T + 4.0);
    PathSolution sol;
    for (int attempt = 0; attempt < 8; ++attempt) {
      DriftSpec clamped = drift.requires_truncation ? truncate_drift(drift, R) : drift;
      sol = solve_pathwise_euler(clamped, fbm, path, spec.x0, cfg);
      if (!drift.requires_truncation) break;
      double sup = 0.0;
      for (std::size_t j = 0; j < sol.x_path.size(); ++j)
        sup = std::max(sup, std::abs(sol.x_path[j]));
      if (sup < R * 0.999) break;
      R *= 2.0;
    }

    double tau = -1.0;
    for (std::size_t j = 0; j < sol.x_path.size(); ++j)
      if (sol.x_path[j] < 0.0) {
        tau = sol.x_path.time(j);
        break;
      }
    if (tau >= 0.0) {
      ++est.ruined;
      tau_sum += tau;
      est.tau_min = std::min(est.tau_min, tau);
      est.tau_max = std::max(est.tau_max, tau);
    }
  }
  est.probability = static_cast<double>(est.ruined) / static_cast<double>(m);
  est.stderr_ = std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(m));
  est.tau_mean = est.ruined ? tau_sum / static_cast<double>(est.ruined) : 0.0;
  if (!est.ruined) {
    est.tau_min = 0.0;
    est.tau_max = 0.0;
  }
  return est;
}

void write_ruin_csv(const RuinEstimate& est, const std::string& file, const std::string& meta) {
  std::ofstream out(file);
  if (!out) throw invalid_input("cannot open for writing: " + file);
  if (!meta.empty()) out << "# " << meta << "\n";
  out << "probability,stderr,m,ruined,tau_mean,tau_min,tau_max\n";
  out << format_full(est.probability) << "," << format_full(est.stderr_) << "," << est.m << ","
      << est.ruined << "," << format_full(est.tau_mean) << "," << format_full(est.tau_min) << ","
      << format_full(est.tau_max) << "\n";
}

} // namespace fbmjump
