#include "fbmjump/strong_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>

#include "fbmjump/errors.hpp"

namespace fbmjump {
namespace {

// 32-point Gauss-Legendre on [-1,1] (positive half; mirrored)
const double kGx[16] = {0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
                        0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
                        0.5877157572407623290, 0.6630442669302152009, 0.7321821187402896804,
                        0.7944837959679424069, 0.8493676137325699701, 0.8963211557660521240,
                        0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354,
                        0.9972638618494815635};
const double kGw[16] = {0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
                        0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
                        0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
                        0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
                        0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
                        0.0070186100094700966};

double bump_value(MollifierFamily fam, double u) {
  switch (fam) {
    case MollifierFamily::poly_bump: {
      const double w = 1.0 - u * u;
      return 0.9375 * w * w; // 15/16 (1-u^2)^2 on [-1,1]
    }
    case MollifierFamily::cos_bump:
      return 0.25 * M_PI * std::cos(0.5 * M_PI * u);
  }
  return 0.0;
}

std::vector<double> euler_path(const std::function<double(double, double)>& b,
                               const GridFunction& noise, const std::vector<double>& jump_level,
                               double x0) {
  const std::size_t n = noise.size();
  const double h = noise.spacing();
  std::vector<double> x(n);
  x[0] = x0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double t = noise.time(j);
    x[j + 1] = x[j] + b(t, x[j]) * h + (noise[j + 1] - noise[j]) -
               (jump_level[j + 1] - jump_level[j]);
    if (!std::isfinite(x[j + 1])) throw divergence_error("Euler step produced NaN/Inf", j + 1);
  }
  return x;
}

double integral_residual(const std::function<double(double, double)>& b,
                         const std::vector<double>& x, const GridFunction& noise,
                         const std::vector<double>& jump_level, double x0) {
  // defect of X_t = x0 + int b + noise - L, re-quadratured with the trapezoid rule
  const std::size_t n = x.size();
  const double h = noise.spacing();
  double worst = 0.0, acc = 0.0;
  std::vector<double> bv(n);
  for (std::size_t j = 0; j < n; ++j) bv[j] = b(noise.time(j), x[j]);
  for (std::size_t j = 1; j < n; ++j) {
    acc += 0.5 * h * (bv[j - 1] + bv[j]);
    const double defect = x[j] - x0 - acc - noise[j] + jump_level[j];
    worst = std::max(worst, std::abs(defect));
  }
  return worst;
}

} // namespace

PathSolution solve_pathwise_euler(const DriftSpec& b, const FbmPath& fbm, const JumpPath& jumps,
                                  double x0, const SolverConfig& cfg) {
  if (std::abs(fbm.path.t1() - jumps.horizon) > 1e-12 * std::max(1.0, jumps.horizon))
    throw invalid_input("solver: fBM and jump horizons differ");
  const std::size_t n = fbm.path.size();
  std::vector<double> noise_vals(n);
  for (std::size_t j = 0; j < n; ++j) noise_vals[j] = cfg.sigma * fbm.path[j];
  GridFunction noise(fbm.path.t0(), fbm.path.t1(), std::move(noise_vals));
  const auto L = jumps.levels_on_grid(noise.t0(), noise.t1(), n);

  auto x = euler_path(b.b, noise, L, x0);
  PathSolution sol;
  sol.residual = integral_residual(b.b, x, noise, L, x0);
  sol.x_path = GridFunction(noise.t0(), noise.t1(), std::move(x));
  sol.jump_level = GridFunction(noise.t0(), noise.t1(), std::vector<double>(L));
  sol.noise_path = std::move(noise);
  sol.scheme = PathSolution::Scheme::euler;
  return sol;
}

DriftSpec truncate_drift(const DriftSpec& spec, double R) {
  if (!(R > 0.0)) throw invalid_input("truncation radius must be > 0");
  DriftSpec out = spec;
  auto inner = spec.b;
  out.b = [inner, R](double t, double x) { return inner(t, std::clamp(x, -R, R)); };
  // record the uniform bound on a scan grid
  double bound = 0.0;
  for (int it = 0; it <= 40; ++it)
    for (int ix = 0; ix <= 160; ++ix) {
      const double t = it / 40.0;
      const double x = -R + 2.0 * R * ix / 160.0;
      bound = std::max(bound, std::abs(inner(t, x)));
    }
  out.bound = bound;
  out.requires_truncation = false;
  out.label = spec.label + "|R=" + std::to_string(R);
  return out;
}

DriftSpec mollify_drift(const DriftSpec& spec, double delta, MollifierFamily family) {
  if (!(delta > 0.0)) throw invalid_input("mollifier width must be > 0");
  DriftSpec out = spec;
  auto inner = spec.b;
  // normalize by the discrete quadrature mass so constants pass through exactly
  double mass = 0.0;
  for (int q = 0; q < 16; ++q)
    mass += kGw[q] * (bump_value(family, kGx[q]) + bump_value(family, -kGx[q]));
  out.b = [inner, delta, family, mass](double t, double x) {
    double acc = 0.0;
    for (int q = 0; q < 16; ++q) {
      const double u = kGx[q];
      acc += kGw[q] * (bump_value(family, u) * inner(t, x - delta * u) +
                       bump_value(family, -u) * inner(t, x + delta * u));
    }
    return acc / mass;
  };
  out.label = spec.label + "|moll";
  return out;
}

double apriori_sup_bound(double x0, const GridFunction& noise_path, const JumpPath& jumps,
                         double drift_bound, double T) {
  double sup_noise = 0.0;
  for (std::size_t j = 0; j < noise_path.size(); ++j)
    sup_noise = std::max(sup_noise, std::abs(noise_path[j]));
  return (std::abs(x0) + sup_noise + drift_bound * T + jumps.variation(jumps.horizon)) *
         std::exp(drift_bound * T);
}

PathSolution monotone_solve(const DriftSpec& b, const FbmPath& fbm, const JumpPath& jumps,
                            double x0, const SolverConfig& cfg) {
  DriftSpec base = b;
  if (!base.bound) base = truncate_drift(b, cfg.truncation_radius);

  const std::size_t n = fbm.path.size();
  std::vector<double> noise_vals(n);
  for (std::size_t j = 0; j < n; ++j) noise_vals[j] = cfg.sigma * fbm.path[j];
  GridFunction noise(fbm.path.t0(), fbm.path.t1(), std::move(noise_vals));
  const auto L = jumps.levels_on_grid(noise.t0(), noise.t1(), n);

  // mollifier ladder b_j, widths delta_1/j
  const std::size_t j_max = cfg.n_max + cfg.k_extra + 1;
  std::vector<DriftSpec> ladder;
  ladder.reserve(j_max);
  for (std::size_t j = 1; j <= j_max; ++j)
    ladder.push_back(mollify_drift(base, cfg.mollifier_scale / static_cast<double>(j), cfg.family));

  auto btilde = [&](std::size_t lo, std::size_t hi) {
    return [&, lo, hi](double t, double x) {
      double m = ladder[lo - 1](t, x);
      for (std::size_t j = lo + 1; j <= hi; ++j) m = std::min(m, ladder[j - 1](t, x));
      return m;
    };
  };

  PathSolution sol;
  sol.scheme = PathSolution::Scheme::monotone;
  std::vector<double> x_prev_n;
  std::vector<double> x_final;

  for (std::size_t nn = cfg.n_start; nn <= cfg.n_max; ++nn) {
    std::vector<double> x_prev_k;
    std::size_t quiet = 0;
    for (std::size_t kk = nn; kk <= nn + cfg.k_extra; ++kk) {
      auto x = euler_path(btilde(nn, kk), noise, L, x0);
      if (!x_prev_k.empty()) {
        double sup_change = 0.0, margin = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          sup_change = std::max(sup_change, std::abs(x[j] - x_prev_k[j]));
          margin = std::max(margin, x[j] - x_prev_k[j]); // must be <= slack (downward)
        }
        sol.ledger.push_back({nn, kk, sup_change, margin, true});
        if (margin > cfg.ledger_slack)
          throw scheme_violation_error("monotone scheme: k-step increased the path by " +
                                       std::to_string(margin));
        quiet = (sup_change < cfg.tolerance) ? quiet + 1 : 0;
      }
      x_prev_k = std::move(x);
      if (quiet >= 2) break;
    }
    if (!x_prev_n.empty()) {
      double sup_change = 0.0, margin = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        sup_change = std::max(sup_change, std::abs(x_prev_k[j] - x_prev_n[j]));
        margin = std::min(margin, x_prev_k[j] - x_prev_n[j]); // must be >= -slack (upward)
      }
      sol.ledger.push_back({nn, 0, sup_change, margin, false});
      if (margin < -cfg.tolerance)
        throw scheme_violation_error("monotone scheme: n-step decreased the path by " +
                                     std::to_string(-margin));
      if (sup_change < cfg.tolerance) {
        x_final = std::move(x_prev_k);
        break;
      }
    }
    x_prev_n = std::move(x_prev_k);
    x_final = x_prev_n;
  }

  sol.residual = integral_residual(base.b, x_final, noise, L, x0);
  sol.x_path = GridFunction(noise.t0(), noise.t1(), std::move(x_final));
  sol.jump_level = GridFunction(noise.t0(), noise.t1(), std::vector<double>(L));
  sol.noise_path = std::move(noise);
  return sol;
}

void write_solution_csv(const PathSolution& sol, const std::string& file,
                        const std::string& meta) {
  std::ofstream out(file);
  if (!out) throw invalid_input("cannot open for writing: " + file);
  if (!meta.empty()) out << "# " << meta << "\n";
  out << "time,X,noise,L\n";
  for (std::size_t j = 0; j < sol.x_path.size(); ++j)
    out << format_full(sol.x_path.time(j)) << "," << format_full(sol.x_path[j]) << ","
        << format_full(sol.noise_path[j]) << "," << format_full(sol.jump_level[j]) << "\n";
}

void write_ledger_csv(const PathSolution& sol, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw invalid_input("cannot open for writing: " + file);
  out << "n,k,sup_change,monotone_margin,k_step\n";
  for (const auto& e : sol.ledger)
    out << e.n_index << "," << e.k_index << "," << format_full(e.sup_change) << ","
        << format_full(e.monotone_margin) << "," << (e.k_step ? 1 : 0) << "\n";
}

} // namespace fbmjump
