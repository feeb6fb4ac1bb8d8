#include "fbmjump/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fbmjump/errors.hpp"
#include "fbmjump/strong_solver.hpp"

namespace fbmjump {

KrylovConstants krylov_constants(HurstParam H, double T, double gamma, double alpha,
                                 const std::vector<GridFunction>& v_samples) {
  if (!(gamma > 1.0 + H.h)) throw domain_error("krylov_constants needs gamma > 1 + H");
  if (!(alpha > 1.0)) throw domain_error("krylov_constants needs alpha > 1");
  KrylovConstants c{};
  c.alpha = alpha;
  c.beta = alpha / (alpha - 1.0);
  c.gamma = gamma;
  c.gamma_p = gamma / (gamma - 1.0);

  const double gp = c.gamma_p;
  const double expo = 1.0 + (1.0 - gp) * H.h;
  if (!(expo > 0.0)) throw domain_error("krylov_constants: T-exponent must stay positive");
  c.J = std::pow(2.0 * M_PI, 0.5 * (1.0 - gp)) * std::pow(T, expo) / (std::sqrt(gp) * expo);

  long double sum = 0.0L, sumsq = 0.0L;
  if (v_samples.empty()) throw invalid_input("krylov_constants needs v samples");
  for (const auto& v : v_samples) {
    const double h = v.spacing();
    double q = 0.0;
    for (std::size_t j = 0; j + 1 < v.size(); ++j) q += v[j] * v[j];
    const double y = std::exp(2.0 * alpha * alpha * q * h);
    sum += y;
    sumsq += static_cast<long double>(y) * y;
  }
  const double m = static_cast<double>(v_samples.size());
  const double mean = static_cast<double>(sum / m);
  const double var = static_cast<double>(std::max(0.0L, (sumsq - sum * sum / m) / (m - 1.0))) / m;
  c.K = std::sqrt(mean);
  c.K_stderr = c.K > 0.0 ? 0.5 * std::sqrt(var) / c.K : 0.0;
  const double k_cons = c.K + 2.0 * c.K_stderr;
  c.G = std::pow(c.J, 1.0 / (gp * c.beta)) * std::pow(k_cons, 1.0 / alpha);
  return c;
}

double g_norm(const OccupationTestFn& g, double p, std::size_t nodes) {
  const double dt = (g.t_hi - g.t_lo) / static_cast<double>(nodes);
  const double dx = (g.x_hi - g.x_lo) / static_cast<double>(nodes);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double t = g.t_lo + dt * (static_cast<double>(i) + 0.5);
    for (std::size_t k = 0; k < nodes; ++k) {
      const double x = g.x_lo + dx * (static_cast<double>(k) + 0.5);
      acc += std::pow(g.g(t, x), p);
    }
  }
  return std::pow(static_cast<double>(acc) * dt * dx, 1.0 / p);
}

KrylovReport krylov_check(const DriftSpec& b, HurstParam H, const CompoundPoissonSpec& spec,
                          const OccupationTestFn& g, double x0, std::size_t m,
                          std::uint64_t seed, std::size_t n_grid, const KrylovConstants& consts) {
  if (!b.bound) throw invalid_input("krylov_check needs a bounded drift (truncate first)");
  const double T = spec.horizon;
  SolverConfig cfg;
  cfg.sigma = 1.0;

  long double sum = 0.0L, sumsq = 0.0L;
  for (std::size_t i = 0; i < m; ++i) {
    const auto fbm = sample_fbm(H, T, n_grid, FbmMethod::circulant, stream_seed(seed, 300 + i));
    const auto jumps = sample_jump_path(spec, stream_seed(seed, 600000 + i));
    const auto sol = solve_pathwise_euler(b, fbm, jumps, x0, cfg);
    const double h = sol.x_path.spacing();
    double integral = 0.0;
    for (std::size_t j = 0; j + 1 < sol.x_path.size(); ++j)
      integral += g.g(sol.x_path.time(j), sol.x_path[j]) * h;
    sum += integral;
    sumsq += static_cast<long double>(integral) * integral;
  }
  const double md = static_cast<double>(m);
  KrylovReport rep;
  rep.g_id = g.id;
  rep.lhs = static_cast<double>(sum / md);
  const double var =
      static_cast<double>(std::max(0.0L, (sumsq - sum * sum / md) / (md - 1.0))) / md;
  rep.lhs_stderr = std::sqrt(var);
  rep.rhs = consts.G * g_norm(g, consts.beta * consts.gamma);
  rep.pass = rep.lhs <= rep.rhs + 3.0 * rep.lhs_stderr;
  return rep;
}

void write_krylov_csv(const std::vector<KrylovReport>& reports, const std::string& file,
                      const std::string& meta) {
  std::ofstream out(file);
  if (!out) throw invalid_input("cannot open for writing: " + file);
  if (!meta.empty()) out << "# " << meta << "\n";
  out << "g_id,lhs,stderr,rhs,pass\n";
  for (const auto& r : reports)
    out << r.g_id << "," << format_full(r.lhs) << "," << format_full(r.lhs_stderr) << ","
        << format_full(r.rhs) << "," << (r.pass ? 1 : 0) << "\n";
}

} // namespace fbmjump
