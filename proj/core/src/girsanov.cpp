#include "fbmjump/girsanov.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fbmjump/errors.hpp"
#include "fbmjump/frac_calc.hpp"
#include "fbmjump/special_functions.hpp"

namespace fbmjump {

void validate_drift(const DriftSpec& spec, HurstParam H, double T, std::uint64_t seed) {
  if (!spec.b) throw invalid_input("DriftSpec has no coefficient");
  if (H.h < 0.5 && spec.regime == DriftSpec::Regime::high_h)
    throw invalid_input("drift regime high_h is inconsistent with H < 1/2");
  if (H.h > 0.5 && spec.regime == DriftSpec::Regime::low_h)
    throw invalid_input("drift regime low_h is inconsistent with H > 1/2");

  Rng rng(stream_seed(seed, 0x7a));
  const int trials = 200;
  if (H.h < 0.5) {
    if (!(spec.rho > 0.0) || !(spec.rho < 0.5))
      throw invalid_input("low-H drift needs growth exponent rho in (0,1/2)");
    for (int i = 0; i < trials; ++i) {
      const double t = T * rng.uniform();
      const double x = 20.0 * (rng.uniform() - 0.5) * 10.0;
      if (std::abs(spec.b(t, x)) > spec.k * (1.0 + std::pow(std::abs(x), spec.rho)) + 1e-9)
        throw invalid_input("drift violates the declared growth bound k(1+|x|^rho)");
    }
  } else if (H.h > 0.5) {
    if (!(spec.gamma > H.h - 0.5))
      throw invalid_input("high-H drift needs gamma > H - 1/2");
    if (!(spec.alpha > 1.0 - 1.0 / (2.0 * H.h)) || !(spec.alpha < 1.0))
      throw invalid_input("high-H drift needs alpha in (1 - 1/(2H), 1)");
    for (int i = 0; i < trials; ++i) {
      const double t = T * rng.uniform(), s = T * rng.uniform();
      const double x = 10.0 * (rng.uniform() - 0.5), y = 10.0 * (rng.uniform() - 0.5);
      const double lhs = std::abs(spec.b(t, x) - spec.b(s, y));
      const double rhs = spec.k * (std::pow(std::abs(x - y), spec.alpha) +
                                   std::pow(std::abs(t - s), spec.gamma));
      if (lhs > rhs + 1e-9)
        throw invalid_input("drift violates the declared Hoelder bound");
    }
  }
}

GridFunction drift_u(const DriftSpec& b, const FbmPath& fbm, const JumpPath& jumps, double x0,
                     double sigma) {
  if (std::abs(fbm.path.t1() - jumps.horizon) > 1e-12 * std::max(1.0, jumps.horizon))
    throw invalid_input("drift_u: fBM and jump path horizons differ");
  const auto& B = fbm.path;
  const std::size_t n = B.size();
  const auto L = jumps.levels_on_grid(B.t0(), B.t1(), n);
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j)
    u[j] = -b(B.time(j), sigma * B[j] - L[j] + x0);
  return GridFunction(B.t0(), B.t1(), std::move(u));
}

GridFunction compute_v(const GridFunction& u, HurstParam H, const JumpPath& jumps) {
  u.validate();
  if (std::abs(u.t0()) > 1e-14) throw invalid_input("compute_v needs a grid on [0,T]");
  if (H.is_brownian()) return u;

  const std::size_t n = u.size();
  const double h = u.spacing();
  const double inv_nu = 1.0 / kernel_norm_const(H);
  std::vector<double> inner;
  if (H.h < 0.5) {
    inner = detail::frac_integral_weighted(u.values(), h, 0.5 - H.h, 0.5 - H.h);
  } else {
    const auto breaks = jumps.grid_break_indices(u.t0(), u.t1(), n);
    inner = detail::marchaud_weighted(u.values(), h, H.h - 0.5, 0.5 - H.h, breaks);
  }
  std::vector<double> v(n, 0.0);
  for (std::size_t j = 1; j < n; ++j)
    v[j] = inv_nu * std::pow(h * static_cast<double>(j), H.h - 0.5) * inner[j];
  return GridFunction(u.t0(), u.t1(), std::move(v));
}

PiecewiseV compute_v_pieces(const GridFunction& u, HurstParam H, const JumpPath& jumps) {
  u.validate();
  if (!(H.h > 0.5)) throw invalid_input("compute_v_pieces applies to H > 1/2 only");
  const std::size_t n = u.size();
  const double h = u.spacing();
  const double a = H.h - 0.5;
  const double mu = 0.5 - H.h;
  const double c0 = 1.0 / gamma_fn(1.0 - a);
  const double c2 = a * c0;
  const double inv_nu = 1.0 / kernel_norm_const(H);

  const auto breaks = jumps.grid_break_indices(u.t0(), u.t1(), n);
  std::vector<char> is_break(n, 0);
  for (auto b : breaks) is_break[b] = 1;

  // branch id of each grid index: increments at each break (cadlag)
  std::vector<std::size_t> branch(n, 0);
  for (std::size_t j = 1; j < n; ++j) branch[j] = branch[j - 1] + (is_break[j] ? 1 : 0);
  const std::size_t n_branch = branch.back() + 1;
  std::vector<std::size_t> start(n_branch, 0); // first grid index of each branch
  for (std::size_t j = 1; j < n; ++j)
    if (branch[j] != branch[j - 1]) start[branch[j]] = j;
  // constant-continuation extension value of each branch = its last sample
  std::vector<double> ext(n_branch, 0.0);
  for (std::size_t j = 0; j < n; ++j) ext[branch[j]] = u[j];

  std::vector<double> g(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) g[i] = std::pow(h * static_cast<double>(i), mu) * u[i];

  const auto cw = detail::marchaud_cell_weights(n, h, a, mu);

  std::vector<double> A(n, 0.0), Bv(n, 0.0), v(n, 0.0);
  std::vector<double> maxv(n_branch, 0.0);

  for (std::size_t j = 1; j < n; ++j) {
    const double tj = h * static_cast<double>(j);
    const double tja = std::pow(tj, a);
    const std::size_t k = branch[j];
    const std::size_t E = start[k]; // grid index of sigma_{k-1}

    // A: closed-form boundary block plus the telescoped earlier-branch masses.
    // At a (snapped) jump point the singular touching cell is dropped (eps=h
    // sense), so the telescope stops one cell short there.
    const std::size_t cut = is_break[j] ? j - 1 : E;
    double Aj = c0 * u[j] * std::pow(tj - h * static_cast<double>(cut), -a);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t lo = start[i];
      const std::size_t hi = std::min(i + 1 < n_branch ? start[i + 1] : n, cut);
      if (hi <= lo) continue;
      const double mass = (std::pow(tj - h * static_cast<double>(hi), -a) -
                           std::pow(tj - h * static_cast<double>(lo), -a)) /
                          a;
      Aj -= c2 * ext[i] * mass;
    }

    // B: increment-form product integration, extensions in place of g_j for
    // earlier-branch cells
    double acc = 0.0;
    if (!is_break[j] && j >= 2) acc += (g[j] - g[j - 1]) / h * cw.tail_w;
    for (std::size_t l = 1; l + 1 < j; ++l) {
      const std::size_t L = j - l;
      const double gref =
          (branch[l] == k) ? g[j] : std::pow(tj, mu) * ext[branch[l]];
      const double base = (gref - g[l]) * cw.I0[L];
      if (is_break[l + 1])
        acc += base;
      else
        acc += base - (g[l + 1] - g[l]) * cw.W1[L];
    }
    if (j >= 2) {
      const double gref = (branch[0] == k) ? g[j] : std::pow(tj, mu) * ext[branch[0]];
      acc += gref * cw.I0[j] - u[0] * cw.head[j];
    }
    const double Bj = c2 * tja * acc;

    A[j] = inv_nu * Aj;
    Bv[j] = inv_nu * Bj;
    v[j] = A[j] + Bv[j];
    maxv[k] = std::max(maxv[k], std::abs(v[j]));
  }

  PiecewiseV out{GridFunction(u.t0(), u.t1(), std::move(v)),
                 GridFunction(u.t0(), u.t1(), std::move(A)),
                 GridFunction(u.t0(), u.t1(), std::move(Bv)), std::move(maxv)};
  return out;
}

double girsanov_weight(const GridFunction& v, const WienerPath& w) {
  if (v.size() != w.increments.size() + 1)
    throw invalid_input("girsanov_weight: v and W are on different grids");
  const double h = w.spacing();
  double ito = 0.0, quad = 0.0;
  for (std::size_t j = 0; j + 1 < v.size(); ++j) {
    ito += v[j] * w.increments[j];
    quad += v[j] * v[j];
  }
  return std::exp(-ito - 0.5 * quad * h);
}

WeightedSample sample_weak_solution(const DriftSpec& b, HurstParam H,
                                    const CompoundPoissonSpec& spec, double x0,
                                    std::uint64_t seed, std::size_t n_grid, double sigma) {
  spec.validate();
  if (!(sigma > 0.0)) throw invalid_input("noise scale must be > 0");
  if (H.h < 0.5 && b.regime == DriftSpec::Regime::high_h)
    throw invalid_input("drift regime high_h is inconsistent with H < 1/2");
  if (H.h > 0.5 && b.regime == DriftSpec::Regime::low_h)
    throw invalid_input("drift regime low_h is inconsistent with H > 1/2");
  const double T = spec.horizon;
  const std::size_t n = n_grid;
  const double h = T / static_cast<double>(n - 1);

  Rng rng(stream_seed(seed, 1));
  WienerPath w;
  w.t0 = 0.0;
  w.t1 = T;
  w.increments.resize(n - 1);
  const double sh = std::sqrt(h);
  for (auto& dw : w.increments) dw = sh * rng.normal();

  std::vector<double> B(n, 0.0);
  if (H.is_brownian()) {
    for (std::size_t j = 1; j < n; ++j) B[j] = B[j - 1] + w.increments[j - 1];
  } else {
    const auto& K = kernel_matrix(H, T, n);
    for (std::size_t j = 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < j; ++i) acc += K[j][i] * w.increments[i];
      B[j] = acc;
    }
  }

  JumpPath jumps = sample_jump_path(spec, stream_seed(seed, 2));
  const auto L = jumps.levels_on_grid(0.0, T, n);

  std::vector<double> u(n), x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = x0 + sigma * B[j] - L[j];
    u[j] = -b(h * static_cast<double>(j), x[j]) / sigma;
  }
  GridFunction ug(0.0, T, std::move(u));
  GridFunction v = compute_v(ug, H, jumps);
  const double z = girsanov_weight(v, w);
  if (!std::isfinite(z) || z <= 0.0) throw divergence_error("non-positive Girsanov weight", 0);

  return WeightedSample{GridFunction(0.0, T, std::move(x)), z, std::move(v), std::move(w),
                        std::move(jumps)};
}

NovikovReport novikov_diagnostic(const DriftSpec& b, HurstParam H,
                                 const CompoundPoissonSpec& spec, double x0, std::size_t m,
                                 std::uint64_t seed, std::size_t n_grid) {
  if (m < 100) throw invalid_input("novikov_diagnostic needs m >= 100");
  NovikovReport rep;
  long double sum = 0.0L, sumsq = 0.0L, sum_tenth = 0.0L;
  const std::size_t tenth = m / 10;
  bool overflow = false;
  for (std::size_t i = 0; i < m; ++i) {
    WeightedSample ws = sample_weak_solution(b, H, spec, x0, stream_seed(seed, 100 + i), n_grid);
    const double h = ws.v_path.spacing();
    double q = 0.0;
    for (std::size_t j = 0; j + 1 < ws.v_path.size(); ++j) q += ws.v_path[j] * ws.v_path[j];
    const double val = std::exp(0.5 * q * h);
    if (!std::isfinite(val)) {
      overflow = true;
      continue;
    }
    sum += val;
    sumsq += static_cast<long double>(val) * val;
    if (i < tenth) sum_tenth += val;
  }
  const double md = static_cast<double>(m);
  rep.estimate = static_cast<double>(sum / md);
  const double var = std::max(0.0L, (sumsq - sum * sum / md) / (md - 1.0)) / md;
  rep.stderr_ = std::sqrt(static_cast<double>(var));
  rep.estimate_tenth = tenth > 0 ? static_cast<double>(sum_tenth / tenth) : rep.estimate;
  const double ratio = rep.estimate_tenth > 0.0 ? rep.estimate / rep.estimate_tenth : 0.0;
  rep.stable = !overflow && ratio > 1.0 / 3.0 && ratio < 3.0;
  return rep;
}

std::pair<double, double> weighted_expectation(const std::vector<WeightedSample>& samples,
                                               const std::function<double(double)>& phi) {
  if (samples.empty()) throw invalid_input("weighted_expectation needs a nonempty sample list");
  long double sum = 0.0L, sumsq = 0.0L;
  for (const auto& s : samples) {
    const double y = s.weight * phi(s.x_path[s.x_path.size() - 1]);
    sum += y;
    sumsq += static_cast<long double>(y) * y;
  }
  const double m = static_cast<double>(samples.size());
  const double mean = static_cast<double>(sum / m);
  const double var = std::max(0.0L, (sumsq - sum * sum / m) / (m - 1.0)) / m;
  return {mean, std::sqrt(static_cast<double>(var))};
}

void write_weighted_samples_csv(const std::vector<std::pair<std::uint64_t, WeightedSample>>& rows,
                                const std::string& file, const std::string& meta) {
  std::ofstream out(file);
  if (!out) throw invalid_input("cannot open for writing: " + file);
  if (!meta.empty()) out << "# " << meta << "\n";
  out << "seed,X_T,weight,logZ,max_abs_v\n";
  for (const auto& [seed, ws] : rows) {
    double maxv = 0.0;
    for (std::size_t j = 0; j < ws.v_path.size(); ++j)
      maxv = std::max(maxv, std::abs(ws.v_path[j]));
    out << seed << "," << format_full(ws.x_path[ws.x_path.size() - 1]) << ","
        << format_full(ws.weight) << "," << format_full(std::log(ws.weight)) << ","
        << format_full(maxv) << "\n";
  }
}

} // namespace fbmjump
