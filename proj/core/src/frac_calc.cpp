#include "fbmjump/frac_calc.hpp"

#include <algorithm>
#include <cmath>

#include "fbmjump/errors.hpp"
#include "fbmjump/special_functions.hpp"

namespace fbmjump {
namespace {

void check_grid(const GridFunction& f) {
  if (f.size() < 2) throw invalid_input("grid too short for fractional operator");
  f.validate();
}

// 24-point Gauss-Legendre nodes/weights on [0,1]
struct Gauss24 {
  double x[24], w[24];
  Gauss24() {
    // nodes/weights on [-1,1], symmetric halves
    static const double xs[12] = {0.0640568928626056260850430826247, 0.1911188674736163091586398207553,
                                  0.3150426796961633743867932913198, 0.4337935076260451384870842319133,
                                  0.5454214713888395356583756172183, 0.6480936519369755692524957869107,
                                  0.7401241915785543642438281030999, 0.8200019859739029219539498726697,
                                  0.8864155270044010342131543419821, 0.9382745520027327585236490017087,
                                  0.9747285559713094981983919930081, 0.9951872199970213601799974097007};
    static const double ws[12] = {0.1279381953467521569740561652247, 0.1258374563468282961213753825111,
                                  0.1216704729278033912044631534762, 0.1155056680537256013533444839067,
                                  0.1074442701159656347825773424466, 0.0976186521041138882698806644642,
                                  0.0861901615319532759171852029837, 0.0733464814110803057340336152531,
                                  0.0592985849154367807463677585001, 0.0442774388174198061686026443140,
                                  0.0285313886289336631813078159518, 0.0123412297999871995468056670700};
    for (int i = 0; i < 12; ++i) {
      x[i] = 0.5 * (1.0 - xs[11 - i]);
      w[i] = 0.5 * ws[11 - i];
      x[12 + i] = 0.5 * (1.0 + xs[i]);
      w[12 + i] = 0.5 * ws[i];
    }
  }
};
const Gauss24 kGauss;

// int_0^1 s^mu (j - s)^p ds  via the substitution w = s^{1+mu}
double head_moment(double j, double p, double mu) {
  const double inv = 1.0 / (1.0 + mu);
  double acc = 0.0;
  for (int q = 0; q < 24; ++q) {
    const double s = std::pow(kGauss.x[q], inv);
    acc += kGauss.w[q] * std::pow(j - s, p);
  }
  return acc * inv;
}

} // namespace

namespace detail {

std::vector<double> frac_integral_weighted(const std::vector<double>& phi, double h, double alpha,
                                           double mu) {
  const std::size_t n = phi.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double inv_gamma = 1.0 / gamma_fn(alpha);
  const double h_alpha = std::pow(h, alpha);

  // kernel mass over one cell at lag L: int_{(L-1)h}^{Lh} tau^{alpha-1} dtau
  std::vector<double> mass(n + 1, 0.0);
  for (std::size_t L = 1; L <= n; ++L)
    mass[L] = h_alpha * (std::pow(static_cast<double>(L), alpha) -
                         std::pow(static_cast<double>(L) - 1.0, alpha)) /
              alpha;

  const bool weighted = (mu != 0.0);
  std::vector<double> wv(n, 0.0); // t_i^mu * phi_i for i >= 1
  for (std::size_t i = 1; i < n; ++i)
    wv[i] = (weighted ? std::pow(h * static_cast<double>(i), mu) : 1.0) * phi[i];

  // head-cell weights: int_0^h s^mu (t_j - s)^{alpha-1} ds
  std::vector<double> head(n, 0.0);
  if (weighted) {
    const double hpow = std::pow(h, alpha + mu);
    const double beta01 = gamma_fn(mu + 1.0) * gamma_fn(alpha) / gamma_fn(mu + 1.0 + alpha);
    for (std::size_t j = 1; j < n; ++j)
      head[j] = hpow * (j == 1 ? beta01 : head_moment(static_cast<double>(j), alpha - 1.0, mu));
  }

  for (std::size_t j = 1; j < n; ++j) {
    double acc = weighted ? phi[0] * head[j] : phi[0] * mass[j];
    for (std::size_t i = 1; i < j; ++i) acc += wv[i] * mass[j - i];
    out[j] = acc * inv_gamma;
  }
  return out;
}

MarchaudCellWeights marchaud_cell_weights(std::size_t n, double h, double alpha, double mu) {
  MarchaudCellWeights w;
  w.alpha = alpha;
  w.mu = mu;
  w.h = h;
  w.I0.assign(n + 1, 0.0);
  w.W1.assign(n + 1, 0.0);
  for (std::size_t L = 2; L <= n; ++L) {
    const double lo = (static_cast<double>(L) - 1.0) * h, hi = static_cast<double>(L) * h;
    w.I0[L] = (std::pow(lo, -alpha) - std::pow(hi, -alpha)) / alpha;
    const double I1 = (std::pow(hi, 1.0 - alpha) - std::pow(lo, 1.0 - alpha)) / (1.0 - alpha);
    w.W1[L] = (hi * w.I0[L] - I1) / h;
  }
  w.head.assign(n, 0.0);
  if (mu != 0.0) {
    const double hpow = std::pow(h, mu - alpha);
    for (std::size_t j = 2; j < n; ++j)
      w.head[j] = hpow * head_moment(static_cast<double>(j), -1.0 - alpha, mu);
  }
  w.tail_w = std::pow(h, 1.0 - alpha) / (1.0 - alpha);
  return w;
}

std::vector<double> marchaud_weighted(const std::vector<double>& phi, double h, double alpha,
                                      double mu, const std::vector<std::size_t>& breaks) {
  const std::size_t n = phi.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double c0 = 1.0 / gamma_fn(1.0 - alpha);
  const double c1 = alpha * c0;

  std::vector<char> is_break(n, 0);
  for (std::size_t b : breaks)
    if (b < n) is_break[b] = 1;

  const bool weighted = (mu != 0.0);
  std::vector<double> g(n, 0.0); // t_i^mu * phi_i, i >= 1 (g_0 unused when weighted)
  for (std::size_t i = 1; i < n; ++i)
    g[i] = (weighted ? std::pow(h * static_cast<double>(i), mu) : 1.0) * phi[i];
  if (!weighted) g[0] = phi[0];

  const MarchaudCellWeights cw = marchaud_cell_weights(n, h, alpha, mu);
  const std::vector<double>& I0 = cw.I0;
  const std::vector<double>& W1 = cw.W1;
  const std::vector<double>& head = cw.head;
  const double tail_w = cw.tail_w;

  for (std::size_t j = 1; j < n; ++j) {
    const double tj = h * static_cast<double>(j);
    double acc = 0.0;

    // tail cell [t_{j-1}, t_j): linear vanishing increment within the branch;
    // dropped (eps=h sense) when t_j itself is a break.
    if (!is_break[j] && (j >= 2 || !weighted)) acc += (g[j] - g[j - 1]) / h * tail_w;

    // bulk cells [t_i, t_{i+1}], i = 1..j-2
    for (std::size_t i = 1; i + 1 < j; ++i) {
      const std::size_t L = j - i;
      const double base = (g[j] - g[i]) * I0[L];
      if (is_break[i + 1]) // constant cadlag value up to the jump
        acc += base;
      else
        acc += base - (g[i + 1] - g[i]) * W1[L];
    }

    // head cell [0, h]
    if (j >= 2) {
      if (weighted)
        acc += g[j] * I0[j] - phi[0] * head[j];
      else if (is_break[1])
        acc += (g[j] - g[0]) * I0[j];
      else
        acc += (g[j] - g[0]) * I0[j] - (g[1] - g[0]) * W1[j];
    }

    out[j] = g[j] * c0 * std::pow(tj, -alpha) + c1 * acc;
  }
  out[0] = out[1];
  return out;
}

} // namespace detail

GridFunction frac_integral_left(const GridFunction& phi, FracOrder alpha) {
  check_grid(phi);
  auto vals = detail::frac_integral_weighted(phi.values(), phi.spacing(), alpha.alpha, 0.0);
  return GridFunction(phi.t0(), phi.t1(), std::move(vals));
}

GridFunction frac_integral_right(const GridFunction& phi, FracOrder alpha) {
  check_grid(phi);
  return frac_integral_left(phi.reversed(), alpha).reversed();
}

GridFunction marchaud_derivative(const GridFunction& f, FracOrder alpha, double eps) {
  check_grid(f);
  if (alpha.alpha >= 1.0) throw domain_error("marchaud_derivative needs alpha in (0,1)");
  const double a = alpha.alpha;
  const double h = f.spacing();
  const std::size_t n = f.size();

  if (eps == 0.0) {
    auto vals = detail::marchaud_weighted(f.values(), h, a, 0.0, {});
    return GridFunction(f.t0(), f.t1(), std::move(vals));
  }
  if (eps < h * (1.0 - 1e-9)) throw invalid_input("marchaud eps must be 0 or >= grid spacing");

  const auto m = static_cast<std::size_t>(std::llround(eps / h));
  const double c0 = 1.0 / gamma_fn(1.0 - a);
  std::vector<double> mass(n + 1, 0.0);
  for (std::size_t L = 2; L <= n; ++L)
    mass[L] = std::pow((static_cast<double>(L) - 1.0) * h, -a) -
              std::pow(static_cast<double>(L) * h, -a);

  const auto& v = f.values();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double x = h * static_cast<double>(j);
    double acc = v[j] * std::pow(x, -a);
    if (j > m)
      for (std::size_t i = 0; i + m + 1 <= j; ++i) acc += (v[j] - v[i]) * mass[j - i];
    out[j] = c0 * acc;
  }
  out[0] = out[1];
  return GridFunction(f.t0(), f.t1(), std::move(out));
}

GridFunction weight_pow(const GridFunction& f, double beta) {
  check_grid(f);
  if (f.t0() < 0.0) throw domain_error("weight_pow needs t >= 0");
  std::vector<double> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double t = f.time(j);
    if (t == 0.0) {
      if (beta > 0.0)
        out[j] = 0.0;
      else if (beta == 0.0)
        out[j] = f[j];
      else if (f[j] == 0.0)
        out[j] = 0.0;
      else
        throw invalid_input("weight_pow: t^beta*f(t) is infinite at t=0");
    } else {
      out[j] = std::pow(t, beta) * f[j];
    }
  }
  return GridFunction(f.t0(), f.t1(), std::move(out));
}

} // namespace fbmjump
