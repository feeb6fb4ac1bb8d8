#include "fbmjump/fbm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "fbmjump/errors.hpp"
#include "fbmjump/frac_calc.hpp"
#include "fbmjump/rng.hpp"
#include "fbmjump/special_functions.hpp"
#include "fft_util.hpp"

namespace fbmjump {

HurstParam::HurstParam(double hurst) : h(hurst) {
  if (!(h > 0.0) || !(h < 1.0)) throw domain_error("Hurst parameter must lie in (0,1)");
}

double covariance_rh(double t, double s, HurstParam H) {
  if (t < 0.0 || s < 0.0) throw domain_error("covariance_rh needs t,s >= 0");
  const double e = 2.0 * H.h;
  return 0.5 * (std::pow(t, e) + std::pow(s, e) - std::pow(std::abs(t - s), e));
}

double kernel_norm_const(HurstParam H) {
  if (H.is_brownian()) return 1.0;
  const double d = 0.5 - H.h;
  const double sinc = std::sin(M_PI * d) / (M_PI * d);
  return std::sqrt(2.0 * H.h / (gamma_fn(2.0 - 2.0 * H.h) * sinc));
}

double kernel_kh(double t, double s, HurstParam H) {
  if (!(s > 0.0) || !(s < t)) throw domain_error("kernel_kh needs 0 < s < t");
  if (H.is_brownian()) return 1.0;
  const double a = H.h - 0.5;
  const double F = gauss_2f1(a, -a, H.h + 0.5, 1.0 - t / s);
  return kernel_norm_const(H) * std::pow(t - s, a) * F / gamma_fn(H.h + 0.5);
}

namespace {

std::vector<double> cumulative_left(const std::vector<double>& f, double h) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t j = 1; j < f.size(); ++j) out[j] = out[j - 1] + h * f[j - 1];
  return out;
}

std::vector<double> pow_weight_vec(const std::vector<double>& f, double h, double beta) {
  std::vector<double> out(f.size());
  out[0] = 0.0;
  for (std::size_t j = 1; j < f.size(); ++j)
    out[j] = std::pow(h * static_cast<double>(j), beta) * f[j];
  return out;
}

void require_origin_grid(const GridFunction& f, const char* who) {
  if (std::abs(f.t0()) > 1e-14) throw invalid_input(std::string(who) + " needs a grid on [0,T]");
}

} // namespace

GridFunction apply_kh(const GridFunction& f, HurstParam H) {
  require_origin_grid(f, "apply_kh");
  f.validate();
  const double h = f.spacing();
  if (H.is_brownian()) return GridFunction(f.t0(), f.t1(), cumulative_left(f.values(), h));

  const double nu = kernel_norm_const(H);
  std::vector<double> out;
  if (H.h < 0.5) {
    auto inner = detail::frac_integral_weighted(f.values(), h, 0.5 - H.h, H.h - 0.5);
    auto mid = pow_weight_vec(inner, h, 0.5 - H.h);
    out = detail::frac_integral_weighted(mid, h, 2.0 * H.h, 0.0);
  } else {
    auto inner = detail::frac_integral_weighted(f.values(), h, H.h - 0.5, 0.5 - H.h);
    auto mid = pow_weight_vec(inner, h, H.h - 0.5);
    out = cumulative_left(mid, h);
  }
  for (double& v : out) v *= nu;
  return GridFunction(f.t0(), f.t1(), std::move(out));
}

GridFunction invert_kh(const GridFunction& hfun, HurstParam H) {
  require_origin_grid(hfun, "invert_kh");
  hfun.validate();
  if (std::abs(hfun[0]) > 1e-12) throw invalid_input("invert_kh needs h(t0) = 0");
  const double h = hfun.spacing();
  const std::size_t n = hfun.size();

  std::vector<double> d(n);
  for (std::size_t j = 0; j + 1 < n; ++j) d[j] = (hfun[j + 1] - hfun[j]) / h;
  d[n - 1] = d[n - 2];

  if (H.is_brownian()) return GridFunction(hfun.t0(), hfun.t1(), std::move(d));

  const double inv_nu = 1.0 / kernel_norm_const(H);
  std::vector<double> inner;
  if (H.h < 0.5)
    inner = detail::frac_integral_weighted(d, h, 0.5 - H.h, 0.5 - H.h);
  else
    inner = detail::marchaud_weighted(d, h, H.h - 0.5, 0.5 - H.h, {});

  std::vector<double> out(n, 0.0);
  for (std::size_t j = 1; j < n; ++j)
    out[j] = inv_nu * std::pow(h * static_cast<double>(j), H.h - 0.5) * inner[j];
  return GridFunction(hfun.t0(), hfun.t1(), std::move(out));
}

GridFunction WienerPath::path() const {
  std::vector<double> v(increments.size() + 1, 0.0);
  for (std::size_t j = 0; j < increments.size(); ++j) v[j + 1] = v[j] + increments[j];
  return GridFunction(t0, t1, std::move(v));
}

std::string to_string(FbmMethod m) {
  switch (m) {
    case FbmMethod::cholesky: return "cholesky";
    case FbmMethod::circulant: return "circulant";
    case FbmMethod::kernel_from_wiener: return "kernel-from-wiener";
  }
  return "?";
}

FbmMethod fbm_method_from_string(const std::string& s) {
  if (s == "cholesky") return FbmMethod::cholesky;
  if (s == "circulant") return FbmMethod::circulant;
  if (s == "kernel-from-wiener") return FbmMethod::kernel_from_wiener;
  throw invalid_input("unknown fbm method: " + s);
}

// ---------------- caches keyed by (H, T, n) ----------------
namespace {

using CacheKey = std::tuple<std::uint64_t, std::uint64_t, std::size_t>;

CacheKey make_key(double H, double T, std::size_t n) {
  std::uint64_t hb, tb;
  static_assert(sizeof(double) == sizeof(std::uint64_t));
  std::memcpy(&hb, &H, 8);
  std::memcpy(&tb, &T, 8);
  return {hb, tb, n};
}

template <class V>
class KeyedCache {
public:
  template <class Make>
  std::shared_ptr<const V> get(const CacheKey& key, Make&& make) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    auto value = std::make_shared<const V>(make());
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = map_.emplace(key, value);
    return it->second;
  }

private:
  std::mutex mu_;
  std::map<CacheKey, std::shared_ptr<const V>> map_;
};

// lower-triangular Cholesky factor of the grid covariance (points t_1..t_{n-1})
std::vector<std::vector<double>> build_cholesky(double Hh, double T, std::size_t n) {
  const std::size_t m = n - 1;
  const double h = T / static_cast<double>(m);
  HurstParam H(Hh);
  std::vector<std::vector<double>> L(m);
  for (std::size_t i = 0; i < m; ++i) L[i].assign(i + 1, 0.0);
  std::vector<std::vector<double>> C(m);
  for (std::size_t i = 0; i < m; ++i) {
    C[i].assign(i + 1, 0.0);
    for (std::size_t j = 0; j <= i; ++j)
      C[i][j] = covariance_rh(h * static_cast<double>(i + 1), h * static_cast<double>(j + 1), H);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = C[i][j];
      for (std::size_t k = 0; k < j; ++k) sum -= L[i][k] * L[j][k];
      if (i == j) {
        if (sum <= 0.0) throw std::runtime_error("fBM covariance not positive definite");
        L[i][j] = std::sqrt(sum);
      } else {
        L[i][j] = sum / L[j][j];
      }
    }
  }
  return L;
}

std::vector<double> build_circulant_eigs(double Hh, double T, std::size_t n) {
  const std::size_t m = n - 1;
  const double h = T / static_cast<double>(m);
  const double e = 2.0 * Hh;
  const double scale = 0.5 * std::pow(h, e);
  std::vector<std::complex<double>> c(2 * m);
  auto r = [&](std::size_t k) {
    const double kd = static_cast<double>(k);
    return scale * (std::pow(kd + 1.0, e) - 2.0 * std::pow(kd, e) +
                    std::pow(std::abs(kd - 1.0), e));
  };
  for (std::size_t k = 0; k < m; ++k) c[k] = r(k);
  c[m] = r(m);
  for (std::size_t k = 1; k < m; ++k) c[2 * m - k] = r(k);
  detail::fft(c, -1);
  std::vector<double> eig(2 * m);
  double mx = 0.0;
  for (std::size_t k = 0; k < 2 * m; ++k) mx = std::max(mx, std::abs(c[k].real()));
  for (std::size_t k = 0; k < 2 * m; ++k) {
    double v = c[k].real();
    if (v < 0.0) {
      if (v < -1e-9 * mx) throw std::runtime_error("circulant embedding not nonnegative definite");
      v = 0.0;
    }
    eig[k] = v;
  }
  return eig;
}

std::vector<std::vector<double>> build_kernel_matrix(double Hh, double T, std::size_t n) {
  HurstParam H(Hh);
  const std::size_t m = n - 1;
  const double h = T / static_cast<double>(m);
  std::vector<std::vector<double>> M(n);
  M[0] = {};
  if (H.is_brownian()) {
    for (std::size_t j = 1; j < n; ++j) M[j].assign(j, 1.0);
    return M;
  }
  const double ig = kernel_norm_const(H) / gamma_fn(Hh + 0.5);
  const double a = Hh - 0.5;
  auto kern = [&](double t, double s) {
    return ig * std::pow(t - s, a) * gauss_2f1(a, -a, Hh + 0.5, 1.0 - t / s);
  };
  // 4-point Gauss-Legendre on [0,1]
  static const double gx[4] = {0.0694318442029737124, 0.3300094782075718676,
                               0.6699905217924281324, 0.9305681557970262876};
  static const double gw[4] = {0.1739274225687269287, 0.3260725774312730713,
                               0.3260725774312730713, 0.1739274225687269287};
  auto cell_gl = [&](double t, double s0, double s1, int nsub) {
    double acc = 0.0;
    for (int u = 0; u < nsub; ++u) {
      const double aa = s0 + (s1 - s0) * u / nsub, bb = s0 + (s1 - s0) * (u + 1) / nsub;
      for (int q = 0; q < 4; ++q) acc += (bb - aa) * gw[q] * kern(t, aa + (bb - aa) * gx[q]);
    }
    return acc;
  };
  for (std::size_t j = 1; j < n; ++j) {
    const double tj = h * static_cast<double>(j);
    M[j].assign(j, 0.0);
    for (std::size_t i = 0; i < j; ++i) {
      const double s0 = h * static_cast<double>(i), s1 = s0 + h;
      double integral;
      if (i == 0) {
        // both the s->0 behaviour and (for j=1) the s->t singularity
        integral = tanh_sinh([&](double s) { return kern(tj, s); }, 0.0, s1, 10);
      } else if (i + 1 == j) {
        // last cell: singular factor exact, smooth factor at midpoint
        const double F = gauss_2f1(a, -a, Hh + 0.5, 1.0 - tj / (s0 + 0.5 * h));
        integral = kernel_norm_const(H) / gamma_fn(Hh + 0.5) * F *
                   std::pow(h, Hh + 0.5) / (Hh + 0.5);
      } else {
        integral = cell_gl(tj, s0, s1, i < 8 ? 4 : 1);
      }
      M[j][i] = integral / h;
    }
  }
  return M;
}

KeyedCache<std::vector<std::vector<double>>>& cholesky_cache() {
  static KeyedCache<std::vector<std::vector<double>>> c;
  return c;
}
KeyedCache<std::vector<double>>& circulant_cache() {
  static KeyedCache<std::vector<double>> c;
  return c;
}
KeyedCache<std::vector<std::vector<double>>>& kernel_cache() {
  static KeyedCache<std::vector<std::vector<double>>> c;
  return c;
}

} // namespace

const std::vector<std::vector<double>>& kernel_matrix(HurstParam H, double T, std::size_t n) {
  // the cache map retains ownership, so the reference stays valid
  auto p = kernel_cache().get(make_key(H.h, T, n),
                              [&] { return build_kernel_matrix(H.h, T, n); });
  return *p;
}

FbmPath sample_fbm(HurstParam H, double T, std::size_t n, FbmMethod method, std::uint64_t seed) {
  if (n < 2) throw invalid_input("sample_fbm needs n >= 2");
  if (!(T > 0.0)) throw invalid_input("sample_fbm needs T > 0");
  const std::size_t m = n - 1;
  const double h = T / static_cast<double>(m);
  Rng rng(stream_seed(seed, 0x10 + static_cast<std::uint64_t>(method)));

  std::vector<double> values(n, 0.0);
  std::optional<WienerPath> wiener;

  switch (method) {
    case FbmMethod::cholesky: {
      auto L = cholesky_cache().get(make_key(H.h, T, n), [&] { return build_cholesky(H.h, T, n); });
      std::vector<double> z(m);
      for (auto& x : z) x = rng.normal();
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= i; ++k) acc += (*L)[i][k] * z[k];
        values[i + 1] = acc;
      }
      break;
    }
    case FbmMethod::circulant: {
      auto eig = circulant_cache().get(make_key(H.h, T, n),
                                       [&] { return build_circulant_eigs(H.h, T, n); });
      const std::size_t M2 = 2 * m;
      std::vector<std::complex<double>> v(M2);
      v[0] = std::sqrt((*eig)[0]) * rng.normal();
      v[m] = std::sqrt((*eig)[m]) * rng.normal();
      for (std::size_t k = 1; k < m; ++k) {
        const double s = std::sqrt(0.5 * (*eig)[k]);
        const double ar = rng.normal(), ai = rng.normal();
        v[k] = std::complex<double>(s * ar, s * ai);
        v[M2 - k] = std::conj(v[k]);
      }
      detail::fft(v, -1);
      const double scale = 1.0 / std::sqrt(static_cast<double>(M2));
      for (std::size_t i = 0; i < m; ++i) values[i + 1] = values[i] + v[i].real() * scale;
      break;
    }
    case FbmMethod::kernel_from_wiener: {
      WienerPath w;
      w.t0 = 0.0;
      w.t1 = T;
      w.increments.resize(m);
      const double sh = std::sqrt(h);
      for (auto& dw : w.increments) dw = sh * rng.normal();
      if (H.is_brownian()) {
        for (std::size_t i = 0; i < m; ++i) values[i + 1] = values[i] + w.increments[i];
      } else {
        const auto& K = kernel_matrix(H, T, n);
        for (std::size_t j = 1; j < n; ++j) {
          double acc = 0.0;
          for (std::size_t i = 0; i < j; ++i) acc += K[j][i] * w.increments[i];
          values[j] = acc;
        }
      }
      wiener = std::move(w);
      break;
    }
  }

  FbmPath out{GridFunction(0.0, T, std::move(values)), H.h, method, std::move(wiener)};
  return out;
}

void write_fbm_csv(const FbmPath& p, const std::string& path, std::uint64_t seed) {
  write_csv(p.path, path,
            "method=" + to_string(p.provenance) + " seed=" + std::to_string(seed) +
                " H=" + format_full(p.hurst) + " n=" + std::to_string(p.path.size()));
}

} // namespace fbmjump
