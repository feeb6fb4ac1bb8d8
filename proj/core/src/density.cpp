#include "fbmjump/density.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "fbmjump/errors.hpp"
#include "fft_util.hpp"

namespace fbmjump {
namespace {

double gauss_pdf(double y, double mean, double var) {
  const double d = y - mean;
  return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * M_PI * var);
}

std::size_t poisson_trunc(double mean, double tail) {
  double term = std::exp(-mean), acc = term;
  std::size_t n = 0;
  while (1.0 - acc > tail && n < 4000) {
    ++n;
    term *= mean / static_cast<double>(n);
    acc += term;
  }
  return n;
}

// lattice representation of the continuous part of the law of L_t for the
// exponential jump family (positive support), built once per parameter set
struct ExpLattice {
  double dz = 0.0, z0 = 0.0;
  double atom = 1.0; // e^{-lambda t} point mass at 0
  std::vector<double> density;
};

ExpLattice build_exp_lattice(double lambda_t, double rate) {
  // support [0, zmax]; compound-Poisson char. fn evaluated analytically
  const double mean = lambda_t / rate;
  const double sd = std::sqrt(2.0 * lambda_t) / rate;
  const double zmax = std::max(mean + 14.0 * sd + 20.0 / rate, 10.0 / rate);
  const std::size_t M = 1 << 14;
  const double dz = zmax / static_cast<double>(M);
  std::vector<std::complex<double>> spec(M);
  const double atom = std::exp(-lambda_t);
  for (std::size_t k = 0; k < M; ++k) {
    // frequencies in FFT layout; phi_U(xi) = rate / (rate - i xi)
    const double xi = 2.0 * M_PI *
                      (k < M / 2 ? static_cast<double>(k)
                                 : static_cast<double>(k) - static_cast<double>(M)) /
                      zmax;
    const std::complex<double> phi_u = rate / std::complex<double>(rate, -xi);
    spec[k] = std::exp(lambda_t * (phi_u - 1.0)) - atom;
  }
  detail::fft(spec, -1);
  ExpLattice out;
  out.dz = dz;
  out.z0 = 0.0;
  out.atom = atom;
  out.density.resize(M);
  for (std::size_t k = 0; k < M; ++k)
    out.density[k] = std::max(0.0, spec[k].real() / zmax);
  return out;
}

const ExpLattice& exp_lattice(double lambda_t, double rate) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::shared_ptr<const ExpLattice>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(lambda_t, rate);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_shared<const ExpLattice>(build_exp_lattice(lambda_t, rate)))
             .first;
  return *it->second;
}

} // namespace

std::size_t density_terms(const DensityParams& p) {
  return poisson_trunc(p.spec.lambda * p.t, p.poisson_tail);
}

double transition_density(const DensityParams& p, double y) {
  if (!(p.t > 0.0)) throw domain_error("transition_density needs t > 0");
  HurstParam H(p.hurst);
  const double var = std::pow(p.t, 2.0 * p.hurst);
  const double lt = p.spec.lambda * p.t;
  if (lt == 0.0) return gauss_pdf(y, p.x0, var);

  const std::size_t nmax = poisson_trunc(lt, p.poisson_tail);
  std::vector<double> pois(nmax + 1);
  pois[0] = std::exp(-lt);
  for (std::size_t n = 1; n <= nmax; ++n) pois[n] = pois[n - 1] * lt / static_cast<double>(n);

  const auto& J = p.spec.jumps;
  using F = JumpDistribution::Family;
  double acc = 0.0;
  switch (J.family) {
    case F::gaussian:
      // S_n ~ N(n mu, n s^2): convolution with the Gaussian stays closed form
      for (std::size_t n = 0; n <= nmax; ++n)
        acc += pois[n] * gauss_pdf(y, p.x0 - static_cast<double>(n) * J.p1,
                                   var + static_cast<double>(n) * J.p2 * J.p2);
      return acc;
    case F::constant:
      for (std::size_t n = 0; n <= nmax; ++n)
        acc += pois[n] * gauss_pdf(y, p.x0 - static_cast<double>(n) * J.p1, var);
      return acc;
    case F::two_point: {
      if (J.p3 >= 1.0 || J.p3 <= 0.0) { // degenerate: all jumps take one value
        const double val = J.p3 >= 1.0 ? J.p1 : J.p2;
        for (std::size_t n = 0; n <= nmax; ++n)
          acc += pois[n] * gauss_pdf(y, p.x0 - static_cast<double>(n) * val, var);
        return acc;
      }
      for (std::size_t n = 0; n <= nmax; ++n) {
        // binomial mixture over how many of the n jumps took value a
        double binom = std::pow(1.0 - J.p3, static_cast<double>(n)); // k = 0
        for (std::size_t k = 0; k <= n; ++k) {
          const double shift =
              static_cast<double>(k) * J.p1 + static_cast<double>(n - k) * J.p2;
          acc += pois[n] * binom * gauss_pdf(y, p.x0 - shift, var);
          if (k < n)
            binom *= (static_cast<double>(n - k) / static_cast<double>(k + 1)) *
                     (J.p3 / (1.0 - J.p3));
        }
      }
      return acc;
    }
    case F::exponential: {
      const auto& lat = exp_lattice(lt, J.p1);
      acc = lat.atom * gauss_pdf(y, p.x0, var);
      for (std::size_t k = 0; k < lat.density.size(); ++k) {
        const double z = lat.z0 + lat.dz * static_cast<double>(k);
        acc += lat.density[k] * gauss_pdf(y, p.x0 - z, var) * lat.dz;
      }
      return acc;
    }
  }
  throw unsupported_error("transition_density: unsupported jump family");
}

double density_mass(const DensityParams& p, double lo, double hi, std::size_t points) {
  const double dy = (hi - lo) / static_cast<double>(points - 1);
  double acc = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    const double y = lo + dy * static_cast<double>(k);
    const double w = (k == 0 || k + 1 == points) ? 0.5 : 1.0;
    acc += w * transition_density(p, y);
  }
  return acc * dy;
}

} // namespace fbmjump
