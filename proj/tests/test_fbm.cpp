#include <cmath>

#include "doctest.h"
#include "fbmjump/errors.hpp"
#include "fbmjump/fbm.hpp"
#include "fbmjump/special_functions.hpp"
#include "oracles.hpp"

using namespace fbmjump;
using oracles::rel_l2;
using oracles::sample_fn;

TEST_CASE("covariance_rh basics") {
  HurstParam H(0.62);
  CHECK(covariance_rh(1.7, 1.7, H) == doctest::Approx(std::pow(1.7, 2 * 0.62)));
  HurstParam Hb(0.5);
  CHECK(covariance_rh(2.0, 0.75, Hb) == doctest::Approx(0.75));
  CHECK_THROWS_AS(covariance_rh(-1.0, 1.0, H), fbmjump::domain_error);
}

TEST_CASE("covariance matches the kernel factorization (quadrature oracle)") {
  HurstParam H(0.75);
  const double got = oracles::kernel_factorization(2.0, 1.0, H);
  CHECK(std::abs(got - covariance_rh(2.0, 1.0, H)) / covariance_rh(2.0, 1.0, H) < 1e-3);
}

TEST_CASE("kernel_kh special cases and domain") {
  HurstParam Hb(0.5);
  for (double s : {0.1, 0.4, 0.9}) CHECK(kernel_kh(1.0, s, Hb) == 1.0);
  HurstParam H(0.3);
  CHECK_THROWS_AS(kernel_kh(1.0, 1.0, H), fbmjump::domain_error);
  CHECK_THROWS_AS(kernel_kh(1.0, 0.0, H), fbmjump::domain_error);
}

TEST_CASE("kernel factorization on (t,s) pairs for both regimes") {
  for (double Hh : {0.3, 0.7}) {
    HurstParam H(Hh);
    for (auto [t, s] : {std::pair{1.0, 1.0}, std::pair{1.0, 0.5}}) {
      const double lhs = oracles::kernel_factorization(t, s, H);
      const double rhs = covariance_rh(t, s, H);
      CHECK(std::abs(lhs - rhs) / rhs < 1e-3);
    }
  }
}

TEST_CASE("kernel integrable divergence near s -> t for H > 1/2") {
  HurstParam H(0.75);
  // int_0^1 K(1,r)^2 dr = R_H(1,1) = 1 despite the (t-s)^{H-1/2} endpoint
  CHECK(oracles::kernel_factorization(1.0, 1.0, H) == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("apply_kh: Brownian and zero cases") {
  auto one = sample_fn(0.0, 1.0, 513, [](double) { return 1.0; });
  auto out = apply_kh(one, HurstParam(0.5));
  for (std::size_t j = 0; j < out.size(); j += 64)
    CHECK(out[j] == doctest::Approx(out.time(j)).epsilon(1e-12));

  auto zero = sample_fn(0.0, 1.0, 129, [](double) { return 0.0; });
  for (double Hh : {0.25, 0.5, 0.8}) {
    auto z = apply_kh(zero, HurstParam(Hh));
    for (std::size_t j = 0; j < z.size(); ++j) CHECK(z[j] == 0.0);
  }
}

TEST_CASE("apply_kh matches direct singular kernel quadrature") {
  const std::size_t n = 4096;
  auto one = sample_fn(0.0, 1.0, n, [](double) { return 1.0; });
  for (double Hh : {0.3, 0.7}) {
    HurstParam H(Hh);
    auto got = apply_kh(one, H);
    // compare on a subsample of grid points (the oracle quadrature is costly)
    double num = 0.0, den = 0.0;
    for (std::size_t j = 64; j < n; j += 256) {
      const double want = oracles::kernel_integral_direct(got.time(j), H, [](double) { return 1.0; });
      num += (got[j] - want) * (got[j] - want);
      den += want * want;
    }
    CHECK(std::sqrt(num / den) < 2e-2);
  }
}

TEST_CASE("invert_kh: Brownian branch and h(0) != 0 rejection") {
  auto lin = sample_fn(0.0, 1.0, 257, [](double t) { return t; });
  auto d = invert_kh(lin, HurstParam(0.5));
  for (std::size_t j = 0; j < d.size(); ++j) CHECK(d[j] == doctest::Approx(1.0));
  auto off = sample_fn(0.0, 1.0, 257, [](double t) { return t + 0.5; });
  CHECK_THROWS_AS(invert_kh(off, HurstParam(0.3)), invalid_input);
}

TEST_CASE("invert_kh power rule at H=0.7 (normalized kernel)") {
  // K_H^{-1}(c t) = (c / nu_H) Gamma(3/2-H)/Gamma(2-2H) t^{1/2-H}
  const std::size_t n = 4096;
  const double c = 2.0, Hh = 0.7;
  auto h = sample_fn(0.0, 1.0, n, [&](double t) { return c * t; });
  auto got = invert_kh(h, HurstParam(Hh));
  const double coef = 1.5597273298341608; // (c/nu) G(3/2-H)/G(2-2H), c=2, H=0.7
  auto want = sample_fn(0.0, 1.0, n, [&](double t) {
    return t > 0.0 ? coef * std::pow(t, 0.5 - Hh) : 0.0;
  });
  CHECK(rel_l2(got, want, 8) < 2e-2);
}

TEST_CASE("K_H round trip: invert(apply(f)) recovers f") {
  const std::size_t n = 4096;
  for (double Hh : {0.3, 0.7}) {
    HurstParam H(Hh);
    auto f = sample_fn(0.0, 1.0, n, [](double t) { return std::cos(2.0 * t) + 1.5; });
    auto back = invert_kh(apply_kh(f, H), H);
    CHECK(rel_l2(back, f, 8) < 5e-2);
  }
}

TEST_CASE("sampler determinism: same (seed, method) gives identical paths") {
  for (auto m : {FbmMethod::cholesky, FbmMethod::circulant, FbmMethod::kernel_from_wiener}) {
    auto a = sample_fbm(HurstParam(0.3), 1.0, 128, m, 42);
    auto b = sample_fbm(HurstParam(0.3), 1.0, 128, m, 42);
    auto c = sample_fbm(HurstParam(0.3), 1.0, 128, m, 43);
    bool identical = true, differs = false;
    for (std::size_t j = 0; j < a.path.size(); ++j) {
      identical = identical && (a.path[j] == b.path[j]);
      differs = differs || (a.path[j] != c.path[j]);
    }
    CHECK(identical);
    CHECK(differs);
    CHECK(a.path[0] == 0.0);
  }
}

TEST_CASE("H=1/2 increments are iid N(0,h) for every sampler") {
  const std::size_t n = 65, m = 10000;
  const double h = 1.0 / 64.0;
  for (auto method : {FbmMethod::cholesky, FbmMethod::circulant, FbmMethod::kernel_from_wiener}) {
    oracles::MeanAcc acc;
    for (std::size_t i = 0; i < m; ++i) {
      auto p = sample_fbm(HurstParam(0.5), 1.0, n, method, 9000 + i);
      // one increment per path keeps the draws independent
      const double d = p.path[33] - p.path[32];
      acc.add(d * d);
    }
    // Var(chi^2) = 2 h^2 per draw
    const double se = std::sqrt(2.0 * h * h / static_cast<double>(m));
    CHECK(std::abs(acc.mean() - h) < 3.0 * se);
  }
}

TEST_CASE("empirical Var(B_T) matches T^{2H} (Cholesky, H=0.75)") {
  const std::size_t m = 10000;
  oracles::MeanAcc acc;
  for (std::size_t i = 0; i < m; ++i) {
    auto p = sample_fbm(HurstParam(0.75), 1.0, 65, FbmMethod::cholesky, 1234 + i);
    const double x = p.path[p.path.size() - 1];
    acc.add(x * x);
  }
  const double want = 1.0; // T = 1
  const double se = want * std::sqrt(2.0 / static_cast<double>(m));
  CHECK(std::abs(acc.mean() - want) < 3.0 * se);
}

TEST_CASE("kernel-from-wiener vs cholesky: two-sample KS on B_T at H=0.3") {
  const std::size_t m = 10000, n = 129;
  std::vector<double> a, b;
  a.reserve(m);
  b.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    a.push_back(sample_fbm(HurstParam(0.3), 1.0, n, FbmMethod::kernel_from_wiener, 50000 + i)
                    .path[n - 1]);
    b.push_back(sample_fbm(HurstParam(0.3), 1.0, n, FbmMethod::cholesky, 90000 + i).path[n - 1]);
  }
  const double d = ks_statistic(a, b);
  CHECK(ks_two_sample_pvalue(d, m, m) > 0.01);
}

TEST_CASE("stationary increments and zero mean (circulant, H=0.7)") {
  const std::size_t m = 10000, n = 65;
  oracles::MeanAcc v0, v1, v2, mean_T;
  const std::size_t d = 8; // delta = T/8
  for (std::size_t i = 0; i < m; ++i) {
    auto p = sample_fbm(HurstParam(0.7), 1.0, n, FbmMethod::circulant, 7000 + i);
    auto inc = [&](std::size_t j0) {
      const double x = p.path[j0 + d] - p.path[j0];
      return x * x;
    };
    v0.add(inc(0));
    v1.add(inc(16));
    v2.add(inc(32));
    mean_T.add(p.path[n - 1]);
  }
  const double want = std::pow(1.0 / 8.0, 1.4);
  for (auto* acc : {&v0, &v1, &v2})
    CHECK(std::abs(acc->mean() - want) < 3.0 * want * std::sqrt(2.0 / static_cast<double>(m)));
  CHECK(std::abs(mean_T.mean()) < 3.0 * mean_T.stderr_());
}

TEST_CASE("kernel matrix rows reproduce the covariance") {
  // implied Var(B_t) = sum_i M[t][i]^2 h should track R_H(t,t)
  for (double Hh : {0.3, 0.75}) {
    const std::size_t n = 129;
    const double h = 1.0 / 128.0;
    const auto& M = kernel_matrix(HurstParam(Hh), 1.0, n);
    for (std::size_t j : {n / 2, n - 1}) {
      double var = 0.0;
      for (double c : M[j]) var += c * c * h;
      const double want = std::pow(h * static_cast<double>(j), 2.0 * Hh);
      CHECK(std::abs(var - want) / want < 1e-2);
    }
  }
}
