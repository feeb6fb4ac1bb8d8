#include <cmath>

#include "doctest.h"
#include "fbmjump/errors.hpp"
#include "fbmjump/point_process.hpp"
#include "oracles.hpp"

using namespace fbmjump;

TEST_CASE("empty-path frequency matches the Poisson zero count") {
  CompoundPoissonSpec spec{0.001, JumpDistribution::constant(1.0), 1.0};
  const std::size_t m = 10000;
  std::size_t empty = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (sample_jump_path(spec, 100 + i).count() == 0) ++empty;
  const double want = std::exp(-0.001);
  const double se = std::sqrt(want * (1.0 - want) / static_cast<double>(m));
  CHECK(std::abs(static_cast<double>(empty) / m - want) < 3.0 * se + 1e-12);
}

TEST_CASE("mean jump count is lambda*T") {
  CompoundPoissonSpec spec{1.0, JumpDistribution::gaussian(0.0, 1.0), 1.0};
  oracles::MeanAcc acc;
  for (std::size_t i = 0; i < 10000; ++i)
    acc.add(static_cast<double>(sample_jump_path(spec, 777 + i).count()));
  CHECK(std::abs(acc.mean() - 1.0) < 3.0 * acc.stderr_());
}

TEST_CASE("determinism and path validity") {
  CompoundPoissonSpec spec{5.0, JumpDistribution::exponential(2.0), 2.0};
  auto a = sample_jump_path(spec, 4242);
  auto b = sample_jump_path(spec, 4242);
  REQUIRE(a.count() == b.count());
  for (std::size_t i = 0; i < a.count(); ++i) {
    CHECK(a.times[i] == b.times[i]);
    CHECK(a.sizes[i] == b.sizes[i]);
    if (i) CHECK(a.times[i] > a.times[i - 1]);
  }
}

TEST_CASE("total_variation examples") {
  JumpPath p({0.2, 0.5}, {1.0, -2.0}, 1.0);
  CHECK(total_variation(p, 0.6) == doctest::Approx(3.0));
  CHECK(total_variation(p, 0.3) == doctest::Approx(1.0));
  JumpPath empty({}, {}, 1.0);
  CHECK(total_variation(empty, 1.0) == 0.0);
  CHECK_THROWS_AS(total_variation(p, 2.0), fbmjump::domain_error);
  // monotone in t
  double prev = -1.0;
  for (double t = 0.0; t <= 1.0; t += 0.05) {
    const double v = total_variation(p, t);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("construction rejects bad jump paths") {
  CHECK_THROWS_AS(JumpPath({0.5, 0.5}, {1.0, 1.0}, 1.0), invalid_input);
  CHECK_THROWS_AS(JumpPath({0.5, 0.2}, {1.0, 1.0}, 1.0), invalid_input);
  CHECK_THROWS_AS(JumpPath({1.5}, {1.0}, 1.0), invalid_input);
}

TEST_CASE("moment_functional closed form") {
  CompoundPoissonSpec spec{1.0, JumpDistribution::constant(1.0), 1.0};
  CHECK(moment_functional(spec, 1.0) == doctest::Approx(6.408274858094214).epsilon(1e-12));
  // beta -> 0+ with U == 1: exponential factor -> 1
  CHECK(moment_functional(spec, 1e-12) == doctest::Approx(1.0 / 3.0 + 0.5 + 1.0).epsilon(1e-9));
  // lambda -> 0: only the e^0 term survives
  CompoundPoissonSpec tiny{1e-14, JumpDistribution::constant(1.0), 1.0};
  CHECK(moment_functional(tiny, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("moment_functional agrees with Monte Carlo for several jump laws") {
  // MC of int_0^T |L|_t^2 dt + e^{beta |L|_T}; the time integral is exact on
  // each path (|L| is piecewise constant between jumps)
  const double beta = 0.5, T = 1.0;
  for (auto law : {JumpDistribution::constant(1.0), JumpDistribution::gaussian(0.0, 1.0),
                   JumpDistribution::two_point(0.5, 2.0, 0.3)}) {
    CompoundPoissonSpec spec{1.0, law, T};
    oracles::MeanAcc acc;
    for (std::size_t i = 0; i < 100000; ++i) {
      auto p = sample_jump_path(spec, 310000 + i);
      double integral = 0.0;
      double prev_t = 0.0, level = 0.0;
      for (std::size_t k = 0; k < p.count(); ++k) {
        integral += level * level * (p.times[k] - prev_t);
        prev_t = p.times[k];
        level += std::abs(p.sizes[k]);
      }
      integral += level * level * (T - prev_t);
      acc.add(integral + std::exp(beta * level));
    }
    const double want = moment_functional(spec, beta);
    CHECK(std::abs(acc.mean() - want) < 3.0 * acc.stderr_());
  }
}

TEST_CASE("exponential moments diverge for rho > 1/2 (qualitative)") {
  // E e^{(N_T)^{2 rho}} grows without bound: estimate at 1e5 samples far
  // exceeds the estimate at 1e3 samples for rho = 0.9, lambda = 5
  const double rho = 0.9, lambda = 5.0, T = 1.0;
  CompoundPoissonSpec spec{lambda, JumpDistribution::constant(1.0), T};
  auto estimate = [&](std::size_t m) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
      const auto n = static_cast<double>(sample_jump_path(spec, 555000 + i).count());
      acc += std::exp(std::pow(n, 2.0 * rho));
    }
    return static_cast<double>(acc / m);
  };
  CHECK(estimate(100000) > 10.0 * estimate(1000));
}

TEST_CASE("exponential jump family: exp_moment diverges at beta >= rate") {
  auto law = JumpDistribution::exponential(2.0);
  CHECK(law.exp_moment(1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(law.exp_moment(2.0), unsupported_error);
  CompoundPoissonSpec spec{1.0, law, 1.0};
  CHECK_THROWS_AS(moment_functional(spec, 3.0), unsupported_error);
}

TEST_CASE("lambda = 0 gives the empty path") {
  CompoundPoissonSpec spec{0.0, JumpDistribution::constant(1.0), 1.0};
  CHECK(sample_jump_path(spec, 1).count() == 0);
  CHECK_THROWS_AS(([] {
                    CompoundPoissonSpec bad{-1.0, JumpDistribution::constant(1.0), 1.0};
                    bad.validate();
                  }()),
                  invalid_input);
}
