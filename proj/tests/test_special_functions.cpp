#include <cmath>

#include "doctest.h"
#include "fbmjump/errors.hpp"
#include "fbmjump/special_functions.hpp"

using namespace fbmjump;

TEST_CASE("gauss_2f1 trivial identities") {
  CHECK(gauss_2f1(0.0, 0.7, 1.3, 0.4) == 1.0);
  CHECK(gauss_2f1(0.3, 0.0, 1.3, -2.0) == 1.0);
  CHECK(gauss_2f1(0.25, 0.75, 1.25, 0.0) == 1.0);
}

TEST_CASE("gauss_2f1 classical closed form F(1,1,2,z) = -ln(1-z)/z") {
  const double z = 0.5;
  CHECK(gauss_2f1(1.0, 1.0, 2.0, z) == doctest::Approx(-std::log(1.0 - z) / z).epsilon(1e-12));
  CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(1.3862943611198906).epsilon(1e-12));
}

TEST_CASE("gauss_2f1 against high-precision reference values") {
  // reference values computed independently at 25-digit precision
  struct Row {
    double a, b, c, z, want;
  };
  const Row rows[] = {
      {0.25, 0.75, 1.25, -0.5, 0.9389482225689779},
      {-0.2, 0.2, 0.8, -3.0, 1.095239695018491},
      {0.25, -0.25, 1.25, -99.0, 1.781006672314695},
      {0.4, -0.4, 1.4, 0.9, 0.8693123390035538},
      {1.5, 0.5, 2.5, 0.8, 1.482405565490064},
      {0.3, 0.7, 2.0, 0.99, 1.21478564630275},
      {-0.45, 0.45, 0.55, -1e6, 439.7920536551576},
  };
  for (const auto& r : rows)
    CHECK(gauss_2f1(r.a, r.b, r.c, r.z) == doctest::Approx(r.want).epsilon(1e-10));
}

TEST_CASE("gauss_2f1 agrees with its own Euler-integral branch for c > b > 0") {
  for (double z : {-20.0, -1.5, -0.3, 0.45, 0.9}) {
    const double series = gauss_2f1(0.35, 0.6, 1.7, z);
    const double euler = gauss_2f1_euler(0.35, 0.6, 1.7, z);
    CHECK(series == doctest::Approx(euler).epsilon(1e-9));
  }
}

TEST_CASE("gauss_2f1 domain errors") {
  CHECK_THROWS_AS(gauss_2f1(0.3, 0.4, 1.2, 1.0), fbmjump::domain_error);
  CHECK_THROWS_AS(gauss_2f1(0.3, 0.4, -2.0, 0.5), fbmjump::domain_error);
}

TEST_CASE("tanh_sinh handles endpoint singularities") {
  // int_0^1 x^{-1/2} dx = 2
  CHECK(tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-10));
  // int_0^1 x^{-0.4}(1-x)^{-0.4} dx = B(0.6, 0.6)
  const double beta = gamma_fn(0.6) * gamma_fn(0.6) / gamma_fn(1.2);
  CHECK(tanh_sinh([](double x) { return std::pow(x, -0.4) * std::pow(1.0 - x, -0.4); }, 0.0,
                  1.0) == doctest::Approx(beta).epsilon(1e-9));
}

TEST_CASE("two-sample KS statistic and p-value behave sensibly") {
  std::vector<double> x, y, z;
  for (int i = 0; i < 2000; ++i) {
    const double u = (i + 0.5) / 2000.0;
    x.push_back(u);
    y.push_back(u + 0.00001);
    z.push_back(u * u); // very different law
  }
  const double d_same = ks_statistic(x, y);
  const double d_diff = ks_statistic(x, z);
  CHECK(d_same < 0.01);
  CHECK(d_diff > 0.2);
  CHECK(ks_two_sample_pvalue(d_same, x.size(), y.size()) > 0.5);
  CHECK(ks_two_sample_pvalue(d_diff, x.size(), z.size()) < 1e-6);
}

TEST_CASE("normal CDF reference points") {
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5));
  CHECK(norm_cdf(-2.0) == doctest::Approx(0.022750131948179).epsilon(1e-10));
  CHECK(norm_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
}
