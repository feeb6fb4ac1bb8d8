#pragma once
#include <functional>

namespace fbmjump {

// Gauss hypergeometric function F(a,b,c,z) for z < 1, relative accuracy ~1e-10.
// Dispatch: defining series for small z; Pfaff / 1/(1-z) transformations for
// z < 0; the 1-z connection formula near z=1 (needs c-a-b non-integer there);
// Euler-integral quadrature as fallback when c > b > 0.
double gauss_2f1(double a, double b, double c, double z);

// Euler-integral evaluation of F (valid for c > b > 0, z < 1); exposed for
// cross-checks against the series path.
double gauss_2f1_euler(double a, double b, double c, double z);

double gamma_fn(double x);

// Standard normal CDF.
double norm_cdf(double x);

// tanh-sinh quadrature of f over (a,b); handles integrable endpoint
// singularities. `levels` doubles the node count per refinement.
double tanh_sinh(const std::function<double(double)>& f, double a, double b, int levels = 9);

// Two-sample Kolmogorov-Smirnov: returns the asymptotic p-value for samples of
// sizes n1, n2 with sup-distance d.
double ks_two_sample_pvalue(double d, std::size_t n1, std::size_t n2);

// Sup-distance between the empirical CDFs of two samples (sorted internally).
double ks_statistic(std::vector<double> x, std::vector<double> y);

} // namespace fbmjump
