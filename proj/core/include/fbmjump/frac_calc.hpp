#pragma once
#include <cstddef>
#include <vector>

#include "fbmjump/grid_function.hpp"

namespace fbmjump {

// Left Riemann-Liouville fractional integral (I^alpha_{a+} phi)(x_j).
// Product integration: the singular factor (x-t)^{alpha-1} is integrated
// exactly against the piecewise-constant (cadlag) interpolant of phi.
// result(t0) = 0. alpha = 1 is the plain cumulative integral.
GridFunction frac_integral_left(const GridFunction& phi, FracOrder alpha);

// Right fractional integral (I^alpha_{b-} phi)(x_j); equals the left integral
// of the time-reversed function, reversed. result(t1) = 0.
GridFunction frac_integral_right(const GridFunction& phi, FracOrder alpha);

// Marchaud fractional derivative of order alpha in (0,1).
//   eps >  0 (must be >= grid spacing): the eps-truncated form, with
//            piecewise-constant (cadlag) increments f(x)-f(t).
//   eps == 0: the Marchaud limit evaluated exactly on the grid's
//            piecewise-linear interpolant (increments vanish linearly into
//            the singularity; every cell integrated exactly against the
//            kernel). This is the finest truncation the grid resolves.
// The first value (x = a, where the boundary term diverges) is set by
// one-sided continuation from the second grid point; comparisons against
// closed forms conventionally exclude a short prefix.
GridFunction marchaud_derivative(const GridFunction& f, FracOrder alpha, double eps = 0.0);

// Pointwise power weight t^beta * f(t). At t=0 with beta<0 the value is 0
// when f(0)=0 and an error otherwise (every use in the kernel machinery has
// compensating powers of t).
GridFunction weight_pow(const GridFunction& f, double beta);

namespace detail {

// I^alpha[ t^mu phi(t) ](t_j) for grid samples phi, t_j = j*h starting at 0.
// Bulk cells use the pointwise weighted cadlag value; the head cell [0,h]
// integrates t^mu against the kernel exactly (Gauss quadrature after the
// substitution w = s^{1+mu}).
std::vector<double> frac_integral_weighted(const std::vector<double>& phi, double h, double alpha,
                                           double mu);

// Exact per-cell kernel integrals shared by the Marchaud assemblies:
//   I0[L] = int over one cell at lag L of (t-r)^{-1-alpha} dr      (L >= 2)
//   W1[L] = ( Lh * I0[L] - int cell (t-r)^{-alpha} dr ) / h        (L >= 2)
//   head[j] = int_0^h s^mu (t_j - s)^{-1-alpha} ds                 (j >= 2)
//   tail_w = h^{1-alpha} / (1-alpha)
struct MarchaudCellWeights {
  double alpha = 0.5, mu = 0.0, h = 1.0;
  std::vector<double> I0, W1, head;
  double tail_w = 0.0;
};
MarchaudCellWeights marchaud_cell_weights(std::size_t n, double h, double alpha, double mu);

// Marchaud limit D^alpha[ t^mu phi(t) ](t_j) with branch breaks.
// `breaks` lists grid indices where the underlying function jumps (cadlag):
//  - a cell whose upper endpoint is a break keeps the constant pre-jump value
//    (no linear interpolation across the jump);
//  - when the evaluation point itself is a break, the touching singular cell
//    is evaluated in the eps=h truncated sense (the continuum derivative
//    diverges integrably there).
// Head cell handled as in frac_integral_weighted. Entry 0 is continued from
// entry 1.
std::vector<double> marchaud_weighted(const std::vector<double>& phi, double h, double alpha,
                                      double mu, const std::vector<std::size_t>& breaks);

} // namespace detail

} // namespace fbmjump
