#pragma once

#include <functional>

#include "hyperwave/core_types.hpp"

namespace hyperwave::coords {

struct CartesianPoint {
  double t = 0;
  double x = 0;
};

struct HyperboloidalPoint {
  double s = 0;
  double y = 0;
};

/// (s, y) -> (t, x) = (s - log sqrt(1 - y^2), artanh y). Throws out_of_chart for |y| >= 1.
CartesianPoint phi(const HyperboloidalPoint& p);
/// (t, x) -> (s, y) = (t - log cosh x, tanh x).
HyperboloidalPoint phi_inv(const CartesianPoint& p);

/// log cosh x without overflow.
double log_cosh(double x);

/// Samples u(s, y_i) = W(s - log sqrt(1 - y_i^2), artanh y_i) on the grid.
OddField pull_back_slice(const std::function<double(double, double)>& W, double s, const GridPtr& grid);

/// Bilinear interpolant of data on a uniform (t, r) lattice. Lattice values
/// may be NaN where not computed; touching one is an interpolation_domain error.
class LatticeTR {
 public:
  LatticeTR(double t0, double dt, double r0, double dr, RMatrix values);  // values(m, j) at (t0 + m dt, r0 + j dr)
  double operator()(double t, double r) const;
  double t_max() const { return t0_ + dt_ * (vals_.rows() - 1); }

 private:
  double t0_, dt_, r0_, dr_;
  RMatrix vals_;
};

}  // namespace hyperwave::coords
