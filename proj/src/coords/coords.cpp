#include "hyperwave/coords.hpp"

#include <algorithm>
#include <cmath>

namespace hyperwave::coords {

double log_cosh(double x) {
  double a = std::abs(x);
  return a + std::log1p(std::exp(-2 * a)) - std::log(2.0);
}

CartesianPoint phi(const HyperboloidalPoint& p) {
  require(std::isfinite(p.s) && std::abs(p.y) < 1, ErrorKind::out_of_chart, "point outside the hyperboloidal chart (|y| >= 1)");
  return {p.s - 0.5 * std::log1p(-p.y * p.y), std::atanh(p.y)};
}

HyperboloidalPoint phi_inv(const CartesianPoint& p) {
  require(std::isfinite(p.t) && std::isfinite(p.x), ErrorKind::invalid_argument, "non-finite Cartesian point");
  return {p.t - log_cosh(p.x), std::tanh(p.x)};
}

OddField pull_back_slice(const std::function<double(double, double)>& W, double s, const GridPtr& grid) {
  const int n = grid->size();
  CVector v(n);
  for (int j = 0; j < n; ++j) {
    auto c = phi({s, grid->node(j)});
    v[j] = W(c.t, c.x);
  }
  return OddField(grid, v);
}

LatticeTR::LatticeTR(double t0, double dt, double r0, double dr, RMatrix values)
    : t0_(t0), dt_(dt), r0_(r0), dr_(dr), vals_(std::move(values)) {
  require(dt > 0 && dr > 0 && vals_.rows() >= 2 && vals_.cols() >= 2, ErrorKind::invalid_argument, "degenerate (t, r) lattice");
}

double LatticeTR::operator()(double t, double r) const {
  double a = (t - t0_) / dt_, b = (r - r0_) / dr_;
  const double eps = 1e-9;
  require(a >= -eps && a <= vals_.rows() - 1 + eps && b >= -eps && b <= vals_.cols() - 1 + eps,
          ErrorKind::interpolation_domain, "point outside the stored (t, r) lattice");
  int m = std::clamp(static_cast<int>(std::floor(a)), 0, static_cast<int>(vals_.rows()) - 2);
  int j = std::clamp(static_cast<int>(std::floor(b)), 0, static_cast<int>(vals_.cols()) - 2);
  double fa = a - m, fb = b - j;
  double v00 = vals_(m, j), v01 = vals_(m, j + 1), v10 = vals_(m + 1, j), v11 = vals_(m + 1, j + 1);
  require(std::isfinite(v00) && std::isfinite(v01) && std::isfinite(v10) && std::isfinite(v11), ErrorKind::interpolation_domain,
          "interpolation touches an uncomputed lattice value");
  return (1 - fa) * ((1 - fb) * v00 + fb * v01) + fa * ((1 - fb) * v10 + fb * v11);
}

}  // namespace hyperwave::coords
