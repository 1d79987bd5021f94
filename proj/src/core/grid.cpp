#include <cmath>
#include <numbers>

#include "hyperwave/core_types.hpp"

namespace hyperwave {

Grid::Grid(int n) : n_(n) {
  require(n >= 8 && n % 2 == 0, ErrorKind::invalid_argument, "grid size must be even and >= 8, got " + std::to_string(n));
  const double pi = std::numbers::pi;
  y_.resize(n);
  bw_.resize(n);
  w_.resize(n);
  for (int j = n / 2; j < n; ++j) {
    double y = std::sin(pi * (2.0 * j + 1 - n) / (2.0 * n));
    y_[j] = y;
    y_[n - 1 - j] = -y;
  }
  for (int j = 0; j < n; ++j) {
    double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    bw_[j] = sgn * std::sin((2.0 * j + 1) * pi / (2.0 * n));
  }
  // Fejer's first rule.
  for (int k = 0; k < n; ++k) {
    double th = (2.0 * k + 1) * pi / (2.0 * n);
    double acc = 0;
    for (int j = 1; j <= n / 2; ++j) acc += std::cos(2.0 * j * th) / (4.0 * j * j - 1.0);
    w_[k] = 2.0 / n * (1.0 - 2.0 * acc);
  }
  for (int k = 0; k < n / 2; ++k) {
    double m = 0.5 * (w_[k] + w_[n - 1 - k]);
    w_[k] = w_[n - 1 - k] = m;
  }
  d_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      d_(i, j) = (bw_[j] / bw_[i]) / (y_[i] - y_[j]);
      diag -= d_(i, j);
    }
    d_(i, i) = diag;
  }
  rho_ = (1.0 - y_.array().square()).matrix();
}

RVector Grid::interpolation_row(double x) const {
  require(x >= -1.0 && x <= 1.0, ErrorKind::interpolation_domain, "interpolation point outside [-1, 1]");
  RVector r = RVector::Zero(n_);
  for (int j = 0; j < n_; ++j) {
    if (x == y_[j]) {
      r[j] = 1.0;
      return r;
    }
  }
  double den = 0;
  for (int j = 0; j < n_; ++j) {
    r[j] = bw_[j] / (x - y_[j]);
    den += r[j];
  }
  return r / den;
}

Complex Grid::interpolate(const CVector& v, double x) const {
  require(v.size() == n_, ErrorKind::invalid_argument, "interpolate: size mismatch");
  RVector r = interpolation_row(x);
  return Complex(r.dot(v.real()), r.dot(v.imag()));
}

Complex Grid::boundary_value(const CVector& v, Side side, int stencil) const {
  double x = side == Side::left ? -1.0 : 1.0;
  if (stencil <= 0 || stencil >= n_) return interpolate(v, x);
  int first = side == Side::left ? 0 : n_ - stencil;
  Complex acc = 0;
  for (int a = first; a < first + stencil; ++a) {
    double l = 1;
    for (int b = first; b < first + stencil; ++b)
      if (b != a) l *= (x - y_[b]) / (y_[a] - y_[b]);
    acc += l * v[a];
  }
  return acc;
}

GridPtr make_grid(int n) { return std::make_shared<const Grid>(n); }

}  // namespace hyperwave
