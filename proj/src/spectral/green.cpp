#include <cmath>

#include "hyperwave/spectral.hpp"

namespace hyperwave::spectral {

namespace {

// (1 - y^2)^{-lambda}
Complex weight_pow(double one_minus_y2, Complex lambda) { return std::exp(-lambda * std::log(one_minus_y2)); }

}  // namespace

GreenFunction::GreenFunction(const Potential& V, Complex lambda, const std::vector<double>& ys, const GreenOptions& opt)
    : lambda_(lambda), ys_(ys) {
  auto a = build_u1(V, lambda, ys, opt.frobenius);
  u1_zero_ = a.u_at_zero;
  require(std::abs(u1_zero_) >= opt.near_eigenvalue, ErrorKind::near_eigenvalue,
          "u1(0, lambda) vanishes: lambda is (numerically) an eigenvalue");
  require(lambda.real() > 0 && lambda.real() <= opt.eps0, ErrorKind::invalid_argument,
          "Green function needs Re lambda in (0, eps0]");
  auto b = build_u1(V, -lambda, ys, opt.frobenius);
  const Complex u1m_zero = b.u_at_zero;
  u1_ = a.u;
  du1_ = a.du;
  u1m_ = b.u;
  u0_.resize(ys.size());
  du0_.resize(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    double y = ys[i], r = 1 - y * y;
    Complex p = weight_pow(r, lambda);
    u0_[i] = u1m_zero * a.u[i] - u1_zero_ * p * b.u[i];
    du0_[i] = u1m_zero * a.du[i] - u1_zero_ * (p * b.du[i] + 2.0 * lambda * y * p / r * b.u[i]);
  }
}

std::vector<Complex> GreenFunction::scaled_wronskian() const {
  std::vector<Complex> w(ys_.size());
  for (std::size_t i = 0; i < ys_.size(); ++i) {
    double r = 1 - ys_[i] * ys_[i];
    w[i] = std::exp((1.0 + lambda_) * std::log(r)) * (u0_[i] * du1_[i] - du0_[i] * u1_[i]);
  }
  return w;
}

EnergyState resolvent_apply(const Potential& V, Complex lambda, const EnergyState& state, const GreenOptions& opt) {
  const GridPtr& grid = state.grid();
  const Grid& g = *grid;
  const int n = g.size(), h = n / 2;
  require(opt.points_per_segment == 8 || opt.points_per_segment == 12 || opt.points_per_segment == 16 ||
              opt.points_per_segment == 20 || opt.points_per_segment == 30,
          ErrorKind::invalid_argument, "unsupported points per segment");

  std::vector<double> gx, gw;
  gauss_legendre(opt.points_per_segment, gx, gw);

  // Quadrature nodes: segments [0, y_h], [y_h, y_{h+1}], ..., then a tail to 1 in
  // the variable tau with 1 - x = (1 - y_last) e^{-tau}.
  std::vector<double> xs, ws;
  std::vector<int> seg_end;  // index into xs after each segment
  double left = 0;
  for (int i = 0; i < h; ++i) {
    double right = g.node(h + i);
    for (std::size_t k = 0; k < gx.size(); ++k) {
      xs.push_back(left + 0.5 * (right - left) * (gx[k] + 1));
      ws.push_back(0.5 * (right - left) * gw[k]);
    }
    seg_end.push_back(static_cast<int>(xs.size()));
    left = right;
  }
  const int interior = static_cast<int>(xs.size());
  const double c = 1 - g.node(n - 1);
  const double tau_max = std::min(opt.tail_span, std::log(c / 1e-14));
  const int tail_panels = std::max(1, static_cast<int>(std::ceil(tau_max)));
  const double dt = tau_max / tail_panels;
  std::vector<double> zs;
  for (int P = 0; P < tail_panels; ++P)
    for (std::size_t k = 0; k < gx.size(); ++k) {
      double tau = dt * (P + 0.5 * (gx[k] + 1));
      double x = 1 - c * std::exp(-tau);
      double z = 1 - x;
      xs.push_back(x);
      ws.push_back(dt * 0.5 * gw[k] * z);
    }

  std::vector<double> pts(xs);
  for (int i = 0; i < h; ++i) pts.push_back(g.node(h + i));
  GreenFunction G(V, lambda, pts, opt);
  const Complex u1m0 = build_u1(V, -lambda, std::vector<double>{}, opt.frobenius).u_at_zero;
  const Complex u10 = G.wronskian_factor() / (2.0 * lambda);

  const CVector& f1 = state.u.values();
  const CVector& f2 = state.v.values();
  CVector df1 = g.differentiate(f1);
  const int nq = static_cast<int>(xs.size());
  std::vector<Complex> a(nq), b(nq);
  for (int q = 0; q < nq; ++q) {
    double x = xs[q];
    RVector row = g.interpolation_row(x);
    auto ip = [&](const CVector& v) { return Complex(row.dot(v.real()), row.dot(v.imag())); };
    Complex F = 2 * x * ip(df1) + (lambda + 1.0) * ip(f1) + ip(f2);
    double r = (1 - x) * (1 + x);
    Complex p = std::exp(lambda * std::log(r));
    a[q] = p * G.u1()[q] * F;
    b[q] = u1m0 * a[q] - u10 * G.u1m_[q] * F;
  }

  // I(y_i) = int_{y_i}^1 a, J(y_i) = int_0^{y_i} b.
  std::vector<Complex> I(h), J(h);
  Complex acc = 0;
  for (int q = interior; q < nq; ++q) acc += ws[q] * a[q];
  for (int i = h - 1; i >= 0; --i) {
    I[i] = acc;
    int lo = i == 0 ? 0 : seg_end[i - 1];
    for (int q = lo; q < seg_end[i]; ++q) acc += ws[q] * a[q];
  }
  acc = 0;
  for (int i = 0; i < h; ++i) {
    int lo = i == 0 ? 0 : seg_end[i - 1];
    for (int q = lo; q < seg_end[i]; ++q) acc += ws[q] * b[q];
    J[i] = acc;
  }

  const Complex denom = G.wronskian_factor();
  CVector w(h), w2(h);
  for (int i = 0; i < h; ++i) {
    int k = nq + i;
    w[i] = -(G.u0()[k] * I[i] + G.u1()[k] * J[i]) / denom;
    w2[i] = lambda * w[i] - f1[h + i];
  }
  return EnergyState(OddField::from_half(grid, w), OddField::from_half(grid, w2));
}

}  // namespace hyperwave::spectral
