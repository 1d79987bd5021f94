#include "hyperwave/free_wave.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hyperwave::free_wave {

namespace {

double adaptive(const std::function<double(double)>& fn, double a, double b) {
  if (a == b) return 0.0;
  double err = 0;
  double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, a, b, 15, 1e-14, &err);
  require(std::isfinite(val), ErrorKind::invalid_data, "closed form: non-finite quadrature");
  return val;
}

}  // namespace

ClosedFormSolution::ClosedFormSolution(Profile f, Profile g) : f_(std::move(f)), g_(std::move(g)) {
  require(f_.value && f_.derivative && g_.value, ErrorKind::invalid_argument, "closed form needs f, f' and g");
  odd_ = f_.is_odd() && g_.is_odd();
}

void ClosedFormSolution::check_args(double s, double y) const {
  require(s >= 0, ErrorKind::invalid_argument, "closed form: s must be >= 0");
  require(std::abs(y) < 1, ErrorKind::out_of_chart, "closed form: |y| must be < 1");
}

Complex ClosedFormSolution::evaluate(double s, double y) const {
  check_args(s, y);
  require(odd_, ErrorKind::invalid_data, "odd-data formula used with non-odd data");
  if (s == 0) return f_.value(y);
  double e = std::exp(-s);
  double lo = 1 - e * (1 + y), hi = 1 - e * (1 - y);
  require(lo > -1 && lo < 1 && hi > -1 && hi < 1, ErrorKind::inconsistency, "closed form: integration limits left (-1, 1)");
  return 0.5 * adaptive([this](double x) { return integrand(x); }, lo, hi);
}

Complex ClosedFormSolution::evaluate_exact(double s, double y) const {
  if (!f_.has_primitive() || !g_.has_primitive()) return evaluate(s, y);
  check_args(s, y);
  require(odd_, ErrorKind::invalid_data, "odd-data formula used with non-odd data");
  if (s == 0) return f_.value(y);
  double e = std::exp(-s);
  double lo = 1 - e * (1 + y), hi = 1 - e * (1 - y);
  // int (1+x) f' = (1+x) f - F
  auto prim = [this](double x) { return (1 + x) * f_.value(x) - f_.primitive(x) + g_.primitive(x); };
  return 0.5 * (prim(hi) - prim(lo));
}

Complex ClosedFormSolution::evaluate_ds(double s, double y) const {
  check_args(s, y);
  require(odd_, ErrorKind::invalid_data, "odd-data formula used with non-odd data");
  double e = std::exp(-s);
  double lo = 1 - e * (1 + y), hi = 1 - e * (1 - y);
  return 0.5 * e * (integrand(hi) * (1 - y) - integrand(lo) * (1 + y));
}

Complex ClosedFormSolution::evaluate_general(double s, double y) const {
  check_args(s, y);
  if (s == 0) return f_.value(y);
  double e = std::exp(-s);
  double lo = -1 + e * (1 + y), hi = 1 - e * (1 - y);
  require(lo > -1 && lo < 1 && hi > -1 && hi < 1, ErrorKind::inconsistency, "closed form: integration limits left (-1, 1)");
  double a = adaptive([this](double x) { return (1 - x) * f_.derivative(x); }, lo, 0.0);
  double b = adaptive([this](double x) { return (1 + x) * f_.derivative(x); }, 0.0, hi);
  double c = adaptive([this](double x) { return g_.value(x); }, lo, hi);
  return f_.value(0.0) - 0.5 * a + 0.5 * b + 0.5 * c;
}

EnergyState ClosedFormSolution::slice(const GridPtr& grid, double s) const {
  const int h = grid->half();
  CVector u(h), v(h);
  for (int i = 0; i < h; ++i) {
    double y = grid->node(h + i);
    u[i] = evaluate_exact(s, y);
    v[i] = evaluate_ds(s, y);
  }
  return EnergyState(OddField::from_half(grid, u), OddField::from_half(grid, v));
}

Trajectory free_trajectory(const ClosedFormSolution& sol, const GridPtr& grid, double s_max, double ds) {
  require(ds > 0 && s_max >= ds, ErrorKind::invalid_argument, "free trajectory: need ds > 0 and s_max >= ds");
  const long steps = std::lround(s_max / ds);
  Trajectory traj(grid);
  for (long k = 0; k <= steps; ++k) {
    double s = k * ds;
    traj.push_back(s, sol.slice(grid, s));
  }
  return traj;
}

double energy_flux_check(const Trajectory& traj) {
  require(traj.size() >= 3, ErrorKind::invalid_data, "flux check needs at least three slices");
  std::vector<double> e(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) e[i] = 0.5 * std::pow(energy_norm(traj.state(i)), 2);
  if (e[0] == 0) return 0.0;
  double worst = 0;
  const bool five = traj.size() >= 5 && traj.step() > 0;
  const std::size_t w = five ? 2 : 1;
  for (std::size_t i = w; i + w < traj.size(); ++i) {
    const Grid& g = *traj.grid();
    const CVector& v = traj.state(i).v.values();
    double flux = std::norm(g.boundary_value(v, Side::left)) + std::norm(g.boundary_value(v, Side::right));
    double dE = five ? (e[i - 2] - 8 * e[i - 1] + 8 * e[i + 1] - e[i + 2]) / (12 * traj.step())
                     : (e[i + 1] - e[i - 1]) / (traj.time(i + 1) - traj.time(i - 1));
    worst = std::max(worst, std::abs(dE + flux));
  }
  return worst / e[0];
}

}  // namespace hyperwave::free_wave
