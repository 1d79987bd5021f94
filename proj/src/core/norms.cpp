#include <cmath>

#include "hyperwave/core_types.hpp"

namespace hyperwave {

double hdot1_seminorm(const OddField& f) {
  const Grid& g = *f.grid();
  CVector d = g.differentiate(f.values());
  return std::sqrt(g.quad_weights().dot((g.rho().array() * d.array().abs2()).matrix()));
}

Complex energy_inner(const EnergyState& a, const EnergyState& b) {
  const Grid& g = *a.grid();
  CVector da = g.differentiate(a.u.values());
  CVector db = g.differentiate(b.u.values());
  CVector integrand = (g.rho().array().cast<Complex>() * da.array() * db.array().conjugate()).matrix() +
                      (a.v.values().array() * b.v.values().array().conjugate()).matrix();
  return g.integrate(integrand);
}

double energy_norm(const EnergyState& x) {
  const Grid& g = *x.grid();
  CVector d = g.differentiate(x.u.values());
  double e = g.quad_weights().dot((g.rho().array() * d.array().abs2()).matrix()) +
             g.quad_weights().dot(x.v.values().cwiseAbs2());
  return std::sqrt(e);
}

double lq_norm(const Grid& grid, const CVector& values, double q) {
  require(q >= 1, ErrorKind::invalid_argument, "L^q exponent must be >= 1");
  if (std::isinf(q)) return values.cwiseAbs().maxCoeff();
  double acc = 0;
  for (int j = 0; j < values.size(); ++j) acc += grid.quad_weights()[j] * std::pow(std::abs(values[j]), q);
  return std::pow(acc, 1.0 / q);
}

double lq_norm(const OddField& f, double q) { return lq_norm(*f.grid(), f.values(), q); }

double lq_norm_half(const Grid& grid, const Eigen::Ref<const CVector>& half, double q) {
  require(q >= 1, ErrorKind::invalid_argument, "L^q exponent must be >= 1");
  if (std::isinf(q)) return half.cwiseAbs().maxCoeff();
  const int h = grid.half();
  double acc = 0;
  for (int i = 0; i < h; ++i) acc += grid.quad_weights()[h + i] * std::pow(std::abs(half[i]), q);
  return std::pow(2 * acc, 1.0 / q);
}

double mixed_norm_series(const std::vector<double>& t, const std::vector<double>& f, double p) {
  require(t.size() == f.size() && !t.empty(), ErrorKind::invalid_data, "mixed norm: empty or mismatched series");
  require(p >= 1, ErrorKind::invalid_argument, "mixed norm: time exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0;
    for (double x : f) m = std::max(m, x);
    return m;
  }
  require(t.size() >= 2, ErrorKind::invalid_argument, "mixed norm: need at least two samples for finite p");
  double acc = 0;
  for (std::size_t i = 1; i < t.size(); ++i)
    acc += 0.5 * (t[i] - t[i - 1]) * (std::pow(f[i], p) + std::pow(f[i - 1], p));
  return std::pow(acc, 1.0 / p);
}

double mixed_norm(const Trajectory& traj, double p, double q) {
  std::vector<double> vals;
  vals.reserve(traj.size());
  for (const auto& st : traj.states()) vals.push_back(lq_norm(st.u, q));
  return mixed_norm_series(traj.times(), vals, p);
}

double sobolev_embedding_ratio(const OddField& f, double q) {
  double den = hdot1_seminorm(f);
  require(den > 0, ErrorKind::undefined_ratio, "embedding ratio of the zero field");
  return lq_norm(f, q) / den;
}

}  // namespace hyperwave
