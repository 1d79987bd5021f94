#include <cmath>

#include "hyperwave/nonlinear.hpp"

namespace hyperwave::nonlinear {

namespace {

double checked_ds(const GridPtr& grid, double interval, int steps) {
  require(grid != nullptr, ErrorKind::invalid_argument, "propagators need a grid");
  require(interval > 0 && steps >= 1, ErrorKind::invalid_argument, "propagators need interval > 0 and steps >= 1");
  return interval / steps;
}

}  // namespace

PropagatorSet::PropagatorSet(GridPtr grid, double interval, int steps_per_interval, double cfl)
    : gen_(grid, Potential::constant(-1.0)),
      step_(gen_.odd_block(), checked_ds(grid, interval, steps_per_interval), steps_per_interval) {
  evolution::check_step(gen_, step_.ds(), cfl);
}

PropagatorSet PropagatorSet::for_interval(GridPtr grid, double interval, double cfl) {
  const double n = grid->size();
  int steps = static_cast<int>(std::ceil(interval / (cfl / (n * n)) - 1e-9));
  return PropagatorSet(std::move(grid), interval, std::max(1, steps), cfl);
}

OddField PropagatorSet::C(const OddField& f, int j) const {
  CVector x = EnergyState(f, OddField::zero(grid())).compact();
  for (int i = 0; i < j; ++i) x = step_.advance(x);
  return EnergyState::from_compact(grid(), x).u;
}

OddField PropagatorSet::S(const OddField& g, int j) const {
  CVector x = EnergyState(OddField::zero(grid()), g).compact();
  for (int i = 0; i < j; ++i) x = step_.advance(x);
  return EnergyState::from_compact(grid(), x).u;
}

CMatrix PropagatorSet::linear(const EnergyState& data, int M) const {
  require(M >= 0, ErrorKind::invalid_argument, "node count must be nonnegative");
  CVector x = data.compact();
  CMatrix out(x.size(), M + 1);
  out.col(0) = x;
  for (int j = 1; j <= M; ++j) out.col(j) = step_.stride_matrix() * out.col(j - 1);
  return out;
}

CVector cubic_source(const CVector& x) {
  const Eigen::Index h = x.size() / 2;
  CVector out = CVector::Zero(x.size());
  out.tail(h) = x.head(h).array().cube().matrix();
  return out;
}

CMatrix duhamel_integral(const PropagatorSet& prop, const CMatrix& sources) {
  const double dt = prop.interval();
  CMatrix out(sources.rows(), sources.cols());
  if (sources.cols() == 0) return out;
  CVector R = 0.5 * dt * sources.col(0);
  out.col(0).setZero();
  for (Eigen::Index j = 1; j < sources.cols(); ++j) {
    R = prop.stride().advance(R) + dt * sources.col(j);
    out.col(j) = R - 0.5 * dt * sources.col(j);
  }
  return out;
}

Trajectory duhamel_step(const PropagatorSet& prop, const EnergyState& data, const Trajectory& iterate) {
  require(!iterate.empty(), ErrorKind::invalid_data, "Duhamel step needs a nonempty source trajectory");
  const int M = static_cast<int>(iterate.size()) - 1;
  for (int j = 0; j <= M; ++j)
    require(std::abs(iterate.time(j) - j * prop.interval()) <= 1e-9 * std::max(1.0, iterate.time(j)), ErrorKind::invalid_data,
            "source trajectory does not sit on the propagator node set");
  require(iterate.grid()->size() == prop.grid()->size(), ErrorKind::invalid_data, "source trajectory on a different grid");
  CMatrix src(prop.grid()->size(), M + 1);
  for (int j = 0; j <= M; ++j) src.col(j) = cubic_source(iterate.state(j).compact());
  CMatrix K = prop.linear(data, M) - duhamel_integral(prop, src);
  Trajectory out(prop.grid());
  for (int j = 0; j <= M; ++j) out.push_back(iterate.time(j), EnergyState::from_compact(prop.grid(), K.col(j)));
  return out;
}

std::vector<double> l6_series(const Trajectory& traj) {
  std::vector<double> v;
  v.reserve(traj.size());
  for (const auto& s : traj.states()) v.push_back(lq_norm(s.u, 6));
  return v;
}

double x_norm(const Trajectory& traj) {
  auto v = l6_series(traj);
  double linf = mixed_norm_series(traj.times(), v, kInf);
  double l3 = traj.size() >= 2 ? mixed_norm_series(traj.times(), v, 3) : 0.0;
  return l3 + linf;
}

}  // namespace hyperwave::nonlinear
