#include <cmath>

#include "hyperwave/nonlinear.hpp"

namespace hyperwave::nonlinear {

namespace {

Trajectory to_trajectory(const GridPtr& grid, const CMatrix& X, double dt) {
  Trajectory t(grid);
  for (Eigen::Index j = 0; j < X.cols(); ++j) t.push_back(j * dt, EnergyState::from_compact(grid, X.col(j)));
  return t;
}

double x_norm_compact(const Grid& grid, const CMatrix& X, double dt) {
  const Eigen::Index h = X.rows() / 2;
  std::vector<double> t(X.cols()), v(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    t[j] = j * dt;
    v[j] = lq_norm_half(grid, X.col(j).head(h), 6);
  }
  double l3 = X.cols() >= 2 ? mixed_norm_series(t, v, 3) : 0.0;
  return l3 + mixed_norm_series(t, v, kInf);
}

double linf_l6_compact(const Grid& grid, const CMatrix& X) {
  const Eigen::Index h = X.rows() / 2;
  double m = 0;
  for (Eigen::Index j = 0; j < X.cols(); ++j) m = std::max(m, lq_norm_half(grid, X.col(j).head(h), 6));
  return m;
}

CMatrix apply_K(const PropagatorSet& prop, const CMatrix& lin, const CMatrix& U) {
  CMatrix src(U.rows(), U.cols());
  for (Eigen::Index j = 0; j < U.cols(); ++j) src.col(j) = cubic_source(U.col(j));
  return lin - duhamel_integral(prop, src);
}

}  // namespace

PicardRun picard_solve(const PropagatorSet& prop, const EnergyState& data, const PicardOptions& opt) {
  require(opt.nodes >= 1 && opt.s_max > 0 && opt.max_iter >= 1, ErrorKind::invalid_argument, "invalid Picard options");
  const double dt = opt.s_max / opt.nodes;
  require(std::abs(dt - prop.interval()) <= 1e-12 * dt, ErrorKind::invalid_data,
          "propagator interval does not match s_max / nodes");
  double e = energy_norm(data);
  require(e < opt.delta_threshold, ErrorKind::invalid_argument,
          "data energy " + std::to_string(e) + " is not below the small-data threshold");
  const Grid& grid = *prop.grid();
  const int M = opt.nodes;
  CMatrix lin = prop.linear(data, M);

  PicardRun run;
  CMatrix U = CMatrix::Zero(lin.rows(), M + 1);
  run.iterates.push_back(to_trajectory(prop.grid(), U, dt));
  run.x_norms.push_back(0.0);
  int above = 0;
  for (int it = 0; it < opt.max_iter; ++it) {
    CMatrix Un = apply_K(prop, lin, U);
    double dx = x_norm_compact(grid, Un - U, dt);
    double xn = x_norm_compact(grid, Un, dt);
    run.iterates.push_back(to_trajectory(prop.grid(), Un, dt));
    run.x_norms.push_back(xn);
    run.deltas.push_back(dx);
    if (run.deltas.size() >= 2) {
      double prev = run.deltas[run.deltas.size() - 2];
      double r = prev > 0 ? dx / prev : 0.0;
      run.ratios.push_back(r);
      above = r > 1 ? above + 1 : 0;
      require(above < 3, ErrorKind::contraction_failure, "Picard differences grew three times in a row");
    }
    U = std::move(Un);
    if (dx <= opt.tol * xn || dx == 0) {
      run.converged = true;
      break;
    }
  }
  run.residual = linf_l6_compact(grid, U - apply_K(prop, lin, U));
  return run;
}

StabilityReport asymptotic_stability_report(const Trajectory& traj) {
  StabilityReport r;
  if (traj.size() < 2) return r;
  auto v = l6_series(traj);
  r.l3_l6 = mixed_norm_series(traj.times(), v, 3);
  r.linf_l6 = mixed_norm_series(traj.times(), v, kInf);
  const double half = 0.5 * traj.times().back();
  std::vector<double> ts, vs;
  for (std::size_t i = 0; i < traj.size(); ++i)
    if (traj.time(i) >= half - 1e-12) {
      ts.push_back(traj.time(i));
      vs.push_back(v[i]);
    }
  r.tail_l3_l6 = ts.size() >= 2 ? mixed_norm_series(ts, vs, 3) : 0.0;
  // Least-squares slope of log ||u||_{L^6} on the second half.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (vs[i] <= 0) continue;
    double ly = std::log(vs[i]);
    sx += ts[i];
    sy += ly;
    sxx += ts[i] * ts[i];
    sxy += ts[i] * ly;
    ++cnt;
  }
  if (cnt >= 2) {
    double den = cnt * sxx - sx * sx;
    if (den > 0) r.decay_rate = -(cnt * sxy - sx * sy) / den;
  }
  return r;
}

StabilityReport asymptotic_stability_report(const EnergyState& data, double s_max, int nodes) {
  auto prop = PropagatorSet::for_interval(data.grid(), s_max / nodes);
  PicardOptions opt;
  opt.nodes = nodes;
  opt.s_max = s_max;
  return asymptotic_stability_report(picard_solve(prop, data, opt).solution());
}

}  // namespace hyperwave::nonlinear
