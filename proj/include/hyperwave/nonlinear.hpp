#pragma once

#include <vector>

#include "hyperwave/core_types.hpp"
#include "hyperwave/evolution.hpp"

namespace hyperwave::nonlinear {

/// Linear propagators for V = -1 sampled on the uniform node set s_j = j * interval.
/// C(s) f = u_{f,0}(s), S(s) g = u_{0,g}(s).
class PropagatorSet {
 public:
  /// steps_per_interval RK4 steps of size interval / steps_per_interval per node spacing.
  PropagatorSet(GridPtr grid, double interval, int steps_per_interval, double cfl = 4.0);
  /// Picks the smallest admissible step count for the given cfl.
  static PropagatorSet for_interval(GridPtr grid, double interval, double cfl = 4.0);

  const GridPtr& grid() const { return gen_.grid(); }
  const evolution::GeneratorMatrix& generator() const { return gen_; }
  const evolution::Propagator& stride() const { return step_; }
  double interval() const { return step_.interval(); }
  double ds() const { return step_.ds(); }

  OddField C(const OddField& f, int j) const;
  OddField S(const OddField& g, int j) const;
  /// Compact states E^j x for j = 0..M as columns.
  CMatrix linear(const EnergyState& data, int M) const;

 private:
  evolution::GeneratorMatrix gen_;
  evolution::Propagator step_;
};

/// Pointwise cube on compact coordinates: (u, v) -> (0, u^3).
CVector cubic_source(const CVector& compact);

/// Trapezoid Duhamel integral int_0^{s_j} e^{(s_j - s') L} (0, N(s')) ds' for compact
/// sources (0, N_j) given as columns; returns compact states.
CMatrix duhamel_integral(const PropagatorSet& prop, const CMatrix& sources);

/// K(u)_j = E^j data - Duhamel[(0, u^3)]_j on the node set of `iterate`.
Trajectory duhamel_step(const PropagatorSet& prop, const EnergyState& data, const Trajectory& iterate);

/// ||u||_{L^3 L^6} + ||u||_{L^inf L^6} over the trajectory.
double x_norm(const Trajectory& traj);
std::vector<double> l6_series(const Trajectory& traj);

struct PicardOptions {
  int nodes = 200;              ///< M, node spacing s_max / M
  double s_max = 10.0;
  int max_iter = 50;
  double tol = 1e-12;           ///< relative to the X-norm of the iterate
  double delta_threshold = 0.05;  ///< admissible data size
};

struct PicardRun {
  std::vector<Trajectory> iterates;  ///< u_0 = 0, u_1, ...
  std::vector<double> x_norms;       ///< X-norm per iterate
  std::vector<double> deltas;        ///< ||u_{k+1} - u_k||_X, k >= 0
  std::vector<double> ratios;        ///< deltas[k] / deltas[k-1], k >= 1
  bool converged = false;
  double residual = 0;               ///< ||u - K(u)||_{L^inf L^6} at the final iterate
  const Trajectory& solution() const { return iterates.back(); }
};

PicardRun picard_solve(const PropagatorSet& prop, const EnergyState& data, const PicardOptions& opt = {});

/// RK4 for the semilinear system with V = -1 and source (0, -u^3); samples every
/// `sample_every` steps. Throws blowup_detected if the L^6 norm exceeds 10 times
/// max(||f||_{L^6}, ||(f, g)||_H).
Trajectory nonlinear_evolve_direct(const GridPtr& grid, const EnergyState& data, double s_max, double ds,
                                   int sample_every = 1, double cfl = 4.0);

struct StabilityReport {
  double l3_l6 = 0;
  double linf_l6 = 0;
  double tail_l3_l6 = 0;  ///< over [s_max / 2, s_max]
  double decay_rate = 0;  ///< least-squares rate of ||u(s)||_{L^6} over the second half
};

StabilityReport asymptotic_stability_report(const Trajectory& traj);
StabilityReport asymptotic_stability_report(const EnergyState& data, double s_max, int nodes = 200);

struct CauchyOptions {
  double s0 = 0.5;
  double s1 = 2.0;
  double y_max = 0.9;
  double R = 20.0;
  double h = 0.05;          ///< spatial step of the (t, r) lattice; time step h / 2
  double band = 3.0;        ///< lookup band below the initial curve, in units of h
  double cfl = 4.0;         ///< hyperboloidal step bound cfl / n^2
};

struct CauchyResult {
  double discrepancy = 0;
  std::vector<double> ys;
  std::vector<double> u_hyperboloidal;
  std::vector<double> u_cauchy;
};

/// Solves the (t, r) wave equation W_tt - W_rr = W (1 - W^2) / cosh^2 r by leapfrog above
/// the curve t = s0 + log cosh r, seeded from the hyperboloidal solution below that curve,
/// and compares both on the slice s1 for |y| <= y_max.
CauchyResult cauchy_cross_check(const GridPtr& grid, const EnergyState& data, const CauchyOptions& opt = {});

}  // namespace hyperwave::nonlinear
