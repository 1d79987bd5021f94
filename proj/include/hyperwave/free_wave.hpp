#pragma once

#include "hyperwave/core_types.hpp"

namespace hyperwave::free_wave {

/// Exact solution of the free hyperboloidal problem with data (f, g).
class ClosedFormSolution {
 public:
  ClosedFormSolution(Profile f, Profile g);

  const Profile& f() const { return f_; }
  const Profile& g() const { return g_; }
  bool odd_data() const { return odd_; }

  /// Odd-data formula by adaptive Gauss-Kronrod quadrature.
  Complex evaluate(double s, double y) const;
  /// Odd-data formula through exact primitives when both profiles carry them.
  Complex evaluate_exact(double s, double y) const;
  /// s-derivative from the boundary terms of the integral.
  Complex evaluate_ds(double s, double y) const;
  /// Formula valid for arbitrary (not necessarily odd) smooth data.
  Complex evaluate_general(double s, double y) const;

  /// (u, du/ds) at slice s on the grid.
  EnergyState slice(const GridPtr& grid, double s) const;

 private:
  void check_args(double s, double y) const;
  double integrand(double x) const { return (1 + x) * f_.derivative(x) + g_.value(x); }

  Profile f_, g_;
  bool odd_;
};

/// Slices 0, ds, ..., s_max of the closed form.
Trajectory free_trajectory(const ClosedFormSolution& sol, const GridPtr& grid, double s_max, double ds);

/// Max over interior slices of |dE/ds + |v(-1)|^2 + |v(1)|^2| / E(0), E = ||.||^2 / 2.
/// dE/ds by the five-point stencil on uniform trajectories, centered differences otherwise.
double energy_flux_check(const Trajectory& traj);

}  // namespace hyperwave::free_wave
