#pragma once

#include <vector>

#include "hyperwave/core_types.hpp"

namespace hyperwave::spectral {

struct FrobeniusOptions {
  int order = 12;          ///< Taylor order m at y = 1
  double delta = 1e-6;     ///< seed offset 1 - y
  double rel_tol = 1e-13;  ///< ODE stepper tolerance
};

/// Branch of the spectral ODE analytic at y = 1, normalized by u1(1) = 2^{-lambda}
/// (so that u1 = (1 + y)^{-lambda} for V = 0).
struct FrobeniusSolution {
  Complex lambda;
  std::vector<Complex> taylor;  ///< coefficients in powers of (1 - y)
  std::vector<double> ys;       ///< sample points in [0, 1)
  std::vector<Complex> u;       ///< u1 at ys
  std::vector<Complex> du;      ///< d/dy u1 at ys
  Complex u_at_zero;
  Complex du_at_zero;
};

/// Taylor coefficients of u1 in powers of (1 - y). Throws resonance when -lambda is a
/// positive integer within 1e-12 and k <= m.
std::vector<Complex> frobenius_coefficients(const Potential& V, Complex lambda, int m);

/// u1 and u1' at the points ys (each in [0, 1)); y = 0 is always recorded.
FrobeniusSolution build_u1(const Potential& V, Complex lambda, const std::vector<double>& ys,
                           const FrobeniusOptions& opt = {});
/// Samples at the nonnegative half of the grid.
FrobeniusSolution build_u1(const Potential& V, Complex lambda, const Grid& grid, const FrobeniusOptions& opt = {});
/// u1(0, lambda) only.
Complex u1_at_zero(const Potential& V, Complex lambda, const FrobeniusOptions& opt = {});

struct VolterraOptions {
  int order = 12;             ///< Gauss-Legendre points per panel
  double panel_width = 1.0;   ///< in xi = log((1 + y) / (1 - y)); reduced for large |lambda|
  double xi_max = 40.0;
  double tol = 1e-12;
  int max_iter = 200;
};

/// Successive-approximation solution h1 of
///   h(y) = 1 + int_y^1 K(y, x, lambda) h(x) dx,
///   K = [1 - r(y)^{-lambda} r(x)^{lambda}] V(x) / (2 lambda), r = (1 - x) / (1 + x).
class VolterraSolution {
 public:
  VolterraSolution(const Potential& V, Complex lambda, const VolterraOptions& opt);

  Complex lambda() const { return lambda_; }
  int iterations() const { return iterations_; }
  /// h1(y), y in [0, 1).
  Complex h(double y) const;
  /// u1(y) = (1 + y)^{-lambda} h1(y).
  Complex u1(double y) const;

 private:
  Complex at_xi(double xi) const;

  Complex lambda_;
  double H_;
  int p_, panels_;
  int iterations_ = 0;
  std::vector<double> t_;        ///< local nodes in [0, H]
  std::vector<double> w_;        ///< local weights
  std::vector<double> bary_;     ///< barycentric weights for t_
  std::vector<Complex> G_;       ///< V rho h at all nodes
  std::vector<Complex> tailA_;   ///< int_{b_P}^inf G
  std::vector<Complex> tailC_;   ///< int_{b_P}^inf e^{-lambda (xi - b_P)} G
};

VolterraSolution build_v1_volterra(const Potential& V, Complex lambda, const VolterraOptions& opt = {});

/// W(v1(., lambda), v1(., -lambda)) evaluated at several interior points; throws
/// inconsistency if it varies by more than 1e-6 relative.
Complex wronskian_pair(const Potential& V, Complex lambda, const FrobeniusOptions& opt = {});

// ---------------------------------------------------------------------------
// Spectral points

struct SpectralPoint {
  Complex lambda;
  int algebraic_multiplicity = 1;  ///< zero count of u1(0, .) at this root
  int nilpotency_order = 0;        ///< filled by the Riesz projection
  bool on_imaginary_axis = false;
  double residual = 0;             ///< |u1(0, lambda)| / max_y |u1(y, lambda)|
  OddField eigenfunction;          ///< odd extension of u1, sup-normalized
};

struct SearchWindow {
  double re_min = -1e-3;  ///< left edge, slightly left of the axis
  double re_max = 3.0;
  double im_max = 40.0;   ///< |Im lambda| <= im_max
};

struct ModeFinderOptions {
  FrobeniusOptions frobenius;
  int points_per_edge = 256;
  double axis_tol = 1e-6;
  double newton_tol = 1e-14;
  int max_depth = 40;
  double min_cell = 1e-7;
};

/// Zeros of lambda -> u1(0, lambda) in the window with Re lambda >= -axis_tol.
/// Eigenfunctions are sampled on `grid` when supplied.
std::vector<SpectralPoint> find_sigma_v(const Potential& V, const SearchWindow& window,
                                        const ModeFinderOptions& opt = {}, const GridPtr& grid = nullptr);

/// Winding number of u1(0, .) around the boundary of [re0, re1] x [im0, im1].
int winding_number(const Potential& V, double re0, double re1, double im0, double im1, int points_per_edge,
                   const FrobeniusOptions& opt = {});

// ---------------------------------------------------------------------------
// Green function

struct GreenOptions {
  FrobeniusOptions frobenius;
  double eps0 = 0.25;         ///< admissible strip Re lambda in (0, eps0]
  int points_per_segment = 20;
  double tail_span = 40.0;    ///< log-distance covered beyond the last node
  double near_eigenvalue = 1e-10;
};

/// u0 and u1 for the resolvent kernel at fixed lambda.
class GreenFunction {
 public:
  GreenFunction(const Potential& V, Complex lambda, const std::vector<double>& ys, const GreenOptions& opt = {});

  Complex lambda() const { return lambda_; }
  /// 2 lambda u1(0, lambda)
  Complex wronskian_factor() const { return 2.0 * lambda_ * u1_zero_; }
  const std::vector<double>& ys() const { return ys_; }
  const std::vector<Complex>& u0() const { return u0_; }
  const std::vector<Complex>& du0() const { return du0_; }
  const std::vector<Complex>& u1() const { return u1_; }
  const std::vector<Complex>& du1() const { return du1_; }
  /// (1 - x^2)^{1 + lambda} W(u0, u1)(x) at ys.
  std::vector<Complex> scaled_wronskian() const;

 private:
  Complex lambda_, u1_zero_;
  std::vector<double> ys_;
  std::vector<Complex> u0_, du0_, u1_, du1_, u1m_;
  friend EnergyState resolvent_apply(const Potential&, Complex, const EnergyState&, const GreenOptions&);
};

/// (lambda - L_V)^{-1} applied to an odd smooth state via the Green function.
EnergyState resolvent_apply(const Potential& V, Complex lambda, const EnergyState& state, const GreenOptions& opt = {});

}  // namespace hyperwave::spectral
