#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperwave/errors.hpp"

namespace hyperwave {

using Complex = std::complex<double>;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Side { left, right };

// ---------------------------------------------------------------------------
// Grid

/// Chebyshev-Gauss collocation grid on (-1, 1). Nodes are ascending and
/// exactly symmetric, y[n-1-j] == -y[j]; n must be even.
class Grid {
 public:
  explicit Grid(int n);

  int size() const { return n_; }
  int half() const { return n_ / 2; }
  const RVector& nodes() const { return y_; }
  double node(int j) const { return y_[j]; }
  const RMatrix& diff_matrix() const { return d_; }
  const RVector& quad_weights() const { return w_; }
  const RVector& bary_weights() const { return bw_; }
  /// 1 - y^2 at the nodes.
  const RVector& rho() const { return rho_; }

  CVector differentiate(const CVector& v) const { return d_ * v; }
  Complex integrate(const CVector& v) const { return w_.dot(v.real()) + Complex(0, 1) * w_.dot(v.imag()); }
  double integrate(const RVector& v) const { return w_.dot(v); }

  /// Barycentric interpolant through all nodes evaluated at x in [-1, 1].
  Complex interpolate(const CVector& v, double x) const;
  /// Row vector r with r.dot(v) == interpolate(v, x).
  RVector interpolation_row(double x) const;
  /// Trace at y = -1 or y = +1. stencil == 0 uses the full interpolant,
  /// otherwise the Lagrange polynomial through the nearest `stencil` nodes.
  Complex boundary_value(const CVector& v, Side side, int stencil = 0) const;

 private:
  int n_;
  RVector y_, w_, bw_, rho_;
  RMatrix d_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int n);

// ---------------------------------------------------------------------------
// Fields

/// Grid function satisfying f(-y) = -f(y) at the nodes.
class OddField {
 public:
  static constexpr double kParityTol = 1e-10;

  OddField() = default;
  /// Checks the parity defect against kParityTol and then projects.
  OddField(GridPtr grid, CVector values);

  static OddField zero(GridPtr grid);
  static OddField sample(GridPtr grid, const std::function<Complex(double)>& f);
  /// Odd extension of values given on the nonnegative half of the grid.
  static OddField from_half(GridPtr grid, const CVector& half_values);

  const GridPtr& grid() const { return grid_; }
  const CVector& values() const { return v_; }
  CVector half_values() const;
  int size() const { return static_cast<int>(v_.size()); }
  Complex operator[](int j) const { return v_[j]; }

  OddField& operator+=(const OddField& o);
  OddField& operator-=(const OddField& o);
  OddField& operator*=(Complex c);

  friend OddField operator+(OddField a, const OddField& b) { return a += b; }
  friend OddField operator-(OddField a, const OddField& b) { return a -= b; }
  friend OddField operator*(Complex c, OddField a) { return a *= c; }

  static double parity_defect(const CVector& v);

 private:
  GridPtr grid_;
  CVector v_;
};

/// Element (u, v) of the energy space: u is the field, v its s-derivative.
struct EnergyState {
  OddField u;
  OddField v;

  EnergyState() = default;
  EnergyState(OddField u_, OddField v_);

  const GridPtr& grid() const { return u.grid(); }
  /// Stacked nodal values (u, v), length 2n.
  CVector stacked() const;
  static EnergyState from_stacked(const GridPtr& grid, const CVector& x);
  /// Compact odd-sector coordinates: nonnegative-half values of (u, v), length n.
  CVector compact() const;
  static EnergyState from_compact(const GridPtr& grid, const CVector& x);

  EnergyState& operator+=(const EnergyState& o);
  EnergyState& operator-=(const EnergyState& o);
  friend EnergyState operator+(EnergyState a, const EnergyState& b) { return a += b; }
  friend EnergyState operator-(EnergyState a, const EnergyState& b) { return a -= b; }
  friend EnergyState operator*(Complex c, EnergyState a) {
    a.u *= c;
    a.v *= c;
    return a;
  }
};

// ---------------------------------------------------------------------------
// Potentials

/// Even potential V(y) on [-1, 1], analytic near y = 1.
class Potential {
 public:
  enum class Kind { constant, polynomial, analytic };

  static Potential constant(Complex c);
  /// Monomial coefficients a_k of y^k; odd coefficients must vanish.
  static Potential polynomial(std::vector<double> coeffs);
  /// Arbitrary even function analytic in a disc of radius `radius` around y = 1.
  static Potential analytic(std::string id, std::function<Complex(Complex)> fn, double radius = 0.5);

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  Complex operator()(double y) const { return eval(Complex(y, 0)); }
  Complex eval(Complex y) const;
  /// Coefficients b_j with V(1 - z) = sum_j b_j z^j, j < m.
  std::vector<Complex> taylor_at_one(int m) const;
  double sup_norm() const { return sup_; }
  bool is_real() const { return real_; }
  bool is_zero() const { return kind_ == Kind::constant && c_ == Complex(0, 0); }
  std::optional<Complex> constant_value() const;
  const std::vector<double>& poly_coeffs() const { return poly_; }
  /// Throws invalid_data unless V(y) = V(-y) to 1e-12 on the grid nodes.
  void check_even(const Grid& grid) const;

 private:
  Potential() = default;
  void finish();

  Kind kind_ = Kind::constant;
  std::string id_;
  Complex c_{0, 0};
  std::vector<double> poly_;
  std::function<Complex(Complex)> fn_;
  double radius_ = 0.5;
  double sup_ = 0;
  bool real_ = true;
};

// ---------------------------------------------------------------------------
// Chebyshev series and data profiles

/// sum_k c[k] T_k(x) on [-1, 1].
class ChebSeries {
 public:
  ChebSeries() = default;
  explicit ChebSeries(std::vector<double> c) : c_(std::move(c)) {}

  double operator()(double x) const;
  ChebSeries derivative() const;
  /// Antiderivative P with P(0) = 0.
  ChebSeries primitive() const;
  const std::vector<double>& coeffs() const { return c_; }
  bool is_odd(double tol = 0) const;

 private:
  std::vector<double> c_;
};

/// Scalar initial-data profile with derivative and, optionally, an exact primitive.
struct Profile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> primitive;  ///< may be empty
  std::optional<ChebSeries> series;

  static Profile zero();
  static Profile from_series(const ChebSeries& s);
  /// a * y
  static Profile linear(double a = 1.0);
  /// a (constant; not odd)
  static Profile constant(double a);
  bool has_primitive() const { return static_cast<bool>(primitive); }
  /// Sampled check of f(-x) = -f(x).
  bool is_odd(double tol = 1e-12) const;
};

// ---------------------------------------------------------------------------
// Trajectories

/// Time-ordered sequence of energy states on one grid.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(GridPtr grid) : grid_(std::move(grid)) {}

  void push_back(double s, EnergyState state);
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<EnergyState>& states() const { return states_; }
  const EnergyState& state(std::size_t i) const { return states_[i]; }
  double time(std::size_t i) const { return times_[i]; }
  const EnergyState& back() const { return states_.back(); }
  const GridPtr& grid() const { return grid_; }
  /// Sampling interval if uniform, else 0.
  double step() const;

 private:
  GridPtr grid_;
  std::vector<double> times_;
  std::vector<EnergyState> states_;
};

// ---------------------------------------------------------------------------
// Norms

/// Hilbert energy norm: int (1-y^2)|u'|^2 + int |v|^2, square-rooted.
double energy_norm(const EnergyState& x);
Complex energy_inner(const EnergyState& a, const EnergyState& b);
/// Homogeneous weighted seminorm sqrt(int (1-y^2)|f'|^2).
double hdot1_seminorm(const OddField& f);
/// L^q(-1,1) norm by the grid quadrature; q = kInf gives the nodal maximum.
double lq_norm(const OddField& f, double q);
double lq_norm(const Grid& grid, const CVector& values, double q);
/// L^q norm computed from compact half values (uses symmetry).
double lq_norm_half(const Grid& grid, const Eigen::Ref<const CVector>& half, double q);
/// L^p in s (trapezoid over the samples) of the L^q norm of the field component.
double mixed_norm(const Trajectory& traj, double p, double q);
double mixed_norm_series(const std::vector<double>& times, const std::vector<double>& values, double p);
/// ||f||_{L^q} / ||f||_{Hdot^1}; throws undefined_ratio for f == 0.
double sobolev_embedding_ratio(const OddField& f, double q);

// ---------------------------------------------------------------------------
// Utilities

/// Runs fn(i) for i in [0, count) on up to `threads` worker threads.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Gauss-Legendre nodes and weights on [-1, 1] for p in {8, 12, 16, 20, 30}.
void gauss_legendre(int p, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace hyperwave
