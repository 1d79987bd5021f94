#pragma once

#include <vector>

#include <Eigen/LU>

#include "hyperwave/core_types.hpp"
#include "hyperwave/spectral.hpp"

namespace hyperwave::evolution {

/// Collocation matrix of the first-order system generator with potential V,
///   (f1, f2) -> (f2, (1 - y^2) f1'' - 2y f1' - 2y f2' - f2 - V f1),
/// composed with the parity projection.
class GeneratorMatrix {
 public:
  GeneratorMatrix(GridPtr grid, Potential V);

  const GridPtr& grid() const { return grid_; }
  const Potential& potential() const { return V_; }
  /// 2n x 2n operator on stacked nodal values.
  const CMatrix& matrix() const { return full_; }
  /// n x n restriction to the odd sector in compact coordinates (EnergyState::compact).
  const CMatrix& odd_block() const { return odd_; }
  /// Odd block of the V = 0 part.
  const CMatrix& free_odd_block() const { return free_odd_; }

  EnergyState apply(const EnergyState& x) const;
  EnergyState apply_free(const EnergyState& x) const;
  /// Eigenvalues of the odd block (computed on first use).
  const CVector& eigenvalues() const;
  double spectral_radius() const;

  /// compact -> stacked (odd extension), n x ... -> 2n x ...
  CMatrix extend(const CMatrix& compact) const;
  /// stacked -> compact after the parity projection.
  CMatrix restrict_odd(const CMatrix& stacked) const;

 private:
  GridPtr grid_;
  Potential V_;
  CMatrix full_, odd_, free_odd_;
  mutable CVector eig_;
  mutable bool have_eig_ = false;
};

GeneratorMatrix assemble_generator(GridPtr grid, Potential V);

/// |Re (L0 f | f)_H + |f2(-1)|^2 + |f2(1)|^2| with extrapolated traces.
double dissipation_defect(const GeneratorMatrix& gen, const EnergyState& f);

/// RK4 stepping for dx/ds = A x, grouped into strides of k steps.
class Propagator {
 public:
  Propagator(const CMatrix& A, double ds, int steps_per_stride);

  double ds() const { return ds_; }
  int steps_per_stride() const { return k_; }
  double interval() const { return ds_ * k_; }
  const CMatrix& stride_matrix() const { return Q_; }
  const CMatrix& step_matrix() const { return S_; }
  CVector advance(const CVector& x) const { return Q_ * x; }
  CMatrix advance(const CMatrix& X) const { return Q_ * X; }

 private:
  double ds_;
  int k_;
  CMatrix S_, Q_;
};

/// Conservative disc inside the RK4 stability region.
inline constexpr double kRk4StabilityRadius = 2.5;

struct EvolveOptions {
  double cfl = 4.0;       ///< ds <= cfl / n^2
  int sample_every = 1;  ///< keep every k-th step
};

/// Checks the step bound and the spectral-radius probe; throws stability otherwise.
void check_step(const GeneratorMatrix& gen, double ds, double cfl);

Trajectory evolve(const GeneratorMatrix& gen, const EnergyState& init, double s_max, double ds, const EvolveOptions& opt = {});

/// LU-factorized (lambda - L) on the odd sector.
class ResolventMatrix {
 public:
  ResolventMatrix(const GeneratorMatrix& gen, Complex lambda);

  Complex lambda() const { return lambda_; }
  EnergyState apply(const EnergyState& x) const;
  CVector solve_compact(const CVector& x) const { return lu_.solve(x); }
  CMatrix solve_compact(const CMatrix& X) const { return lu_.solve(X); }
  CMatrix inverse_compact() const { return lu_.inverse(); }
  /// Lower bound estimate of the smallest singular value of (lambda - L).
  double sigma_min_estimate() const { return sigma_; }

 private:
  const GeneratorMatrix* gen_;
  Complex lambda_;
  Eigen::PartialPivLU<CMatrix> lu_;
  double sigma_;
};

ResolventMatrix resolvent_matrix(const GeneratorMatrix& gen, Complex lambda);

struct Circle {
  Complex center;
  double radius = 0.25;
  int nodes = 64;
};

struct RieszProjection {
  std::vector<Circle> contour;
  CMatrix compact;  ///< n x n on compact odd coordinates
  int rank = 0;
  std::vector<std::pair<Complex, int>> nilpotency;  ///< (eigenvalue estimate, n(lambda)) per circle
  double idempotency_defect = 0;                     ///< ||P^2 - P|| / max(1, ||P||)
  double commutator_defect = 0;                      ///< ||PL - LP|| / (||L|| max(1, ||P||))

  /// 2n x 2n matrix on stacked nodal values.
  CMatrix matrix(const GeneratorMatrix& gen) const;
  EnergyState apply(const EnergyState& x) const;
};

/// Trapezoid contour quadrature of the resolvent over one or more disjoint circles.
RieszProjection riesz_projection(const GeneratorMatrix& gen, const std::vector<Circle>& circles);

/// Eigenvalues with Re >= 0 of the continuous problem and their projections.
struct SpectralSplit {
  std::vector<spectral::SpectralPoint> points;
  std::vector<RieszProjection> projections;  ///< one per point
  CMatrix total;                             ///< sum of the compact projections
};

/// Throws spectral_assumption if an eigenvalue sits on the imaginary axis.
SpectralSplit spectral_split(const GeneratorMatrix& gen, const spectral::SearchWindow& window = {},
                             const spectral::ModeFinderOptions& opt = {});

struct UnstableMode {
  Complex lambda;
  int nilpotency = 0;
  std::vector<EnergyState> phi;  ///< phi[k] = (L - lambda)^k P f / k!
};

struct DecomposedEvolution {
  std::vector<UnstableMode> unstable_part;
  Trajectory stable_trajectory;

  /// sum_lambda e^{lambda s} sum_k s^k phi[k]
  EnergyState unstable_state(double s) const;
};

DecomposedEvolution decompose_and_evolve(const GeneratorMatrix& gen, const SpectralSplit& split, const EnergyState& init,
                                         double s_max, double ds, const EvolveOptions& opt = {});

/// max over members and samples of e^{-eps s} ||u_stable(s)||_H / ||init||_H; zero members contribute 0.
double stable_growth_probe(const GeneratorMatrix& gen, const SpectralSplit& split, const std::vector<EnergyState>& ensemble,
                           double epsilon, double s_max, double ds, const EvolveOptions& opt = {});

}  // namespace hyperwave::evolution
