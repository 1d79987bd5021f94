#include <cmath>

#include <Eigen/Eigenvalues>

#include "hyperwave/evolution.hpp"

namespace hyperwave::evolution {

namespace {

RMatrix extension(int n) {
  const int h = n / 2;
  RMatrix E = RMatrix::Zero(n, h);
  for (int i = 0; i < h; ++i) {
    E(h + i, i) = 1.0;
    E(h - 1 - i, i) = -1.0;
  }
  return E;
}

RMatrix odd_restriction(int n) {
  const int h = n / 2;
  RMatrix R = RMatrix::Zero(h, n);
  for (int i = 0; i < h; ++i) {
    R(i, h + i) = 0.5;
    R(i, h - 1 - i) = -0.5;
  }
  return R;
}

RMatrix parity_projector(int n) {
  RMatrix P = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    P(i, i) += 0.5;
    P(i, n - 1 - i) -= 0.5;
  }
  return P;
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(GridPtr grid, Potential V) : grid_(std::move(grid)), V_(std::move(V)) {
  require(grid_ != nullptr, ErrorKind::invalid_argument, "generator without grid");
  V_.check_even(*grid_);
  const int n = grid_->size(), h = n / 2;
  const RMatrix& D = grid_->diff_matrix();
  const RVector& y = grid_->nodes();
  RMatrix D2 = D * D;
  RMatrix B21 = grid_->rho().asDiagonal() * D2 - (2 * y).asDiagonal() * D;
  RMatrix B22 = (-2 * y).asDiagonal() * D - RMatrix::Identity(n, n);
  CVector v(n);
  for (int j = 0; j < n; ++j) v[j] = V_(y[j]);

  RMatrix Pi = parity_projector(n), E = extension(n), R = odd_restriction(n);
  CMatrix L21 = B21.cast<Complex>();
  L21.diagonal() -= v;
  full_ = CMatrix::Zero(2 * n, 2 * n);
  full_.block(0, n, n, n) = Pi.cast<Complex>();
  full_.block(n, 0, n, n) = Pi.cast<Complex>() * L21 * Pi.cast<Complex>();
  full_.block(n, n, n, n) = (Pi * B22 * Pi).cast<Complex>();

  free_odd_ = CMatrix::Zero(n, n);
  free_odd_.block(0, h, h, h) = CMatrix::Identity(h, h);
  free_odd_.block(h, 0, h, h) = (R * B21 * E).cast<Complex>();
  free_odd_.block(h, h, h, h) = (R * B22 * E).cast<Complex>();
  odd_ = free_odd_;
  CMatrix Vodd = (R.cast<Complex>() * v.asDiagonal() * E.cast<Complex>());
  odd_.block(h, 0, h, h) -= Vodd;
}

EnergyState GeneratorMatrix::apply(const EnergyState& x) const {
  return EnergyState::from_compact(grid_, odd_ * x.compact());
}

EnergyState GeneratorMatrix::apply_free(const EnergyState& x) const {
  return EnergyState::from_compact(grid_, free_odd_ * x.compact());
}

const CVector& GeneratorMatrix::eigenvalues() const {
  if (!have_eig_) {
    Eigen::ComplexEigenSolver<CMatrix> es(odd_, false);
    require(es.info() == Eigen::Success, ErrorKind::internal, "generator eigenvalue computation failed");
    eig_ = es.eigenvalues();
    have_eig_ = true;
  }
  return eig_;
}

double GeneratorMatrix::spectral_radius() const { return eigenvalues().cwiseAbs().maxCoeff(); }

CMatrix GeneratorMatrix::extend(const CMatrix& c) const {
  const int n = grid_->size(), h = n / 2;
  require(c.rows() == n, ErrorKind::invalid_argument, "extend: expected compact rows");
  CMatrix E = extension(n).cast<Complex>();
  CMatrix out(2 * n, c.cols());
  out.topRows(n) = E * c.topRows(h);
  out.bottomRows(n) = E * c.bottomRows(h);
  return out;
}

CMatrix GeneratorMatrix::restrict_odd(const CMatrix& s) const {
  const int n = grid_->size(), h = n / 2;
  require(s.rows() == 2 * n, ErrorKind::invalid_argument, "restrict_odd: expected stacked rows");
  CMatrix R = odd_restriction(n).cast<Complex>();
  CMatrix out(n, s.cols());
  out.topRows(h) = R * s.topRows(n);
  out.bottomRows(h) = R * s.bottomRows(n);
  return out;
}

GeneratorMatrix assemble_generator(GridPtr grid, Potential V) { return GeneratorMatrix(std::move(grid), std::move(V)); }

double dissipation_defect(const GeneratorMatrix& gen, const EnergyState& f) {
  EnergyState Lf = gen.apply_free(f);
  const Grid& g = *gen.grid();
  double flux = std::norm(g.boundary_value(f.v.values(), Side::left)) + std::norm(g.boundary_value(f.v.values(), Side::right));
  return std::abs(energy_inner(Lf, f).real() + flux);
}

}  // namespace hyperwave::evolution
