#include <cmath>

#include "hyperwave/evolution.hpp"

namespace hyperwave::evolution {

Propagator::Propagator(const CMatrix& A, double ds, int steps_per_stride) : ds_(ds), k_(steps_per_stride) {
  require(ds > 0 && steps_per_stride >= 1, ErrorKind::invalid_argument, "propagator needs ds > 0 and a positive stride");
  const Eigen::Index m = A.rows();
  CMatrix hA = ds * A;
  CMatrix I = CMatrix::Identity(m, m);
  // Horner form of the RK4 stability polynomial.
  S_ = I + hA * (I + hA * (0.5 * I + hA * (I / 6.0 + hA / 24.0)));
  Q_ = I;
  CMatrix base = S_;
  for (int e = k_; e > 0; e >>= 1) {
    if (e & 1) Q_ = Q_ * base;
    if (e > 1) base = base * base;
  }
}

void check_step(const GeneratorMatrix& gen, double ds, double cfl) {
  const int n = gen.grid()->size();
  require(ds > 0, ErrorKind::invalid_argument, "time step must be positive");
  require(ds <= cfl / (static_cast<double>(n) * n) * (1 + 1e-12), ErrorKind::stability,
          "time step exceeds cfl / n^2 = " + std::to_string(cfl / (static_cast<double>(n) * n)));
  double probe = ds * gen.spectral_radius();
  require(probe <= kRk4StabilityRadius, ErrorKind::stability,
          "spectral-radius probe: ds * rho(L) = " + std::to_string(probe) + " leaves the RK4 stability disc");
}

Trajectory evolve(const GeneratorMatrix& gen, const EnergyState& init, double s_max, double ds, const EvolveOptions& opt) {
  require(s_max >= 0, ErrorKind::invalid_argument, "s_max must be nonnegative");
  require(opt.sample_every >= 1, ErrorKind::invalid_argument, "sample_every must be >= 1");
  check_step(gen, ds, opt.cfl);
  const long steps = std::lround(s_max / ds);
  const GridPtr& grid = gen.grid();
  Trajectory traj(grid);
  CVector x = init.compact();
  traj.push_back(0.0, init);
  const double e0 = energy_norm(init);
  const double growth = gen.potential().sup_norm() + 1;
  Propagator stride(gen.odd_block(), ds, opt.sample_every);
  long done = 0;
  while (done < steps) {
    long k = std::min<long>(opt.sample_every, steps - done);
    if (k == opt.sample_every) {
      x = stride.advance(x);
    } else {
      x = Propagator(gen.odd_block(), ds, static_cast<int>(k)).advance(x);
    }
    done += k;
    double s = done * ds;
    EnergyState st = EnergyState::from_compact(grid, x);
    double e = energy_norm(st);
    require(std::isfinite(e) && e <= 10 * std::exp(growth * s) * e0 + 1e-300, ErrorKind::divergence,
            "evolution norm exceeds the semigroup growth bound at s = " + std::to_string(s));
    traj.push_back(s, std::move(st));
  }
  return traj;
}

ResolventMatrix::ResolventMatrix(const GeneratorMatrix& gen, Complex lambda) : gen_(&gen), lambda_(lambda) {
  CMatrix A = -gen.odd_block();
  A.diagonal().array() += lambda;
  double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
  lu_.compute(A);
  sigma_ = lu_.rcond() * norm1;
  require(std::isfinite(sigma_) && sigma_ >= 1e-6, ErrorKind::near_spectrum,
          "lambda is within the near-spectrum guard of a generator eigenvalue");
}

EnergyState ResolventMatrix::apply(const EnergyState& x) const {
  return EnergyState::from_compact(gen_->grid(), lu_.solve(x.compact()));
}

ResolventMatrix resolvent_matrix(const GeneratorMatrix& gen, Complex lambda) { return ResolventMatrix(gen, lambda); }

}  // namespace hyperwave::evolution
