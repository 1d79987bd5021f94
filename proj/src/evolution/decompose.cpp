#include <cmath>

#include "hyperwave/evolution.hpp"

namespace hyperwave::evolution {

SpectralSplit spectral_split(const GeneratorMatrix& gen, const spectral::SearchWindow& window,
                             const spectral::ModeFinderOptions& opt) {
  SpectralSplit split;
  split.points = spectral::find_sigma_v(gen.potential(), window, opt, gen.grid());
  for (const auto& p : split.points)
    require(!p.on_imaginary_axis, ErrorKind::spectral_assumption,
            "eigenvalue on the imaginary axis at Im = " + std::to_string(p.lambda.imag()));
  const Eigen::Index m = gen.odd_block().rows();
  split.total = CMatrix::Zero(m, m);
  for (std::size_t i = 0; i < split.points.size(); ++i) {
    auto& p = split.points[i];
    double r = std::min(0.25, 0.9 * p.lambda.real());
    for (std::size_t j = 0; j < split.points.size(); ++j)
      if (j != i) r = std::min(r, 0.45 * std::abs(p.lambda - split.points[j].lambda));
    auto proj = riesz_projection(gen, {Circle{p.lambda, r, 64}});
    p.algebraic_multiplicity = proj.rank;
    p.nilpotency_order = proj.nilpotency.empty() ? 0 : proj.nilpotency[0].second;
    split.total += proj.compact;
    split.projections.push_back(std::move(proj));
  }
  return split;
}

EnergyState DecomposedEvolution::unstable_state(double s) const {
  require(!stable_trajectory.empty(), ErrorKind::invalid_argument, "empty decomposition");
  EnergyState acc = 0.0 * stable_trajectory.state(0);
  for (const auto& mode : unstable_part) {
    Complex e = std::exp(mode.lambda * s);
    double sk = 1;
    for (const auto& phi : mode.phi) {
      acc += (e * sk) * phi;
      sk *= s;
    }
  }
  return acc;
}

namespace {

Trajectory stable_evolution(const GeneratorMatrix& gen, const CMatrix& P, const EnergyState& init, double s_max, double ds,
                            const EvolveOptions& opt) {
  check_step(gen, ds, opt.cfl);
  require(opt.sample_every >= 1, ErrorKind::invalid_argument, "sample_every must be >= 1");
  const GridPtr& grid = gen.grid();
  const Eigen::Index m = P.rows();
  CMatrix Q = CMatrix::Identity(m, m) - P;
  CVector x = Q * init.compact();
  Trajectory traj(grid);
  traj.push_back(0.0, EnergyState::from_compact(grid, x));
  const long steps = std::lround(s_max / ds);
  Propagator stride(gen.odd_block(), ds, opt.sample_every);
  const double e0 = energy_norm(init);
  const double growth = gen.potential().sup_norm() + 1;
  long done = 0;
  while (done < steps) {
    long k = std::min<long>(opt.sample_every, steps - done);
    x = (k == opt.sample_every) ? stride.advance(x) : Propagator(gen.odd_block(), ds, static_cast<int>(k)).advance(x);
    x = Q * x;
    done += k;
    EnergyState st = EnergyState::from_compact(grid, x);
    double s = done * ds;
    double e = energy_norm(st);
    require(std::isfinite(e) && e <= 10 * std::exp(growth * s) * e0 + 1e-300, ErrorKind::divergence,
            "stable evolution exceeds the semigroup growth bound");
    traj.push_back(s, std::move(st));
  }
  return traj;
}

}  // namespace

DecomposedEvolution decompose_and_evolve(const GeneratorMatrix& gen, const SpectralSplit& split, const EnergyState& init,
                                         double s_max, double ds, const EvolveOptions& opt) {
  DecomposedEvolution out;
  const GridPtr& grid = gen.grid();
  const CMatrix& A = gen.odd_block();
  CVector x0 = init.compact();
  for (std::size_t i = 0; i < split.points.size(); ++i) {
    const auto& proj = split.projections[i];
    UnstableMode mode;
    mode.lambda = proj.nilpotency.empty() ? split.points[i].lambda : proj.nilpotency[0].first;
    mode.nilpotency = split.points[i].nilpotency_order;
    CVector phi = proj.compact * x0;
    mode.phi.push_back(EnergyState::from_compact(grid, phi));
    for (int k = 1; k <= mode.nilpotency; ++k) {
      phi = (A * phi - mode.lambda * phi) / static_cast<double>(k);
      mode.phi.push_back(EnergyState::from_compact(grid, phi));
    }
    out.unstable_part.push_back(std::move(mode));
  }
  out.stable_trajectory = stable_evolution(gen, split.total, init, s_max, ds, opt);
  return out;
}

double stable_growth_probe(const GeneratorMatrix& gen, const SpectralSplit& split, const std::vector<EnergyState>& ensemble,
                           double epsilon, double s_max, double ds, const EvolveOptions& opt) {
  double worst = 0;
  for (const auto& x : ensemble) {
    double e0 = energy_norm(x);
    if (e0 == 0) continue;
    Trajectory t = stable_evolution(gen, split.total, x, s_max, ds, opt);
    for (std::size_t i = 0; i < t.size(); ++i)
      worst = std::max(worst, std::exp(-epsilon * t.time(i)) * energy_norm(t.state(i)) / e0);
  }
  return worst;
}

}  // namespace hyperwave::evolution
