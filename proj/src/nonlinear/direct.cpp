#include <cmath>

#include "hyperwave/nonlinear.hpp"

namespace hyperwave::nonlinear {

Trajectory nonlinear_evolve_direct(const GridPtr& grid, const EnergyState& data, double s_max, double ds, int sample_every,
                                   double cfl) {
  require(s_max >= 0 && sample_every >= 1, ErrorKind::invalid_argument, "invalid direct-solver parameters");
  evolution::GeneratorMatrix gen(grid, Potential::constant(-1.0));
  evolution::check_step(gen, ds, cfl);
  const CMatrix& A = gen.odd_block();
  const Eigen::Index h = A.rows() / 2;
  auto F = [&](const CVector& x) {
    CVector r = A * x;
    r.tail(h) -= x.head(h).array().cube().matrix();
    return r;
  };
  const double bound = 10 * std::max(lq_norm(data.u, 6), energy_norm(data));
  const long steps = std::lround(s_max / ds);
  Trajectory traj(grid);
  traj.push_back(0.0, data);
  CVector x = data.compact();
  for (long i = 1; i <= steps; ++i) {
    CVector k1 = F(x);
    CVector k2 = F(x + 0.5 * ds * k1);
    CVector k3 = F(x + 0.5 * ds * k2);
    CVector k4 = F(x + ds * k3);
    x += (ds / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (i % sample_every == 0 || i == steps) {
      EnergyState st = EnergyState::from_compact(grid, x);
      double l6 = lq_norm(st.u, 6);
      require(std::isfinite(l6) && l6 <= bound, ErrorKind::blowup_detected,
              "L^6 norm " + std::to_string(l6) + " exceeds the blow-up threshold at s = " + std::to_string(i * ds));
      traj.push_back(i * ds, std::move(st));
    }
  }
  return traj;
}

}  // namespace hyperwave::nonlinear
