#include <cmath>

#include "hyperwave/coords.hpp"
#include "hyperwave/nonlinear.hpp"

namespace hyperwave::nonlinear {

namespace {

/// u(s, y) from stored hyperboloidal slices: cubic Lagrange in s, barycentric in y.
class SliceLookup {
 public:
  SliceLookup(const Trajectory& traj, double s_first) : traj_(traj), s_first_(s_first) {
    require(traj.size() >= 4 && traj.step() > 0, ErrorKind::internal, "lookup needs uniformly spaced slices");
    ds_ = traj.step();
  }

  double operator()(double s, double y) const {
    const double t0 = traj_.time(0) + s_first_;
    double a = (s - t0) / ds_;
    require(a >= -1e-9 && a <= traj_.size() - 1 + 1e-9, ErrorKind::interpolation_domain,
            "hyperboloidal lookup outside the stored slices");
    int i = std::clamp(static_cast<int>(std::floor(a)) - 1, 0, static_cast<int>(traj_.size()) - 4);
    RVector row = traj_.grid()->interpolation_row(std::clamp(y, -1.0, 1.0));
    double acc = 0;
    for (int p = 0; p < 4; ++p) {
      double l = 1;
      for (int q = 0; q < 4; ++q)
        if (q != p) l *= (a - (i + q)) / static_cast<double>(p - q);
      acc += l * row.dot(traj_.state(i + p).u.values().real());
    }
    return acc;
  }

 private:
  const Trajectory& traj_;
  double s_first_;
  double ds_;
};

}  // namespace

CauchyResult cauchy_cross_check(const GridPtr& grid, const EnergyState& data, const CauchyOptions& opt) {
  require(std::abs(opt.y_max) <= 0.9 && opt.y_max > 0, ErrorKind::invalid_argument, "cross-check needs 0 < y_max <= 0.9");
  require(opt.s1 > opt.s0 && opt.s1 - opt.s0 <= 2, ErrorKind::invalid_argument, "cross-check needs 0 < s1 - s0 <= 2");
  require(opt.h > 0 && opt.band >= 2, ErrorKind::invalid_argument, "cross-check needs h > 0 and band >= 2");
  require(data.u.values().imag().cwiseAbs().maxCoeff() <= 1e-10 && data.v.values().imag().cwiseAbs().maxCoeff() <= 1e-10,
          ErrorKind::invalid_data, "cross-check needs real data");
  const double h = opt.h, k = 0.5 * h;
  const double band = opt.band * h;
  require(opt.s0 - band >= 0, ErrorKind::domain, "initial slice too close to s = 0 for the lookup band");

  const double r_reach = std::atanh(opt.y_max);
  const double t_end = opt.s1 + coords::log_cosh(r_reach) + 2 * k;
  require(opt.R >= r_reach + 4 * h && t_end + band <= opt.s0 + coords::log_cosh(opt.R), ErrorKind::domain,
          "(t, r) domain too small for the requested slice");

  // Hyperboloidal runs: 0 -> s0 (all slices kept), s0 -> s1.
  const double n = grid->size();
  const double ds_max = opt.cfl / (n * n);
  const long n0 = static_cast<long>(std::ceil(opt.s0 / ds_max));
  Trajectory first = nonlinear_evolve_direct(grid, data, opt.s0, opt.s0 / n0, 1, opt.cfl);
  const long n1 = static_cast<long>(std::ceil((opt.s1 - opt.s0) / ds_max));
  Trajectory second = nonlinear_evolve_direct(grid, first.back(), opt.s1 - opt.s0, (opt.s1 - opt.s0) / n1, n1, opt.cfl);
  const EnergyState& final_slice = second.back();
  SliceLookup lookup(first, 0.0);

  const int J = static_cast<int>(std::lround(2 * opt.R / h));
  const double t0 = opt.s0 - 2 * k;
  const int levels = static_cast<int>(std::ceil((t_end - t0) / k)) + 1;
  std::vector<double> r(J + 1), curve(J + 1), lc(J + 1), pot(J + 1);
  for (int j = 0; j <= J; ++j) {
    r[j] = -opt.R + j * h;
    lc[j] = coords::log_cosh(r[j]);
    curve[j] = opt.s0 + lc[j];
    pot[j] = 1.0 / std::pow(std::cosh(r[j]), 2);
  }
  RMatrix W = RMatrix::Constant(levels, J + 1, std::numeric_limits<double>::quiet_NaN());
  const double c2 = (k / h) * (k / h);
  for (int m = 0; m < levels; ++m) {
    double t = t0 + m * k;
    for (int j = 0; j <= J; ++j) {
      if (t <= curve[j]) {
        if (t >= curve[j] - band) W(m, j) = lookup(t - lc[j], std::tanh(r[j]));
        continue;
      }
      require(m >= 2 && j >= 1 && j < J, ErrorKind::domain, "leapfrog region reaches the lattice edge");
      double wm = W(m - 1, j), wl = W(m - 1, j - 1), wr = W(m - 1, j + 1), wp = W(m - 2, j);
      require(std::isfinite(wm) && std::isfinite(wl) && std::isfinite(wr) && std::isfinite(wp), ErrorKind::internal,
              "leapfrog stencil touches an uncomputed value; enlarge the band");
      W(m, j) = 2 * wm - wp + c2 * (wr - 2 * wm + wl) + k * k * wm * (1 - wm * wm) * pot[j];
    }
  }
  coords::LatticeTR lattice(t0, k, -opt.R, h, std::move(W));

  CauchyResult res;
  for (int i = 0; i < grid->size(); ++i) {
    double y = grid->node(i);
    if (std::abs(y) > opt.y_max) continue;
    auto c = coords::phi({opt.s1, y});
    double uc = lattice(c.t, c.x);
    double uh = final_slice.u[i].real();
    res.ys.push_back(y);
    res.u_hyperboloidal.push_back(uh);
    res.u_cauchy.push_back(uc);
    res.discrepancy = std::max(res.discrepancy, std::abs(uh - uc));
  }
  return res;
}

}  // namespace hyperwave::nonlinear
