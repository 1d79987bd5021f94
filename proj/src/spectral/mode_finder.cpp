#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "hyperwave/spectral.hpp"

namespace hyperwave::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

struct ZeroOnContour {};

class CachedU1 {
 public:
  CachedU1(const Potential& V, const FrobeniusOptions& opt) : V_(V), opt_(opt) {}
  Complex operator()(Complex z) {
    auto key = std::make_pair(z.real(), z.imag());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Complex f = u1_at_zero(V_, z, opt_);
    cache_.emplace(key, f);
    return f;
  }
  Complex fresh(Complex z) { return u1_at_zero(V_, z, opt_); }

 private:
  const Potential& V_;
  FrobeniusOptions opt_;
  std::map<std::pair<double, double>, Complex> cache_;
};

struct Cell {
  double re0, re1, im0, im1;
  double width() const { return re1 - re0; }
  double height() const { return im1 - im0; }
  Complex corner(int k) const {
    switch (k) {
      case 0: return {re0, im0};
      case 1: return {re1, im0};
      case 2: return {re1, im1};
      default: return {re0, im1};
    }
  }
};

// Phase increment and first moment along [a, b], refined where the phase jumps.
void segment(CachedU1& f, Complex a, Complex fa, Complex b, Complex fb, int depth, double& dphase, Complex& moment) {
  Complex ratio = fb / fa;
  double d = std::arg(ratio);
  if (std::abs(d) > kPi / 3 && depth < 16) {
    Complex m = 0.5 * (a + b);
    Complex fm = f(m);
    if (std::abs(fm) < 1e-12) throw ZeroOnContour{};
    segment(f, a, fa, m, fm, depth + 1, dphase, moment);
    segment(f, m, fm, b, fb, depth + 1, dphase, moment);
    return;
  }
  require(std::abs(d) <= kPi / 2, ErrorKind::contour_accuracy, "argument principle: phase jump not resolved");
  Complex dlog(std::log(std::abs(ratio)), d);
  dphase += d;
  moment += 0.5 * (a + b) * dlog;
}

struct Contour {
  double winding;
  Complex moment;  // (1 / 2 pi i) sum lambda dlog f
};

Contour contour(CachedU1& f, const Cell& c, int per_edge) {
  double dphase = 0;
  Complex moment = 0;
  for (int e = 0; e < 4; ++e) {
    Complex a = c.corner(e), b = c.corner((e + 1) % 4);
    Complex prev = a, fprev = f(a);
    if (std::abs(fprev) < 1e-12) throw ZeroOnContour{};
    for (int k = 1; k <= per_edge; ++k) {
      double frac = static_cast<double>(k) / per_edge;
      Complex z = (k == per_edge) ? b : a + (b - a) * frac;
      Complex fz = f(z);
      if (std::abs(fz) < 1e-12) throw ZeroOnContour{};
      segment(f, prev, fprev, z, fz, 0, dphase, moment);
      prev = z;
      fprev = fz;
    }
  }
  Contour out;
  out.winding = dphase / (2 * kPi);
  out.moment = moment / Complex(0, 2 * kPi);
  return out;
}

int checked_winding(CachedU1& f, const Cell& c, int per_edge, Complex* moment = nullptr) {
  Contour a = contour(f, c, per_edge);
  Contour b = contour(f, c, 2 * per_edge);
  long na = std::lround(a.winding), nb = std::lround(b.winding);
  require(std::abs(a.winding - na) < 0.05 && na == nb, ErrorKind::contour_accuracy,
          "winding number unstable under quadrature refinement");
  if (moment) *moment = b.moment;
  return static_cast<int>(na);
}

struct Root {
  Complex lambda;
  int mult;
};

bool inside(const Cell& c, Complex z, double margin) {
  return z.real() >= c.re0 - margin && z.real() <= c.re1 + margin && z.imag() >= c.im0 - margin && z.imag() <= c.im1 + margin;
}

bool newton(CachedU1& f, Complex z0, const Cell& c, const ModeFinderOptions& opt, Complex& out) {
  Complex z = z0;
  for (int it = 0; it < 60; ++it) {
    double h = 1e-6 * (1 + std::abs(z));
    Complex fz = f.fresh(z);
    Complex df = (f.fresh(z + h) - f.fresh(z - h)) / (2 * h);
    if (df == Complex(0, 0)) return false;
    Complex step = fz / df;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (std::abs(step) <= opt.newton_tol * (1 + std::abs(z))) {
      out = z;
      return inside(c, z, 1e-6 * std::max(c.width(), c.height()));
    }
  }
  return false;
}

void search(CachedU1& f, const Cell& c, int wind, Complex moment, const ModeFinderOptions& opt, int depth, std::vector<Root>& roots) {
  if (wind <= 0) return;
  if (wind == 1) {
    Complex z;
    if (newton(f, moment, c, opt, z)) {
      roots.push_back({z, 1});
      return;
    }
  }
  if (depth >= opt.max_depth || std::max(c.width(), c.height()) < opt.min_cell) {
    roots.push_back({moment / static_cast<double>(wind), wind});
    return;
  }
  const double fracs[] = {0.5 + 0.0137, 0.5 - 0.0211, 0.5 + 0.0433};
  for (double frac : fracs) {
    Cell a = c, b = c;
    if (c.width() >= c.height()) {
      double m = c.re0 + frac * c.width();
      a.re1 = m;
      b.re0 = m;
    } else {
      double m = c.im0 + frac * c.height();
      a.im1 = m;
      b.im0 = m;
    }
    try {
      Complex ma, mb;
      int wa = checked_winding(f, a, opt.points_per_edge, &ma);
      int wb = checked_winding(f, b, opt.points_per_edge, &mb);
      require(wa >= 0 && wb >= 0 && wa + wb == wind, ErrorKind::contour_accuracy, "winding numbers of subcells do not add up");
      std::vector<Root> sub;
      search(f, a, wa, ma, opt, depth + 1, sub);
      search(f, b, wb, mb, opt, depth + 1, sub);
      roots.insert(roots.end(), sub.begin(), sub.end());
      return;
    } catch (const ZeroOnContour&) {
      continue;
    }
  }
  fail(ErrorKind::contour_accuracy, "zero on contour persists after re-jitter");
}

}  // namespace

int winding_number(const Potential& V, double re0, double re1, double im0, double im1, int points_per_edge,
                   const FrobeniusOptions& opt) {
  CachedU1 f(V, opt);
  try {
    return checked_winding(f, Cell{re0, re1, im0, im1}, points_per_edge);
  } catch (const ZeroOnContour&) {
    fail(ErrorKind::contour_accuracy, "zero of u1(0, .) on the contour");
  }
}

std::vector<SpectralPoint> find_sigma_v(const Potential& V, const SearchWindow& window, const ModeFinderOptions& opt,
                                        const GridPtr& grid) {
  require(window.re_max > window.re_min && window.im_max > 0, ErrorKind::invalid_argument, "empty search window");
  require(window.re_min >= -0.25, ErrorKind::invalid_argument, "search window must stay in Re lambda >= -1/4");
  require(opt.points_per_edge >= 8, ErrorKind::invalid_argument, "need at least 8 contour points per edge");
  CachedU1 f(V, opt.frobenius);
  std::vector<Root> roots;
  bool done = false;
  for (int jitter = 0; jitter < 6 && !done; ++jitter) {
    double s = 1e-4 * jitter;
    Cell c{window.re_min - s, window.re_max + s, -window.im_max - 1.3 * s, window.im_max + 1.7 * s};
    try {
      Complex m;
      int w = checked_winding(f, c, opt.points_per_edge, &m);
      roots.clear();
      search(f, c, w, m, opt, 0, roots);
      done = true;
    } catch (const ZeroOnContour&) {
      continue;
    }
  }
  require(done, ErrorKind::contour_accuracy, "zero on the outer contour persists after re-jitter");

  std::vector<double> probe;
  for (int i = 0; i < 64; ++i) probe.push_back(i / 64.0);
  std::vector<SpectralPoint> out;
  for (const auto& r : roots) {
    if (r.lambda.real() < -opt.axis_tol) continue;
    SpectralPoint p;
    p.lambda = r.lambda;
    p.algebraic_multiplicity = r.mult;
    p.on_imaginary_axis = std::abs(r.lambda.real()) <= opt.axis_tol;
    auto sol = build_u1(V, r.lambda, probe, opt.frobenius);
    double sup = 0;
    for (auto u : sol.u) sup = std::max(sup, std::abs(u));
    p.residual = sup > 0 ? std::abs(sol.u_at_zero) / sup : 0;
    if (grid) {
      auto g = build_u1(V, r.lambda, *grid, opt.frobenius);
      CVector half = Eigen::Map<CVector>(g.u.data(), static_cast<Eigen::Index>(g.u.size()));
      Eigen::Index imax = 0;
      half.cwiseAbs().maxCoeff(&imax);
      Complex norm = half[imax];
      if (std::abs(norm) > 0) half /= norm;
      p.eigenfunction = OddField::from_half(grid, half);
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
    return a.lambda.real() < b.lambda.real();
  });
  return out;
}

}  // namespace hyperwave::spectral
