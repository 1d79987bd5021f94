#include <array>
#include <cmath>
#include <map>

#include <boost/numeric/odeint.hpp>

#include "hyperwave/spectral.hpp"

namespace hyperwave::spectral {

namespace odeint = boost::numeric::odeint;

std::vector<Complex> frobenius_coefficients(const Potential& V, Complex lambda, int m) {
  require(m >= 1, ErrorKind::invalid_argument, "Frobenius order must be >= 1");
  for (int k = 1; k <= m; ++k)
    require(std::abs(static_cast<double>(k) + lambda) >= 1e-12, ErrorKind::resonance,
            "indicial resonance: -lambda is the integer " + std::to_string(k));
  require(lambda.real() >= -0.25 - 1e-14, ErrorKind::invalid_argument, "Frobenius branch needs Re lambda >= -1/4");
  auto b = V.taylor_at_one(m + 1);
  std::vector<Complex> c(m + 1);
  c[0] = std::exp(-lambda * std::log(2.0));
  for (int k = 1; k <= m; ++k) {
    Complex acc = (static_cast<double>(k - 1) + lambda) * (static_cast<double>(k) + lambda) * c[k - 1];
    for (int j = 0; j <= k - 1; ++j) acc += b[j] * c[k - 1 - j];
    c[k] = acc / (2.0 * k * (static_cast<double>(k) + lambda));
  }
  return c;
}

namespace {

using State = std::array<double, 4>;

struct Series {
  const std::vector<Complex>& c;
  void eval(double z, Complex& u, Complex& uz) const {
    u = 0;
    uz = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      u = u * z + c[k];
      if (k > 0) uz = uz * z + static_cast<double>(k) * c[k];
    }
  }
};

}  // namespace

FrobeniusSolution build_u1(const Potential& V, Complex lambda, const std::vector<double>& ys, const FrobeniusOptions& opt) {
  require(opt.delta > 0 && opt.delta < 0.5, ErrorKind::invalid_argument, "Frobenius seed offset must lie in (0, 0.5)");
  FrobeniusSolution sol;
  sol.lambda = lambda;
  sol.taylor = frobenius_coefficients(V, lambda, opt.order);
  sol.ys = ys;
  sol.u.assign(ys.size(), 0);
  sol.du.assign(ys.size(), 0);
  Series series{sol.taylor};

  // x = log(1 - y) -> indices; 0 is y = 0.
  std::map<double, std::vector<int>> targets;
  targets[0.0];
  for (std::size_t i = 0; i < ys.size(); ++i) {
    double y = ys[i];
    require(y >= 0 && y < 1, ErrorKind::invalid_argument, "u1 samples must lie in [0, 1)");
    double z = 1 - y;
    if (z <= opt.delta) {
      Complex u, uz;
      series.eval(z, u, uz);
      sol.u[i] = u;
      sol.du[i] = -uz;
    } else {
      targets[std::log(z)].push_back(static_cast<int>(i));
    }
  }

  const double x0 = std::log(opt.delta);
  std::vector<double> times{x0};
  for (const auto& kv : targets)
    if (kv.first > x0) times.push_back(kv.first);

  Complex u0, uz0;
  series.eval(opt.delta, u0, uz0);
  Complex ux0 = opt.delta * uz0;
  double scale = std::max(std::abs(u0), 1e-300);
  State st{u0.real(), u0.imag(), ux0.real(), ux0.imag()};

  const Complex lam1 = lambda * (lambda + 1.0);
  auto rhs = [&](const State& s, State& ds, double x) {
    double z = std::exp(x);
    Complex u(s[0], s[1]), ux(s[2], s[3]);
    Complex v = V(1 - z);
    Complex uxx = ux - (2.0 * (lambda + 1.0) * (1 - z) * ux - (lam1 + v) * z * u) / (2 - z);
    ds[0] = ux.real();
    ds[1] = ux.imag();
    ds[2] = uxx.real();
    ds[3] = uxx.imag();
  };

  std::map<double, State> hits;
  auto observer = [&](const State& s, double x) { hits[x] = s; };
  try {
    auto stepper = odeint::make_controlled(1e-3 * opt.rel_tol * scale, opt.rel_tol, odeint::runge_kutta_fehlberg78<State>());
    odeint::integrate_times(stepper, rhs, st, times.begin(), times.end(), 1e-3, observer, odeint::max_step_checker(2000000));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::stiff_failure, std::string("u1 integration failed: ") + e.what());
  }

  auto take = [&](double x, Complex& u, Complex& du) {
    auto it = hits.find(x);
    require(it != hits.end(), ErrorKind::stiff_failure, "u1 integration did not reach a sample point");
    const State& s = it->second;
    for (double c : s) require(std::isfinite(c), ErrorKind::stiff_failure, "u1 integration produced non-finite values");
    double z = std::exp(x);
    u = Complex(s[0], s[1]);
    du = -Complex(s[2], s[3]) / z;
  };
  for (const auto& kv : targets) {
    if (kv.second.empty()) continue;
    Complex u, du;
    take(kv.first, u, du);
    for (int i : kv.second) {
      sol.u[i] = u;
      sol.du[i] = du;
    }
  }
  take(0.0, sol.u_at_zero, sol.du_at_zero);
  return sol;
}

FrobeniusSolution build_u1(const Potential& V, Complex lambda, const Grid& grid, const FrobeniusOptions& opt) {
  std::vector<double> ys(grid.nodes().data() + grid.half(), grid.nodes().data() + grid.size());
  return build_u1(V, lambda, ys, opt);
}

Complex u1_at_zero(const Potential& V, Complex lambda, const FrobeniusOptions& opt) {
  return build_u1(V, lambda, std::vector<double>{}, opt).u_at_zero;
}

Complex wronskian_pair(const Potential& V, Complex lambda, const FrobeniusOptions& opt) {
  require(std::abs(lambda.real()) <= 0.25 + 1e-14 && std::abs(lambda) > 0, ErrorKind::invalid_argument,
          "Wronskian pair needs |Re lambda| <= 1/4 and lambda != 0");
  const std::vector<double> ys{0.1, 0.3, 0.5, 0.7, 0.9};
  auto a = build_u1(V, lambda, ys, opt);
  auto b = build_u1(V, -lambda, ys, opt);
  std::vector<Complex> w(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    double y = ys[i];
    // v1 = (1 - y^2)^{(1 + lambda)/2} u1; the weights combine to (1 - y^2).
    w[i] = (1 - y * y) * (a.u[i] * b.du[i] - a.du[i] * b.u[i]) + 2.0 * lambda * y * a.u[i] * b.u[i];
  }
  Complex mean = 0;
  for (auto x : w) mean += x;
  mean /= static_cast<double>(w.size());
  for (auto x : w)
    require(std::abs(x - mean) <= 1e-6 * std::abs(mean), ErrorKind::inconsistency, "Wronskian varies along the interval");
  return mean;
}

}  // namespace hyperwave::spectral
