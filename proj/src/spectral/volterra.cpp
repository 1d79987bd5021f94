#include <cmath>

#include "hyperwave/spectral.hpp"

namespace hyperwave::spectral {

namespace {

std::vector<double> bary_weights(const std::vector<double>& t) {
  std::vector<double> b(t.size(), 1.0);
  for (std::size_t j = 0; j < t.size(); ++j)
    for (std::size_t k = 0; k < t.size(); ++k)
      if (k != j) b[j] /= (t[j] - t[k]);
  return b;
}

// Lagrange basis values at x through nodes t.
void lagrange_row(const std::vector<double>& t, const std::vector<double>& b, double x, std::vector<double>& out) {
  out.assign(t.size(), 0.0);
  double den = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (x == t[j]) {
      out.assign(t.size(), 0.0);
      out[j] = 1.0;
      return;
    }
    out[j] = b[j] / (x - t[j]);
    den += out[j];
  }
  for (auto& v : out) v /= den;
}

}  // namespace

VolterraSolution::VolterraSolution(const Potential& V, Complex lambda, const VolterraOptions& opt) : lambda_(lambda) {
  require(std::abs(lambda) >= 1e-3, ErrorKind::invalid_argument, "Volterra construction excludes |lambda| < 1e-3");
  require(lambda.real() >= -0.25 - 1e-14, ErrorKind::invalid_argument, "Volterra construction needs Re lambda >= -1/4");
  require(opt.xi_max > 0 && opt.panel_width > 0, ErrorKind::invalid_argument, "Volterra mesh parameters must be positive");
  p_ = opt.order;
  double H = std::min(opt.panel_width, 1.5 / std::abs(lambda));
  panels_ = static_cast<int>(std::ceil(opt.xi_max / H));
  H_ = opt.xi_max / panels_;

  std::vector<double> gx, gw, sx, sw;
  gauss_legendre(p_, gx, gw);
  gauss_legendre(20, sx, sw);
  t_.resize(p_);
  w_.resize(p_);
  for (int j = 0; j < p_; ++j) {
    t_[j] = 0.5 * H_ * (gx[j] + 1);
    w_[j] = 0.5 * H_ * gw[j];
  }
  bary_ = bary_weights(t_);

  // Partial-panel operators: N integrates G over [t_i, H]; M adds the factor e^{-lambda (t - t_i)}.
  CMatrix M(p_, p_);
  RMatrix N(p_, p_);
  M.setZero();
  N.setZero();
  std::vector<double> row;
  for (int i = 0; i < p_; ++i) {
    double len = H_ - t_[i];
    for (std::size_t k = 0; k < sx.size(); ++k) {
      double tk = t_[i] + 0.5 * len * (sx[k] + 1);
      double wk = 0.5 * len * sw[k];
      Complex e = std::exp(-lambda * (tk - t_[i]));
      lagrange_row(t_, bary_, tk, row);
      for (int j = 0; j < p_; ++j) {
        N(i, j) += wk * row[j];
        M(i, j) += wk * e * row[j];
      }
    }
  }
  CVector cfull(p_);
  for (int j = 0; j < p_; ++j) cfull[j] = w_[j] * std::exp(-lambda * t_[j]);
  const Complex eH = std::exp(-lambda * H_);

  const int total = panels_ * p_;
  std::vector<Complex> vrho(total);
  for (int P = 0; P < panels_; ++P)
    for (int j = 0; j < p_; ++j) {
      double xi = P * H_ + t_[j];
      double x = std::tanh(0.5 * xi);
      double rho = 0.5 / std::pow(std::cosh(0.5 * xi), 2);
      vrho[P * p_ + j] = V(x) * rho;
    }

  std::vector<Complex> h(total, Complex(1, 0)), hn(total);
  G_.assign(total, 0);
  tailA_.assign(panels_, 0);
  tailC_.assign(panels_, 0);
  auto refresh = [&] {
    for (int i = 0; i < total; ++i) G_[i] = vrho[i] * h[i];
    tailA_[panels_ - 1] = 0;
    tailC_[panels_ - 1] = 0;
    for (int P = panels_ - 2; P >= 0; --P) {
      Complex a = 0, c = 0;
      for (int j = 0; j < p_; ++j) {
        a += w_[j] * G_[(P + 1) * p_ + j];
        c += cfull[j] * G_[(P + 1) * p_ + j];
      }
      tailA_[P] = a + tailA_[P + 1];
      tailC_[P] = c + eH * tailC_[P + 1];
    }
  };

  const Complex inv2l = 1.0 / (2.0 * lambda);
  bool converged = false;
  for (int it = 0; it < opt.max_iter; ++it) {
    refresh();
    double diff = 0, hmax = 0;
    for (int P = 0; P < panels_; ++P) {
      const Complex* g = &G_[P * p_];
      for (int i = 0; i < p_; ++i) {
        Complex A = tailA_[P], C = std::exp(-lambda * (H_ - t_[i])) * tailC_[P];
        for (int j = 0; j < p_; ++j) {
          A += N(i, j) * g[j];
          C += M(i, j) * g[j];
        }
        Complex v = 1.0 + inv2l * (A - C);
        int idx = P * p_ + i;
        diff = std::max(diff, std::abs(v - h[idx]));
        hmax = std::max(hmax, std::abs(v));
        hn[idx] = v;
      }
    }
    h.swap(hn);
    iterations_ = it + 1;
    require(std::isfinite(diff), ErrorKind::volterra_divergence, "Volterra iteration produced non-finite values");
    if (diff <= opt.tol * std::max(1.0, hmax)) {
      converged = true;
      break;
    }
  }
  require(converged, ErrorKind::volterra_divergence, "Volterra iteration did not converge");
  refresh();
}

Complex VolterraSolution::at_xi(double xi) const {
  if (xi >= panels_ * H_) return 1.0;
  int P = std::min(static_cast<int>(xi / H_), panels_ - 1);
  double t = xi - P * H_;
  std::vector<double> sx, sw, row;
  gauss_legendre(20, sx, sw);
  const Complex* g = &G_[P * p_];
  Complex A = tailA_[P], C = std::exp(-lambda_ * (H_ - t)) * tailC_[P];
  double len = H_ - t;
  for (std::size_t k = 0; k < sx.size(); ++k) {
    double tk = t + 0.5 * len * (sx[k] + 1);
    double wk = 0.5 * len * sw[k];
    lagrange_row(t_, bary_, tk, row);
    Complex gk = 0;
    for (int j = 0; j < p_; ++j) gk += row[j] * g[j];
    A += wk * gk;
    C += wk * std::exp(-lambda_ * (tk - t)) * gk;
  }
  return 1.0 + (A - C) / (2.0 * lambda_);
}

Complex VolterraSolution::h(double y) const {
  require(y >= 0 && y < 1, ErrorKind::invalid_argument, "Volterra solution is defined on [0, 1)");
  return at_xi(2 * std::atanh(y));
}

Complex VolterraSolution::u1(double y) const { return std::exp(-lambda_ * std::log1p(y)) * h(y); }

VolterraSolution build_v1_volterra(const Potential& V, Complex lambda, const VolterraOptions& opt) {
  return VolterraSolution(V, lambda, opt);
}

}  // namespace hyperwave::spectral
