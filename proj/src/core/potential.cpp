#include <cmath>
#include <numbers>

#include "hyperwave/core_types.hpp"

namespace hyperwave {

Potential Potential::constant(Complex c) {
  Potential p;
  p.kind_ = Kind::constant;
  p.c_ = c;
  char buf[96];
  std::snprintf(buf, sizeof buf, "constant(%.17g%+.17gi)", c.real(), c.imag());
  p.id_ = buf;
  p.finish();
  return p;
}

Potential Potential::polynomial(std::vector<double> coeffs) {
  for (std::size_t k = 1; k < coeffs.size(); k += 2)
    require(coeffs[k] == 0.0, ErrorKind::invalid_argument, "polynomial potential must be even (odd coefficient nonzero)");
  Potential p;
  p.kind_ = Kind::polynomial;
  p.poly_ = std::move(coeffs);
  if (p.poly_.empty()) p.poly_.push_back(0.0);
  std::string id = "polynomial(";
  for (std::size_t k = 0; k < p.poly_.size(); ++k) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%.17g", k ? "," : "", p.poly_[k]);
    id += buf;
  }
  p.id_ = id + ")";
  p.finish();
  return p;
}

Potential Potential::analytic(std::string id, std::function<Complex(Complex)> fn, double radius) {
  require(static_cast<bool>(fn), ErrorKind::invalid_argument, "analytic potential without function");
  require(radius > 0 && radius <= 1, ErrorKind::invalid_argument, "analytic potential: radius must lie in (0, 1]");
  Potential p;
  p.kind_ = Kind::analytic;
  p.id_ = std::move(id);
  p.fn_ = std::move(fn);
  p.radius_ = radius;
  p.finish();
  return p;
}

void Potential::finish() {
  sup_ = 0;
  real_ = true;
  for (int i = 0; i <= 2000; ++i) {
    double y = -1.0 + i / 1000.0;
    Complex v = eval(Complex(y, 0));
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorKind::invalid_data, "potential is not finite on [-1, 1]");
    sup_ = std::max(sup_, std::abs(v));
    if (std::abs(v.imag()) > 1e-14 * std::max(1.0, std::abs(v))) real_ = false;
  }
}

Complex Potential::eval(Complex y) const {
  switch (kind_) {
    case Kind::constant: return c_;
    case Kind::polynomial: {
      Complex acc = 0;
      for (std::size_t k = poly_.size(); k-- > 0;) acc = acc * y + poly_[k];
      return acc;
    }
    case Kind::analytic: return fn_(y);
  }
  return 0;
}

std::optional<Complex> Potential::constant_value() const {
  if (kind_ == Kind::constant) return c_;
  return std::nullopt;
}

std::vector<Complex> Potential::taylor_at_one(int m) const {
  std::vector<Complex> b(m, Complex(0, 0));
  if (m <= 0) return b;
  switch (kind_) {
    case Kind::constant: b[0] = c_; break;
    case Kind::polynomial: {
      // V(1 - z) = sum_k a_k (1 - z)^k expanded exactly.
      for (std::size_t k = 0; k < poly_.size(); ++k) {
        double binom = 1;
        for (int j = 0; j <= static_cast<int>(k) && j < m; ++j) {
          b[j] += poly_[k] * binom * ((j % 2) ? -1.0 : 1.0);
          binom = binom * (static_cast<double>(k) - j) / (j + 1);
        }
      }
      break;
    }
    case Kind::analytic: {
      // Cauchy coefficients on |z| = radius by the trapezoid rule.
      const int nq = 128;
      const double r = 0.9 * radius_;
      for (int q = 0; q < nq; ++q) {
        double th = 2 * std::numbers::pi * q / nq;
        Complex e = std::polar(1.0, th);
        Complex v = fn_(1.0 - r * e);
        Complex ep = 1.0;
        for (int j = 0; j < m; ++j) {
          b[j] += v * std::conj(ep) / static_cast<double>(nq);
          ep *= e;
        }
      }
      for (int j = 0; j < m; ++j) b[j] /= std::pow(r, j);
      break;
    }
  }
  return b;
}

void Potential::check_even(const Grid& grid) const {
  const int n = grid.size();
  for (int j = 0; j < n / 2; ++j) {
    Complex a = (*this)(grid.node(j)), c = (*this)(grid.node(n - 1 - j));
    require(std::abs(a - c) <= 1e-12 * std::max(1.0, std::abs(a)), ErrorKind::invalid_data,
            "potential " + id_ + " is not even on the grid");
  }
}

}  // namespace hyperwave
