#include <cmath>

#include "hyperwave/core_types.hpp"

namespace hyperwave {

double ChebSeries::operator()(double x) const {
  double b1 = 0, b2 = 0;
  for (std::size_t k = c_.size(); k-- > 1;) {
    double b0 = 2 * x * b1 - b2 + c_[k];
    b2 = b1;
    b1 = b0;
  }
  return (c_.empty() ? 0.0 : c_[0]) + x * b1 - b2;
}

ChebSeries ChebSeries::derivative() const {
  const int n = static_cast<int>(c_.size());
  if (n <= 1) return ChebSeries({0.0});
  std::vector<double> d(n + 1, 0.0);
  for (int k = n - 1; k >= 1; --k) d[k - 1] = d[k + 1] + 2.0 * k * c_[k];
  d[0] *= 0.5;
  d.resize(n - 1);
  return ChebSeries(std::move(d));
}

ChebSeries ChebSeries::primitive() const {
  const int n = static_cast<int>(c_.size());
  std::vector<double> p(n + 1, 0.0);
  if (n == 0) return ChebSeries({0.0});
  p[1] += c_[0];
  for (int k = 1; k < n; ++k) {
    p[k + 1] += c_[k] / (2.0 * (k + 1));
    if (k >= 2) p[k - 1] -= c_[k] / (2.0 * (k - 1));
  }
  ChebSeries s(p);
  p[0] -= s(0.0);
  return ChebSeries(std::move(p));
}

bool ChebSeries::is_odd(double tol) const {
  for (std::size_t k = 0; k < c_.size(); k += 2)
    if (std::abs(c_[k]) > tol) return false;
  return true;
}

Profile Profile::zero() {
  Profile p;
  p.value = [](double) { return 0.0; };
  p.derivative = [](double) { return 0.0; };
  p.primitive = [](double) { return 0.0; };
  return p;
}

Profile Profile::from_series(const ChebSeries& s) {
  Profile p;
  auto d = s.derivative();
  auto P = s.primitive();
  p.value = [s](double x) { return s(x); };
  p.derivative = [d](double x) { return d(x); };
  p.primitive = [P](double x) { return P(x); };
  p.series = s;
  return p;
}

Profile Profile::linear(double a) {
  Profile p;
  p.value = [a](double x) { return a * x; };
  p.derivative = [a](double) { return a; };
  p.primitive = [a](double x) { return 0.5 * a * x * x; };
  p.series = ChebSeries({0.0, a});
  return p;
}

Profile Profile::constant(double a) {
  Profile p;
  p.value = [a](double) { return a; };
  p.derivative = [](double) { return 0.0; };
  p.primitive = [a](double x) { return a * x; };
  p.series = ChebSeries({a});
  return p;
}

bool Profile::is_odd(double tol) const {
  double scale = 0, defect = 0;
  for (int i = 0; i <= 16; ++i) {
    double x = std::sin(0.1 + 0.09 * i);
    double a = value(x), b = value(-x);
    scale = std::max(scale, std::abs(a));
    defect = std::max(defect, std::abs(a + b));
  }
  return defect <= tol * std::max(1.0, scale);
}

}  // namespace hyperwave
