#include <cmath>

#include "hyperwave/core_types.hpp"

namespace hyperwave {

double OddField::parity_defect(const CVector& v) {
  const int n = static_cast<int>(v.size());
  double scale = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  double defect = 0;
  for (int j = 0; j < n / 2; ++j) defect = std::max(defect, std::abs(v[j] + v[n - 1 - j]));
  return scale > 0 ? defect / scale : 0.0;
}

OddField::OddField(GridPtr grid, CVector values) : grid_(std::move(grid)), v_(std::move(values)) {
  require(grid_ != nullptr, ErrorKind::invalid_argument, "odd field without grid");
  require(v_.size() == grid_->size(), ErrorKind::invalid_argument, "odd field size does not match grid");
  require(v_.allFinite(), ErrorKind::invalid_data, "odd field has non-finite values");
  double d = parity_defect(v_);
  require(d <= kParityTol, ErrorKind::parity, "parity defect " + std::to_string(d) + " exceeds tolerance");
  const int n = grid_->size();
  for (int j = 0; j < n / 2; ++j) {
    Complex m = 0.5 * (v_[n - 1 - j] - v_[j]);
    v_[n - 1 - j] = m;
    v_[j] = -m;
  }
}

OddField OddField::zero(GridPtr grid) {
  const int n = grid->size();
  return OddField(std::move(grid), CVector::Zero(n));
}

OddField OddField::sample(GridPtr grid, const std::function<Complex(double)>& f) {
  const int n = grid->size();
  CVector v(n);
  for (int j = 0; j < n; ++j) v[j] = f(grid->node(j));
  return OddField(std::move(grid), std::move(v));
}

OddField OddField::from_half(GridPtr grid, const CVector& half_values) {
  const int n = grid->size(), h = n / 2;
  require(half_values.size() == h, ErrorKind::invalid_argument, "half values size mismatch");
  CVector v(n);
  for (int i = 0; i < h; ++i) {
    v[h + i] = half_values[i];
    v[h - 1 - i] = -half_values[i];
  }
  return OddField(std::move(grid), std::move(v));
}

CVector OddField::half_values() const { return v_.tail(v_.size() / 2); }

OddField& OddField::operator+=(const OddField& o) {
  require(grid_ == o.grid_ || grid_->size() == o.grid_->size(), ErrorKind::invalid_argument, "grid mismatch");
  v_ += o.v_;
  return *this;
}
OddField& OddField::operator-=(const OddField& o) {
  require(grid_ == o.grid_ || grid_->size() == o.grid_->size(), ErrorKind::invalid_argument, "grid mismatch");
  v_ -= o.v_;
  return *this;
}
OddField& OddField::operator*=(Complex c) {
  v_ *= c;
  return *this;
}

EnergyState::EnergyState(OddField u_, OddField v_) : u(std::move(u_)), v(std::move(v_)) {
  require(u.grid() && v.grid() && u.size() == v.size(), ErrorKind::invalid_argument, "energy state components on different grids");
}

CVector EnergyState::stacked() const {
  const int n = u.size();
  CVector x(2 * n);
  x.head(n) = u.values();
  x.tail(n) = v.values();
  return x;
}

EnergyState EnergyState::from_stacked(const GridPtr& grid, const CVector& x) {
  const int n = grid->size();
  require(x.size() == 2 * n, ErrorKind::invalid_argument, "stacked state size mismatch");
  return EnergyState(OddField(grid, x.head(n)), OddField(grid, x.tail(n)));
}

CVector EnergyState::compact() const {
  const int h = u.size() / 2;
  CVector x(2 * h);
  x.head(h) = u.values().tail(h);
  x.tail(h) = v.values().tail(h);
  return x;
}

EnergyState EnergyState::from_compact(const GridPtr& grid, const CVector& x) {
  const int h = grid->half();
  require(x.size() == 2 * h, ErrorKind::invalid_argument, "compact state size mismatch");
  return EnergyState(OddField::from_half(grid, x.head(h)), OddField::from_half(grid, x.tail(h)));
}

EnergyState& EnergyState::operator+=(const EnergyState& o) {
  u += o.u;
  v += o.v;
  return *this;
}
EnergyState& EnergyState::operator-=(const EnergyState& o) {
  u -= o.u;
  v -= o.v;
  return *this;
}

void Trajectory::push_back(double s, EnergyState state) {
  if (!grid_) grid_ = state.grid();
  require(state.grid() && state.u.size() == grid_->size(), ErrorKind::invalid_argument, "trajectory slice on a different grid");
  require(times_.empty() || s > times_.back(), ErrorKind::invalid_argument, "trajectory times must increase");
  times_.push_back(s);
  states_.push_back(std::move(state));
}

double Trajectory::step() const {
  if (times_.size() < 2) return 0;
  double h = times_[1] - times_[0];
  for (std::size_t i = 2; i < times_.size(); ++i)
    if (std::abs((times_[i] - times_[i - 1]) - h) > 1e-9 * std::max(1.0, h)) return 0;
  return h;
}

}  // namespace hyperwave
