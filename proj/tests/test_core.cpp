#include <cmath>

#include "doctest.h"
#include "hyperwave/core_types.hpp"

using namespace hyperwave;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("grid nodes are symmetric and interior") {
    auto g = make_grid(16);
    for (int j = 0; j < 16; ++j) {
      CHECK(g->node(j) == -g->node(15 - j));
      CHECK(std::abs(g->node(j)) < 1.0);
    }
    CHECK(kind_of([] { make_grid(6); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { make_grid(17); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("differentiation and quadrature are exact on polynomials") {
    auto g = make_grid(24);
    CVector p(24), dp(24);
    for (int j = 0; j < 24; ++j) {
      double y = g->node(j);
      p[j] = std::pow(y, 7) - 2 * y * y;
      dp[j] = 7 * std::pow(y, 6) - 4 * y;
    }
    CHECK((g->differentiate(p) - dp).cwiseAbs().maxCoeff() < 1e-11);
    // int_{-1}^1 y^6 dy = 2/7
    RVector y6 = g->nodes().array().pow(6);
    CHECK(g->integrate(y6) == doctest::Approx(2.0 / 7).epsilon(1e-14));
    CHECK(std::abs(g->interpolate(p, 0.3) - (std::pow(0.3, 7) - 0.18)) < 1e-13);
    CHECK(kind_of([&] { g->interpolation_row(1.5); }) == ErrorKind::interpolation_domain);
  }

  TEST_CASE("boundary traces") {
    auto g = make_grid(32);
    OddField f = OddField::sample(g, [](double y) { return Complex(y * y * y, 0); });
    CHECK(std::abs(g->boundary_value(f.values(), Side::right) - 1.0) < 1e-12);
    CHECK(std::abs(g->boundary_value(f.values(), Side::left) + 1.0) < 1e-12);
    CHECK(std::abs(g->boundary_value(f.values(), Side::right, 4) - 1.0) < 1e-2);
  }

  TEST_CASE("odd fields reject even data") {
    auto g = make_grid(16);
    CHECK(kind_of([&] { OddField::sample(g, [](double) { return Complex(1, 0); }); }) == ErrorKind::parity);
    CHECK(kind_of([&] { OddField::sample(g, [](double) { return Complex(NAN, 0); }); }) == ErrorKind::invalid_data);
    OddField y = OddField::sample(g, [](double y) { return Complex(y, 0); });
    CHECK(OddField::parity_defect(y.values()) == 0.0);
    OddField h = OddField::from_half(g, y.half_values());
    CHECK((h.values() - y.values()).norm() == 0.0);
  }

  TEST_CASE("energy state coordinates round-trip") {
    auto g = make_grid(16);
    EnergyState x{OddField::sample(g, [](double y) { return Complex(y, 0); }),
                  OddField::sample(g, [](double y) { return Complex(y * y * y, y); })};
    CHECK((EnergyState::from_stacked(g, x.stacked()).stacked() - x.stacked()).norm() == 0.0);
    CHECK((EnergyState::from_compact(g, x.compact()).stacked() - x.stacked()).norm() == 0.0);
  }

  TEST_CASE("norms") {
    auto g = make_grid(32);
    OddField y = OddField::sample(g, [](double y) { return Complex(y, 0); });
    EnergyState x{y, OddField::zero(g)};
    // int (1 - y^2) dy = 4/3
    CHECK(energy_norm(x) == doctest::Approx(std::sqrt(4.0 / 3)).epsilon(1e-13));
    CHECK(std::abs(energy_inner(x, x) - Complex(4.0 / 3, 0)) < 1e-13);
    CHECK(lq_norm(y, 2) == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-13));
    CHECK(lq_norm(y, 6) == doctest::Approx(std::pow(2.0 / 7, 1.0 / 6)).epsilon(1e-13));
    CHECK(lq_norm_half(*g, y.half_values(), 6) == doctest::Approx(lq_norm(y, 6)).epsilon(1e-14));
    CHECK(kind_of([] { mixed_norm_series({}, {}, 2); }) == ErrorKind::invalid_data);
    CHECK(mixed_norm_series({0, 1, 2}, {1, 1, 1}, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(mixed_norm_series({0, 1, 2}, {1, 3, 2}, kInf) == 3.0);
    CHECK(kind_of([&] { sobolev_embedding_ratio(OddField::zero(g), 6); }) == ErrorKind::undefined_ratio);
    Trajectory t(g);
    CHECK(kind_of([&] { mixed_norm(t, 3, 6); }) == ErrorKind::invalid_data);
  }

  TEST_CASE("potentials") {
    CHECK(kind_of([] { Potential::polynomial({0, 1}); }) == ErrorKind::invalid_argument);
    Potential p = Potential::polynomial({1, 0, 2});
    CHECK(std::abs(p(0.5) - 1.5) < 1e-15);
    auto c = p.taylor_at_one(3);  // 1 + 2 (1 - z)^2 = 3 - 4 z + 2 z^2
    CHECK(std::abs(c[0] - 3.0) < 1e-14);
    CHECK(std::abs(c[1] + 4.0) < 1e-14);
    CHECK(std::abs(c[2] - 2.0) < 1e-14);
    CHECK(std::abs(c[3]) < 1e-14);
    Potential a = Potential::analytic("cosh", [](Complex y) { return std::cosh(y); }, 1.0);
    auto ca = a.taylor_at_one(4);
    // cosh(1 - z) = cosh 1 - sinh 1 z + cosh 1 z^2 / 2 - ...
    CHECK(std::abs(ca[0] - std::cosh(1.0)) < 1e-12);
    CHECK(std::abs(ca[1] + std::sinh(1.0)) < 1e-12);
    CHECK(std::abs(ca[2] - std::cosh(1.0) / 2) < 1e-12);
    CHECK(Potential::constant(-1).sup_norm() == 1.0);
    CHECK(Potential::constant(0).is_zero());
  }

  TEST_CASE("chebyshev series") {
    ChebSeries s({0, 1, 0, 2});  // T1 + 2 T3 = 8 y^3 - 5 y
    CHECK(s(0.5) == doctest::Approx(8 * 0.125 - 2.5));
    CHECK(s.derivative()(0.5) == doctest::Approx(24 * 0.25 - 5));
    CHECK(s.primitive()(0.5) == doctest::Approx(2 * 0.0625 - 2.5 * 0.25));
    CHECK(s.primitive()(0.0) == doctest::Approx(0.0));
    CHECK(s.is_odd());
  }

  TEST_CASE("trajectory ordering") {
    auto g = make_grid(16);
    Trajectory t(g);
    EnergyState z{OddField::zero(g), OddField::zero(g)};
    t.push_back(0, z);
    t.push_back(0.5, z);
    CHECK(kind_of([&] { t.push_back(0.5, z); }) == ErrorKind::invalid_argument);
    CHECK(t.step() == doctest::Approx(0.5));
  }
}
