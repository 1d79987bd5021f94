#include <cmath>

#include "doctest.h"
#include "hyperwave/evolution.hpp"
#include "hyperwave/spectral.hpp"

using namespace hyperwave;
using namespace hyperwave::spectral;

TEST_SUITE("spectral") {
  TEST_CASE("free branch is (1 + y)^{-lambda}") {
    Potential V = Potential::constant(0);
    for (Complex lam : {Complex(0.5, 0), Complex(0.1, 3), Complex(-0.2, 7)}) {
      auto sol = build_u1(V, lam, std::vector<double>{0.0, 0.4, 0.9});
      for (std::size_t i = 0; i < sol.ys.size(); ++i) {
        Complex ref = std::pow(1.0 + sol.ys[i], -lam);
        CHECK(std::abs(sol.u[i] - ref) < 1e-11 * std::abs(ref));
      }
    }
  }

  TEST_CASE("constructed eigenvalue annihilates u1(0)") {
    CHECK(std::abs(u1_at_zero(Potential::constant(-6), 1.0)) < 1e-12);
    CHECK(std::abs(u1_at_zero(Potential::constant(-1), 1.0)) > 0.1);
  }

  TEST_CASE("resonant lambda is rejected") {
    CHECK_THROWS_AS(frobenius_coefficients(Potential::constant(-1), Complex(-2, 0), 8), Error);
    CHECK_NOTHROW(frobenius_coefficients(Potential::constant(-1), Complex(0, 0), 8));
  }

  TEST_CASE("Volterra and ODE branches agree") {
    for (double c : {-1.0, -6.0}) {
      Potential V = Potential::constant(c);
      for (Complex lam : {Complex(0.2, 1.5), Complex(0.05, 9)}) {
        auto ode = build_u1(V, lam, std::vector<double>{0.0, 0.3, 0.7});
        auto vol = build_v1_volterra(V, lam);
        for (std::size_t i = 0; i < ode.ys.size(); ++i)
          CHECK(std::abs(vol.u1(ode.ys[i]) - ode.u[i]) < 1e-9 * std::max(1.0, std::abs(ode.u[i])));
      }
    }
  }

  TEST_CASE("Wronskian equals 2 lambda") {
    Potential V = Potential::polynomial({-1, 0, 2});
    for (Complex lam : {Complex(0.2, 1.0), Complex(-0.1, 5), Complex(0, 12)}) {
      Complex W = wronskian_pair(V, lam);
      CHECK(std::abs(W - 2.0 * lam) < 1e-8 * std::abs(2.0 * lam));
    }
  }

  TEST_CASE("mode finder") {
    auto none = find_sigma_v(Potential::constant(-1), SearchWindow{-1e-3, 3, 20});
    CHECK(none.empty());
    auto roots = find_sigma_v(Potential::constant(-6), SearchWindow{-1e-3, 3, 10}, {}, make_grid(32));
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0].lambda - 1.0) < 1e-10);
    CHECK(roots[0].algebraic_multiplicity == 1);
    CHECK_FALSE(roots[0].on_imaginary_axis);
    CHECK(winding_number(Potential::constant(-6), 0.5, 1.5, -1, 1, 256) == 1);
    CHECK(winding_number(Potential::constant(-6), 1.5, 2.5, -1, 1, 256) == 0);
  }

  TEST_CASE("Green resolvent matches matrix resolvent") {
    auto g = make_grid(64);
    Potential V = Potential::constant(-1);
    Complex lam(0.05, 2);
    EnergyState f{OddField::sample(g, [](double y) { return Complex(y - y * y * y, 0); }),
                  OddField::sample(g, [](double y) { return Complex(std::sin(y), 0); })};
    EnergyState a = resolvent_apply(V, lam, f);
    evolution::GeneratorMatrix gen(g, V);
    EnergyState b = evolution::ResolventMatrix(gen, lam).apply(f);
    CHECK(energy_norm(a - b) < 1e-8 * energy_norm(b));
  }

  TEST_CASE("Green function guards") {
    auto g = make_grid(32);
    EnergyState f{OddField::sample(g, [](double y) { return Complex(y, 0); }), OddField::zero(g)};
    CHECK_THROWS_AS(resolvent_apply(Potential::constant(-1), Complex(1.0, 0), f), Error);
    CHECK_THROWS_AS(resolvent_apply(Potential::constant(-1), Complex(-0.1, 1), f), Error);
    try {
      resolvent_apply(Potential::constant(-6), Complex(1.0, 0), f, GreenOptions{{}, 2.0});
      FAIL("expected near_eigenvalue");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::near_eigenvalue);
    }
  }
}
