#include <cmath>
#include <random>

#include "doctest.h"
#include "hyperwave/free_wave.hpp"

using namespace hyperwave;
using namespace hyperwave::free_wave;

TEST_SUITE("free_wave") {
  TEST_CASE("linear data closed form") {
    ClosedFormSolution sol(Profile::linear(), Profile::zero());
    for (double s : {0.0, 0.5, 2.0, 5.0})
      for (double y : {-0.8, 0.1, 0.6}) {
        double ref = y * std::exp(-s) * (2 - std::exp(-s));
        CHECK(std::abs(sol.evaluate(s, y) - ref) < 1e-13);
        CHECK(std::abs(sol.evaluate_exact(s, y) - ref) < 1e-14);
        CHECK(std::abs(sol.evaluate_general(s, y) - ref) < 1e-13);
        double dref = y * (-2 * std::exp(-s) + 2 * std::exp(-2 * s));
        CHECK(std::abs(sol.evaluate_ds(s, y) - dref) < 1e-12);
      }
  }

  TEST_CASE("velocity data") {
    // f = 0, g = y: u = (1/2)(G(x_+) - G(x_-)) with G = y^2 / 2 evaluated on the light cone
    ClosedFormSolution sol(Profile::zero(), Profile::linear());
    ClosedFormSolution sol_c(Profile::from_series(ChebSeries({0, 0})), Profile::from_series(ChebSeries({0, 1})));
    for (double s : {0.3, 1.7})
      for (double y : {-0.4, 0.2}) CHECK(std::abs(sol.evaluate(s, y) - sol_c.evaluate_exact(s, y)) < 1e-13);
    CHECK(std::abs(sol.evaluate(0, 0.3)) < 1e-15);
  }

  TEST_CASE("general formula agrees for odd data") {
    ClosedFormSolution sol(Profile::from_series(ChebSeries({0, 0.3, 0, -0.2, 0, 0.1})),
                           Profile::from_series(ChebSeries({0, -0.5, 0, 0.25})));
    for (double s : {0.2, 1.0, 3.0})
      for (double y : {-0.7, 0.05, 0.9}) CHECK(std::abs(sol.evaluate_general(s, y) - sol.evaluate_exact(s, y)) < 1e-12);
  }

  TEST_CASE("argument checks") {
    ClosedFormSolution sol(Profile::linear(), Profile::zero());
    CHECK_THROWS_AS(sol.evaluate(-1, 0.2), Error);
    CHECK_THROWS_AS(sol.evaluate(1, 1.0), Error);
    ClosedFormSolution even(Profile::constant(1), Profile::zero());
    CHECK_THROWS_AS(even.evaluate(1, 0.2), Error);
    CHECK(std::isfinite(even.evaluate_general(1, 0.2).real()));
  }

  TEST_CASE("energy flux identity") {
    auto g = make_grid(64);
    ClosedFormSolution sol(Profile::from_series(ChebSeries({0, 0.4, 0, 0.3, 0, -0.1})),
                           Profile::from_series(ChebSeries({0, 0.2, 0, -0.3})));
    Trajectory t = free_trajectory(sol, g, 2.0, 0.002);
    CHECK(energy_flux_check(t) < 1e-4);
    Trajectory z = free_trajectory(ClosedFormSolution(Profile::zero(), Profile::zero()), g, 0.1, 0.01);
    CHECK(energy_flux_check(z) == 0.0);
  }
}
