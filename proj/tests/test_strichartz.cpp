#include <cmath>

#include "doctest.h"
#include "hyperwave/strichartz.hpp"

using namespace hyperwave;
using namespace hyperwave::strichartz;

TEST_SUITE("strichartz") {
  TEST_CASE("ensemble is odd and reproducible") {
    EnsembleSpec spec;
    spec.count = 5;
    auto a = generate_ensemble(spec), b = generate_ensemble(spec);
    auto g = make_grid(32);
    for (int m = 0; m < 5; ++m) {
      CHECK(a[m].f.coeffs() == b[m].f.coeffs());
      CHECK(a[m].f.is_odd());
      CHECK(a[m].g.is_odd());
      CHECK(std::isfinite(energy_norm(member_state(a[m], g))));
    }
    spec.seed = 2;
    CHECK(generate_ensemble(spec)[0].f.coeffs() != a[0].f.coeffs());
  }

  TEST_CASE("free scan rejects q = inf") {
    EnsembleSpec spec;
    spec.count = 2;
    CHECK_THROWS_AS(run_free_scan(spec, {{2, kInf}}), Error);
    CHECK_THROWS_AS(run_free_scan(spec, {{1, 4}}), Error);
  }

  TEST_CASE("potential route with V = 0 matches the closed form") {
    EnsembleSpec spec;
    spec.count = 6;
    ScanOptions opt;
    opt.n = 32;
    opt.s_max = 4;
    opt.refine = false;
    std::vector<Exponent> exps = {{2, 4}, {3, 6}, {kInf, 2}};
    auto a = run_free_scan(spec, exps, opt);
    auto b = run_potential_scan(Potential::constant(0), spec, exps, opt);
    for (std::size_t i = 0; i < exps.size(); ++i) {
      CHECK(a.pairs[i].ratios.size() == 6);
      for (std::size_t m = 0; m < 6; ++m)
        CHECK(std::abs(a.pairs[i].ratios[m] - b.pairs[i].ratios[m]) <= 1e-6 * a.pairs[i].ratios[m]);
    }
  }

  TEST_CASE("g-only data and monotone maxima") {
    EnsembleSpec spec;
    spec.count = 4;
    spec.mode = DataMode::g_only;
    ScanOptions opt;
    opt.n = 32;
    opt.s_max = 4;
    opt.refine = false;
    auto small = run_free_scan(spec, {{2, 6}}, opt);
    spec.count = 8;
    auto large = run_free_scan(spec, {{2, 6}}, opt);
    CHECK(large.pairs[0].max_ratio >= small.pairs[0].max_ratio);
    for (double r : large.pairs[0].ratios) {
      CHECK(r >= 0);
      CHECK(r < 10);
    }
  }

  TEST_CASE("growth contrast for the unstable potential") {
    EnsembleSpec spec;
    spec.count = 5;
    ScanOptions opt;
    opt.n = 32;
    auto gc = growth_contrast(Potential::constant(-6), spec, 5.0, opt);
    CHECK(gc.contrast >= std::exp(2.5));
    auto rep = run_potential_scan(Potential::constant(-6), spec, {{3, 6}}, ScanOptions{32, 5, 0.05, 4, false});
    REQUIRE(rep.removed_modes.size() == 1);
    CHECK(std::abs(rep.removed_modes[0] - 1.0) < 1e-8);
    CHECK(std::isfinite(rep.pairs[0].max_ratio));
  }
}
