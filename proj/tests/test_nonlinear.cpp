#include <cmath>
#include <random>

#include "doctest.h"
#include "hyperwave/nonlinear.hpp"

using namespace hyperwave;
using namespace hyperwave::nonlinear;

namespace {

EnergyState small_data(const GridPtr& g, double energy) {
  EnergyState x{OddField::sample(g, [](double y) { return Complex(y - 0.5 * std::pow(y, 3), 0); }),
                OddField::sample(g, [](double y) { return Complex(0.3 * y, 0); })};
  double e = energy_norm(x);
  return {(energy / e) * x.u, (energy / e) * x.v};
}

double linf_l6_diff(const Trajectory& a, const Trajectory& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, lq_norm(a.state(i).u - b.state(i).u, 6));
  return m;
}

}  // namespace

TEST_SUITE("nonlinear") {
  TEST_CASE("propagators") {
    auto g = make_grid(32);
    auto P = PropagatorSet::for_interval(g, 0.05);
    OddField f = OddField::sample(g, [](double y) { return Complex(y * (1 - y * y), 0); });
    OddField h = OddField::sample(g, [](double y) { return Complex(std::sin(3 * y), 0); });
    CHECK((P.C(f, 0).values() - f.values()).norm() == 0.0);
    CHECK(P.S(f, 0).values().norm() == 0.0);
    OddField lhs = P.C(f + Complex(2.0, 0) * h, 7);
    OddField rhs = P.C(f, 7) + Complex(2.0, 0) * P.C(h, 7);
    CHECK((lhs.values() - rhs.values()).norm() < 1e-8);
  }

  TEST_CASE("cubic identity") {
    CVector a(4), b(4);
    a << 0.3, -0.2, 0.1, 0.0;
    b << 0.1, 0.4, -0.5, 0.0;
    CVector sa = cubic_source(a), sb = cubic_source(b);
    Complex lhs = sa[2] - sb[2];
    Complex rhs = (a[0] - b[0]) * (a[0] * a[0] + a[0] * b[0] + b[0] * b[0]);
    CHECK(std::abs(lhs - rhs) < 1e-16);
    CHECK(sa[0] == Complex(0, 0));
  }

  TEST_CASE("Duhamel step with zero source is the linear solution") {
    auto g = make_grid(32);
    auto P = PropagatorSet::for_interval(g, 0.05);
    EnergyState data = small_data(g, 0.01);
    Trajectory zero(g);
    for (int j = 0; j <= 20; ++j) zero.push_back(j * 0.05, {OddField::zero(g), OddField::zero(g)});
    Trajectory K = duhamel_step(P, data, zero);
    CMatrix lin = P.linear(data, 20);
    for (int j = 0; j <= 20; ++j) CHECK((K.state(j).compact() - lin.col(j)).norm() < 1e-14);
    Trajectory K0 = duhamel_step(P, {OddField::zero(g), OddField::zero(g)}, zero);
    CHECK(x_norm(K0) == 0.0);
  }

  TEST_CASE("Picard iteration contracts and matches the direct solver") {
    auto g = make_grid(32);
    PicardOptions opt;
    opt.nodes = 100;
    opt.s_max = 5;
    auto P = PropagatorSet::for_interval(g, opt.s_max / opt.nodes);
    EnergyState data = small_data(g, 0.01);
    PicardRun run = picard_solve(P, data, opt);
    CHECK(run.converged);
    for (std::size_t k = 1; k < run.ratios.size(); ++k) CHECK(run.ratios[k] <= 0.5);
    CHECK(run.residual <= 1e-4);
    Trajectory d = nonlinear_evolve_direct(g, data, opt.s_max, P.ds(), P.stride().steps_per_stride());
    REQUIRE(d.size() == run.solution().size());
    CHECK(linf_l6_diff(d, run.solution()) <= 1e-4);
    for (const auto& st : d.states()) CHECK(OddField::parity_defect(st.u.values()) <= 1e-10);
  }

  TEST_CASE("scaling trend and data guards") {
    auto g = make_grid(32);
    PicardOptions opt;
    opt.nodes = 50;
    opt.s_max = 5;
    auto P = PropagatorSet::for_interval(g, opt.s_max / opt.nodes);
    auto zero = picard_solve(P, {OddField::zero(g), OddField::zero(g)}, opt);
    CHECK(zero.converged);
    CHECK(zero.iterates.size() == 2);
    CHECK(x_norm(zero.solution()) == 0.0);
    try {
      picard_solve(P, small_data(g, 0.2), opt);
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::invalid_argument);
    }
    double big = x_norm(picard_solve(P, small_data(g, 0.02), opt).solution());
    double half = x_norm(picard_solve(P, small_data(g, 0.01), opt).solution());
    CHECK(big / half == doctest::Approx(2.0).epsilon(0.01));
  }

  TEST_CASE("direct solver") {
    auto g = make_grid(32);
    EnergyState z{OddField::zero(g), OddField::zero(g)};
    Trajectory t = nonlinear_evolve_direct(g, z, 1.0, 1.0 / 256);
    CHECK(x_norm(t) == 0.0);
    CHECK_THROWS_AS(
        nonlinear_evolve_direct(g, {OddField::sample(g, [](double) { return Complex(1, 0); }), OddField::zero(g)}, 1.0,
                                1.0 / 256),
        Error);
    EnergyState large{OddField::sample(g, [](double y) { return Complex(2000 * y, 0); }), OddField::zero(g)};
    try {
      nonlinear_evolve_direct(g, large, 3.0, 1.0 / 256);
      FAIL("expected blow-up detection");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::blowup_detected);
    }
  }

  TEST_CASE("asymptotic stability report") {
    auto g = make_grid(32);
    auto zero = asymptotic_stability_report({OddField::zero(g), OddField::zero(g)}, 5.0, 50);
    CHECK(zero.l3_l6 == 0.0);
    CHECK(zero.linf_l6 == 0.0);
    auto rep = asymptotic_stability_report(small_data(g, 0.01), 30.0, 300);
    CHECK(std::isfinite(rep.l3_l6));
    CHECK(rep.tail_l3_l6 <= 0.1 * rep.l3_l6);
    CHECK(rep.decay_rate > 0);
  }

  TEST_CASE("Cauchy cross-check") {
    auto g = make_grid(32);
    CauchyOptions opt;
    opt.s1 = 1.0;
    auto zero = cauchy_cross_check(g, {OddField::zero(g), OddField::zero(g)}, opt);
    CHECK(zero.discrepancy == 0.0);
    auto res = cauchy_cross_check(g, small_data(g, 0.01), opt);
    CHECK(res.discrepancy < 1e-3);
    CHECK(!res.ys.empty());
    CauchyOptions tight = opt;
    tight.R = 2.0;
    try {
      cauchy_cross_check(g, small_data(g, 0.01), tight);
      FAIL("expected domain error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::domain);
    }
  }
}
