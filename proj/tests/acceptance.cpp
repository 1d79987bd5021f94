// Acceptance gate: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hyperwave/evolution.hpp"
#include "hyperwave/free_wave.hpp"
#include "hyperwave/nonlinear.hpp"
#include "hyperwave/spectral.hpp"
#include "hyperwave/strichartz.hpp"

using namespace hyperwave;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", x);
  return b;
}

void guarded(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EnergyState linear_state(const GridPtr& g, double a, double b) {
  return {OddField::sample(g, [=](double y) { return Complex(a * y, 0); }),
          OddField::sample(g, [=](double y) { return Complex(b * y, 0); })};
}

int steps_for(double interval, int n, double cfl = 4.0) {
  return static_cast<int>(std::ceil(interval / (cfl / (double(n) * n)) - 1e-9));
}

void closed_form_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  auto g = make_grid(64);
  evolution::GeneratorMatrix gen(g, Potential::constant(0));
  const int k = steps_for(0.05, 64);
  Trajectory t = evolution::evolve(gen, linear_state(g, 1, 0), 5.0, 0.05 / k, {4.0, k});
  double err = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double e = std::exp(-t.time(i));
    for (int j = 0; j < 64; ++j) err = std::max(err, std::abs(t.state(i).u[j] - g->node(j) * e * (2 - e)));
  }
  double rt = seconds_since(t0);
  report(1, "closed-form oracle", err <= 1e-6 && rt <= 10 && t.time(t.size() - 1) >= 5 - 1e-12,
         "max error " + sci(err) + " over s in [0, 5], runtime " + sci(rt) + " s");
}

void exact_mode() {
  auto g = make_grid(64);
  evolution::GeneratorMatrix gen(g, Potential::constant(-6));
  const int k = steps_for(0.05, 64);
  Trajectory t = evolution::evolve(gen, linear_state(g, 1, 1), 3.0, 0.05 / k, {4.0, k});
  double err = 0, ref = 0;
  for (int j = 0; j < 64; ++j) {
    err = std::max(err, std::abs(t.back().u[j] - std::exp(3.0) * g->node(j)));
    ref = std::max(ref, std::exp(3.0) * std::abs(g->node(j)));
  }
  report(2, "exact mode", err / ref <= 1e-6 && std::abs(t.time(t.size() - 1) - 3) < 1e-12,
         "relative error at s = 3: " + sci(err / ref));
}

void energy_identity() {
  auto g = make_grid(64);
  evolution::GeneratorMatrix gen(g, Potential::constant(0));
  strichartz::EnsembleSpec spec;
  spec.count = 20;
  spec.seed = 3;
  auto ens = strichartz::generate_ensemble(spec);
  double worst = 0;
  for (const auto& m : ens) {
    Trajectory t = evolution::evolve(gen, strichartz::member_state(m, g), 2.0, 1.0 / 1024);
    worst = std::max(worst, free_wave::energy_flux_check(t));
  }
  report(3, "energy identity", worst <= 1e-3, "max normalized flux defect " + sci(worst) + " over 20 data");
}

void wronskian() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> re(-0.25, 0.25), mod(1.0, 20.0), sign(-1, 1);
  std::vector<Potential> Vs = {Potential::constant(0), Potential::constant(-1), Potential::constant(-6),
                               Potential::polynomial({-1, 0, 2})};
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    double a = re(rng), r = mod(rng);
    double b = std::sqrt(r * r - a * a) * (sign(rng) < 0 ? -1 : 1);
    Complex lam(a, b);
    Complex W = spectral::wronskian_pair(Vs[i % 4], lam);
    worst = std::max(worst, std::abs(W - 2.0 * lam) / std::abs(2.0 * lam));
  }
  report(4, "Wronskian identity", worst <= 1e-8, "max relative |W - 2 lambda| " + sci(worst) + " over 20 lambda");
}

void yang_mills_spectrum() {
  spectral::SearchWindow win{-1e-3, 3.0, 20.0};
  spectral::ModeFinderOptions base;
  auto a = spectral::find_sigma_v(Potential::constant(-1), win, base);
  spectral::ModeFinderOptions fine = base;
  fine.points_per_edge *= 2;
  fine.min_cell /= 2;
  auto b = spectral::find_sigma_v(Potential::constant(-1), win, fine);
  spectral::ModeFinderOptions deep = base;
  deep.frobenius.order *= 2;
  deep.frobenius.delta /= 2;
  auto c = spectral::find_sigma_v(Potential::constant(-1), win, deep);
  int w = spectral::winding_number(Potential::constant(-1), win.re_min, win.re_max, -win.im_max, win.im_max, 1024);
  report(5, "empty spectrum for V = -1", a.empty() && b.empty() && c.empty() && w == 0,
         "roots found: " + std::to_string(a.size()) + "/" + std::to_string(b.size()) + "/" + std::to_string(c.size()) +
             " (base/contour doubled/series doubled), winding " + std::to_string(w));
}

void constructed_eigenvalues() {
  auto g = make_grid(64);
  bool ok = true;
  std::string detail;
  for (double l0 : {0.5, 1.0, 1.5}) {
    Potential V = Potential::constant(-(l0 + 1) * (l0 + 2));
    evolution::GeneratorMatrix gen(g, V);
    auto split = evolution::spectral_split(gen, spectral::SearchWindow{-1e-3, 3.0, 10.0});
    std::size_t idx = split.points.size();
    for (std::size_t i = 0; i < split.points.size(); ++i)
      if (std::abs(split.points[i].lambda - l0) < 1e-6) idx = i;
    if (idx == split.points.size()) {
      ok = false;
      detail += " lambda0=" + sci(l0) + ": not found;";
      continue;
    }
    const auto& p = split.points[idx];
    const auto& P = split.projections[idx];
    const CVector& e = p.eigenfunction.values();
    CVector y = g->nodes().cast<Complex>();
    Complex c = y.dot(e) / y.dot(y);
    double resid = (e - c * y).cwiseAbs().maxCoeff() / e.cwiseAbs().maxCoeff();
    int nil = P.nilpotency.empty() ? -1 : P.nilpotency.front().second;
    double err = std::abs(p.lambda - l0);
    bool this_ok = err <= 1e-8 && resid <= 1e-8 && P.rank == 1 && P.idempotency_defect <= 1e-8 && nil == 0 &&
                   p.nilpotency_order == 0;
    ok = ok && this_ok;
    detail += " lambda0=" + sci(l0) + ": |err| " + sci(err) + ", collinearity " + sci(resid) + ", rank " +
              std::to_string(P.rank) + ", P^2-P " + sci(P.idempotency_defect) + ", n " + std::to_string(nil) + ";";
  }
  report(6, "constructed eigenvalues", ok, detail);
}

void resolvent_cross() {
  auto g = make_grid(128);
  Potential V = Potential::constant(-1);
  Complex lam(0.05, 2);
  evolution::GeneratorMatrix gen(g, V);
  evolution::ResolventMatrix R(gen, lam);
  strichartz::EnsembleSpec spec;
  spec.count = 10;
  spec.seed = 7;
  double worst = 0, ident = 0;
  for (const auto& m : strichartz::generate_ensemble(spec)) {
    EnergyState f = strichartz::member_state(m, g);
    EnergyState xm = R.apply(f);
    EnergyState xg = spectral::resolvent_apply(V, lam, f);
    worst = std::max(worst, energy_norm(xg - xm) / energy_norm(xm));
    CVector x = xm.compact();
    ident = std::max(ident, (lam * x - gen.odd_block() * x - f.compact()).norm() / f.compact().norm());
  }
  report(7, "resolvent cross-validation", worst <= 1e-6 && ident <= 1e-8,
         "Green vs matrix " + sci(worst) + ", (lambda - L) R - I " + sci(ident));
}

std::string pairs_detail(const strichartz::StrichartzReport& rep, bool& ok) {
  std::string d;
  for (const auto& p : rep.pairs) {
    bool good = std::isfinite(p.max_ratio) && p.max_ratio > 0 && p.delta_n <= 0.1 && p.delta_s <= 0.1;
    ok = ok && good;
    char b[160];
    std::snprintf(b, sizeof b, " (%g,%g): max %.4g, dn %.2e, ds %.2e;", p.exponent.p, p.exponent.q, p.max_ratio,
                  p.delta_n, p.delta_s);
    d += b;
  }
  return d;
}

void free_strichartz() {
  strichartz::EnsembleSpec spec;
  spec.count = 100;
  spec.seed = 8;
  strichartz::ScanOptions opt;
  auto rep = strichartz::run_free_scan(spec, {{2, 4}, {3, 6}, {kInf, 2}}, opt);
  bool ok = rep.excluded == 0;
  std::string d = pairs_detail(rep, ok);
  report(8, "free Strichartz", ok, d);
}

void perturbed_strichartz() {
  strichartz::EnsembleSpec spec;
  spec.count = 100;
  spec.seed = 9;
  strichartz::ScanOptions opt;
  opt.window = spectral::SearchWindow{-1e-3, 3.0, 20.0};
  auto rep = strichartz::run_potential_scan(Potential::constant(-1), spec, {{2, 4}, {3, 6}, {kInf, 2}}, opt);
  bool ok = rep.removed_modes.empty();
  std::string d = pairs_detail(rep, ok);
  auto gc = strichartz::growth_contrast(Potential::constant(-6), spec, 5.0, opt);
  ok = ok && gc.contrast >= std::exp(2.5);
  d += " V=-6 contrast at s=5: " + sci(gc.contrast) + " (raw " + sci(gc.raw) + ", projected " + sci(gc.projected) + ")";
  report(9, "perturbed Strichartz", ok, d);
}

void yang_mills() {
  auto g = make_grid(64);
  strichartz::EnsembleSpec spec;
  spec.count = 1;
  spec.seed = 10;
  EnergyState x = strichartz::member_state(strichartz::generate_ensemble(spec)[0], g);
  double e = energy_norm(x);
  EnergyState data{(0.01 / e) * x.u, (0.01 / e) * x.v};
  nonlinear::PicardOptions opt;
  auto prop = nonlinear::PropagatorSet::for_interval(g, opt.s_max / opt.nodes);
  auto run = nonlinear::picard_solve(prop, data, opt);
  double late = 0;
  for (std::size_t k = 1; k < run.ratios.size(); ++k) late = std::max(late, run.ratios[k]);
  Trajectory d = nonlinear::nonlinear_evolve_direct(g, data, opt.s_max, prop.ds(), prop.stride().steps_per_stride());
  double diff = 0;
  bool aligned = d.size() == run.solution().size();
  for (std::size_t i = 0; aligned && i < d.size(); ++i)
    diff = std::max(diff, lq_norm(d.state(i).u - run.solution().state(i).u, 6));
  bool ok = run.converged && run.ratios.size() >= 2 && late <= 0.5 && run.residual <= 1e-4 && aligned && diff <= 1e-4;
  report(10, "Yang-Mills contraction", ok,
         "iterations " + std::to_string(run.iterates.size() - 1) + ", max ratio from iterate 2 " + sci(late) +
             ", residual " + sci(run.residual) + ", Picard vs direct " + sci(diff));
}

void cross_chart() {
  nonlinear::CauchyOptions opt;
  auto data = [](const GridPtr& g) {
    EnergyState x = linear_state(g, 1, 0);
    double e = energy_norm(x);
    return EnergyState{(0.01 / e) * x.u, (0.01 / e) * x.v};
  };
  auto g = make_grid(128);
  auto a = nonlinear::cauchy_cross_check(g, data(g), opt);
  auto g2 = make_grid(256);
  nonlinear::CauchyOptions o2 = opt;
  o2.h /= 2;
  auto b = nonlinear::cauchy_cross_check(g2, data(g2), o2);
  double ratio = a.discrepancy / b.discrepancy;
  report(11, "cross-chart consistency", a.discrepancy <= 1e-3 && ratio >= 3 && ratio <= 5,
         "discrepancy " + sci(a.discrepancy) + " (n=128, h=0.05), " + sci(b.discrepancy) + " doubled, ratio " + sci(ratio));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism() {
  fs::path d = fs::temp_directory_path() / "hyperwave_acceptance_determinism";
  fs::remove_all(d);
  fs::create_directories(d);
  std::ofstream(d / "config.json") << R"({"n": 32, "s_max": 2, "refine": false, "ensemble": {"count": 10}})" << "\n";
  std::string cli = HYPERWAVE_CLI;
  bool ok = true;
  std::string csv[2];
  for (int i = 0; i < 2; ++i) {
    fs::path out = d / ("run" + std::to_string(i));
    std::string cmd = "\"" + cli + "\" strichartz --config \"" + (d / "config.json").string() + "\" --out \"" +
                      out.string() + "\" --seed 42";
    ok = ok && std::system(cmd.c_str()) == 0;
    csv[i] = slurp(out / "series.csv");
  }
  ok = ok && !csv[0].empty() && csv[0] == csv[1];
  report(12, "determinism", ok, "two CLI runs with seed 42: series.csv " + std::string(csv[0] == csv[1] ? "identical" : "differ") +
                                   ", " + std::to_string(csv[0].size()) + " bytes");
}

}  // namespace

int main() {
  guarded(1, "closed-form oracle", closed_form_oracle);
  guarded(2, "exact mode", exact_mode);
  guarded(3, "energy identity", energy_identity);
  guarded(4, "Wronskian identity", wronskian);
  guarded(5, "empty spectrum for V = -1", yang_mills_spectrum);
  guarded(6, "constructed eigenvalues", constructed_eigenvalues);
  guarded(7, "resolvent cross-validation", resolvent_cross);
  guarded(8, "free Strichartz", free_strichartz);
  guarded(9, "perturbed Strichartz", perturbed_strichartz);
  guarded(10, "Yang-Mills contraction", yang_mills);
  guarded(11, "cross-chart consistency", cross_chart);
  guarded(12, "determinism", determinism);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
