#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include <Eigen/Core>
#include <boost/version.hpp>

#include "hyperwave/evolution.hpp"
#include "hyperwave/free_wave.hpp"
#include "hyperwave/harness.hpp"
#include "hyperwave/nonlinear.hpp"
#include "hyperwave/spectral.hpp"
#include "hyperwave/strichartz.hpp"

namespace hyperwave::harness {

namespace {

Json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json complex_json(Complex z) { return Json::array({num(z.real()), num(z.imag())}); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// potential and data specs

Potential read_potential(ConfigReader& r, std::optional<double> dflt) {
  if (!r.has("potential")) {
    if (!dflt) r.error("potential", "is required");
    r.object("potential").string("type", "constant");
    r.object("potential").number("value", *dflt);
    return Potential::constant(*dflt);
  }
  if (r.peek("potential").is_number()) {
    double c = r.number("potential");
    return Potential::constant(c);
  }
  ConfigReader& p = r.object("potential");
  std::string type = p.string("type");
  if (type == "constant") return Potential::constant(p.number("value"));
  if (type == "polynomial") {
    auto c = p.numbers("coeffs");
    try {
      return Potential::polynomial(c);
    } catch (const Error& e) {
      p.error("coeffs", e.what());
    }
  }
  if (type == "eigen") {
    double l0 = p.number("lambda0");
    return Potential::constant(-(l0 + 1) * (l0 + 2));
  }
  p.error("type", "must be one of constant, polynomial, eigen");
}

ChebSeries read_profile(ConfigReader& parent, const std::string& key, const std::string& dflt) {
  if (!parent.has(key) || parent.peek(key).is_string()) {
    std::string name = parent.string(key, dflt);
    if (name == "zero") return ChebSeries({0.0, 0.0});
    if (name == "linear") return ChebSeries({0.0, 1.0});
    parent.error(key, "must be \"zero\", \"linear\" or an object");
  }
  ConfigReader& p = parent.object(key);
  std::string type = p.string("type");
  if (type == "zero") return ChebSeries({0.0, 0.0});
  if (type == "linear") return ChebSeries({0.0, p.number("a", 1.0)});
  if (type == "constant") return ChebSeries({p.number("a", 1.0)});
  if (type == "chebyshev") {
    auto c = p.numbers("coeffs");
    if (c.empty()) p.error("coeffs", "must not be empty");
    return ChebSeries(c);
  }
  p.error("type", "must be one of zero, linear, constant, chebyshev");
}

struct DataSpec {
  ChebSeries f, g;
  EnergyState state(const GridPtr& grid) const {
    return {OddField::sample(grid, [&](double y) { return Complex(f(y), 0); }),
            OddField::sample(grid, [&](double y) { return Complex(g(y), 0); })};
  }
};

ChebSeries scaled(const ChebSeries& s, double a) {
  auto c = s.coeffs();
  for (double& x : c) x *= a;
  return ChebSeries(c);
}

DataSpec read_data(ConfigReader& r, const std::string& f_default, const std::string& g_default,
                   std::optional<double> energy_default, const GridPtr& grid) {
  ConfigReader& d = r.object("data");
  DataSpec spec{read_profile(d, "f", f_default), read_profile(d, "g", g_default)};
  std::optional<double> energy;
  if (d.has("energy") || energy_default) energy = d.number("energy", energy_default);
  if (energy) {
    if (*energy < 0) d.error("energy", "must be nonnegative");
    double e = energy_norm(spec.state(grid));
    if (e == 0 && *energy > 0) d.error("energy", "cannot rescale zero data");
    if (e > 0) spec = {scaled(spec.f, *energy / e), scaled(spec.g, *energy / e)};
  }
  return spec;
}

int read_n(ConfigReader& r, int dflt) {
  int n = r.integer("n", dflt);
  if (n < 8 || n % 2) r.error("n", "must be an even integer >= 8");
  return n;
}

double positive(ConfigReader& r, const std::string& key, std::optional<double> dflt) {
  double x = r.number(key, dflt);
  if (!(x > 0)) r.error(key, "must be positive");
  return x;
}

/// Number of RK4 steps per output interval: from `ds` if given, else the largest admissible step.
int steps_per_interval(ConfigReader& r, double interval, int n, double cfl) {
  if (r.has("ds")) {
    double ds = positive(r, "ds", std::nullopt);
    long k = std::lround(interval / ds);
    if (k < 1 || std::abs(k * ds - interval) > 1e-9 * interval) r.error("ds", "must divide output_interval");
    return static_cast<int>(k);
  }
  return static_cast<int>(std::ceil(interval / (cfl / (double(n) * n)) - 1e-9));
}

spectral::SearchWindow read_window(ConfigReader& r, spectral::SearchWindow dflt = {}) {
  ConfigReader& w = r.object("window");
  spectral::SearchWindow win;
  win.re_min = w.number("re_min", dflt.re_min);
  win.re_max = w.number("re_max", dflt.re_max);
  win.im_max = w.number("im_max", dflt.im_max);
  if (!(win.re_max > win.re_min)) w.error("re_max", "must exceed re_min");
  if (!(win.im_max > 0)) w.error("im_max", "must be positive");
  return win;
}

strichartz::EnsembleSpec read_ensemble(ConfigReader& r, std::uint64_t seed, int count_default) {
  ConfigReader& e = r.object("ensemble");
  strichartz::EnsembleSpec s;
  s.seed = seed;
  s.count = e.integer("count", count_default);
  if (s.count < 1) e.error("count", "must be >= 1");
  s.band_limit = e.integer("band_limit", 8);
  if (s.band_limit < 0) e.error("band_limit", "must be >= 0");
  s.decay = e.number("decay", 2.0);
  std::string mode = e.string("mode", "both");
  if (mode == "both") s.mode = strichartz::DataMode::both;
  else if (mode == "f_only") s.mode = strichartz::DataMode::f_only;
  else if (mode == "g_only") s.mode = strichartz::DataMode::g_only;
  else e.error("mode", "must be one of both, f_only, g_only");
  return s;
}

std::vector<strichartz::Exponent> read_exponents(ConfigReader& r) {
  if (!r.has("exponents")) {
    auto d = strichartz::default_exponents();
    Json echo = Json::array();
    for (const auto& e : d) echo.push_back(Json::array({num(e.p), num(e.q)}));
    r.echo("exponents", echo);
    return d;
  }
  const Json& v = r.raw("exponents");
  std::vector<strichartz::Exponent> out;
  auto value = [&](const Json& x) {
    if (x.is_number()) return x.get<double>();
    if (x.is_string() && x.get<std::string>() == "inf") return kInf;
    r.error("exponents", "entries must be [p, q] with numbers or \"inf\"");
  };
  if (!v.is_array() || v.empty()) r.error("exponents", "must be a nonempty array of [p, q] pairs");
  for (const auto& pr : v) {
    if (!pr.is_array() || pr.size() != 2) r.error("exponents", "entries must be [p, q] pairs");
    out.push_back({value(pr[0]), value(pr[1])});
  }
  return out;
}

std::string pair_name(const strichartz::Exponent& e) {
  auto s = [](double x) { return std::isinf(x) ? std::string("inf") : fmt(x); };
  return "p" + s(e.p) + "_q" + s(e.q);
}

// ---------------------------------------------------------------------------
// commands

RunOutput cmd_evolve(ConfigReader& r) {
  RunOutput out;
  const int n = read_n(r, 64);
  GridPtr grid = make_grid(n);
  Potential V = read_potential(r, 0.0);
  DataSpec data = read_data(r, "linear", "zero", std::nullopt, grid);
  const double s_max = r.number("s_max", 5.0);
  if (s_max < 0) r.error("s_max", "must be nonnegative");
  const double interval = positive(r, "output_interval", 0.05);
  const double cfl = positive(r, "cfl", 4.0);
  const int k = steps_per_interval(r, interval, n, cfl);
  const double ds = interval / k;
  r.finish();

  evolution::GeneratorMatrix gen(grid, V);
  EnergyState init = data.state(grid);
  Trajectory traj = evolution::evolve(gen, init, s_max, ds, {cfl, k});

  const bool free = V.is_zero();
  std::optional<free_wave::ClosedFormSolution> exact;
  if (free) exact.emplace(Profile::from_series(data.f), Profile::from_series(data.g));
  out.header = {"s", "l2", "l6", "linf", "energy"};
  if (free) out.header.push_back("closed_form_error");
  double max_err = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const EnergyState& st = traj.state(i);
    std::vector<double> row = {traj.time(i), lq_norm(st.u, 2), lq_norm(st.u, 6), lq_norm(st.u, kInf), energy_norm(st)};
    if (free) {
      double err = 0;
      for (int j = 0; j < n; ++j) err = std::max(err, std::abs(st.u[j] - exact->evaluate_exact(traj.time(i), grid->node(j))));
      max_err = std::max(max_err, err);
      row.push_back(err);
    }
    out.rows.push_back(std::move(row));
  }
  out.result["potential"] = V.id();
  out.result["n"] = n;
  out.result["ds"] = ds;
  out.result["slices"] = traj.size();
  out.result["final_energy"] = energy_norm(traj.back());
  out.result["final_l6"] = lq_norm(traj.back().u, 6);
  if (free) {
    out.result["max_closed_form_error"] = max_err;
    if (traj.size() >= 3) out.result["energy_flux_defect"] = free_wave::energy_flux_check(traj);
  }
  return out;
}

RunOutput cmd_spectrum(ConfigReader& r) {
  RunOutput out;
  const int n = read_n(r, 64);
  GridPtr grid = make_grid(n);
  Potential V = read_potential(r, std::nullopt);
  spectral::SearchWindow win = read_window(r);
  spectral::ModeFinderOptions mopt;
  mopt.points_per_edge = r.integer("points_per_edge", mopt.points_per_edge);
  if (mopt.points_per_edge < 16) r.error("points_per_edge", "must be >= 16");
  const bool riesz = r.boolean("riesz", true);
  r.finish();

  auto points = spectral::find_sigma_v(V, win, mopt, grid);
  bool axis = false;
  for (const auto& p : points) axis = axis || p.on_imaginary_axis;
  std::vector<evolution::RieszProjection> proj;
  if (riesz && !points.empty() && !axis) {
    evolution::GeneratorMatrix gen(grid, V);
    auto split = evolution::spectral_split(gen, win, mopt);
    points = split.points;
    proj = split.projections;
  }
  out.header = {"index", "re", "im", "multiplicity", "nilpotency", "residual"};
  Json roots = Json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    Json j;
    j["lambda"] = complex_json(p.lambda);
    j["multiplicity"] = p.algebraic_multiplicity;
    j["nilpotency"] = p.nilpotency_order;
    j["on_imaginary_axis"] = p.on_imaginary_axis;
    j["residual"] = p.residual;
    if (i < proj.size()) {
      j["riesz_rank"] = proj[i].rank;
      j["idempotency_defect"] = proj[i].idempotency_defect;
      j["commutator_defect"] = proj[i].commutator_defect;
    }
    roots.push_back(j);
    out.rows.push_back({double(i), p.lambda.real(), p.lambda.imag(), double(p.algebraic_multiplicity),
                        double(p.nilpotency_order), p.residual});
  }
  out.result["potential"] = V.id();
  out.result["window"] = {{"re_min", win.re_min}, {"re_max", win.re_max}, {"im_max", win.im_max}};
  out.result["count"] = points.size();
  out.result["roots"] = roots;
  return out;
}

RunOutput cmd_resolvent(ConfigReader& r, std::uint64_t seed) {
  RunOutput out;
  const int n = read_n(r, 128);
  GridPtr grid = make_grid(n);
  Potential V = read_potential(r, -1.0);
  auto lam = r.numbers("lambda", std::vector<double>{0.05, 2.0});
  if (lam.size() != 2) r.error("lambda", "must be [re, im]");
  const Complex lambda(lam[0], lam[1]);
  spectral::GreenOptions gopt;
  gopt.eps0 = positive(r, "eps0", gopt.eps0);
  strichartz::EnsembleSpec es = read_ensemble(r, seed, 10);
  r.finish();

  evolution::GeneratorMatrix gen(grid, V);
  evolution::ResolventMatrix R(gen, lambda);
  auto ens = strichartz::generate_ensemble(es);
  out.header = {"member", "relative_difference", "identity_residual"};
  double max_diff = 0, max_id = 0;
  for (std::size_t m = 0; m < ens.size(); ++m) {
    EnergyState f = strichartz::member_state(ens[m], grid);
    EnergyState xm = R.apply(f);
    EnergyState xg = spectral::resolvent_apply(V, lambda, f, gopt);
    double diff = energy_norm(xg - xm) / energy_norm(xm);
    CVector x = xm.compact();
    CVector res = lambda * x - gen.odd_block() * x - f.compact();
    double id = res.norm() / f.compact().norm();
    max_diff = std::max(max_diff, diff);
    max_id = std::max(max_id, id);
    out.rows.push_back({double(m), diff, id});
  }
  out.result["potential"] = V.id();
  out.result["lambda"] = complex_json(lambda);
  out.result["n"] = n;
  out.result["members"] = ens.size();
  out.result["max_relative_difference"] = max_diff;
  out.result["max_identity_residual"] = max_id;
  out.result["sigma_min_estimate"] = R.sigma_min_estimate();
  return out;
}

RunOutput cmd_strichartz(ConfigReader& r, std::uint64_t seed, int threads) {
  RunOutput out;
  strichartz::ScanOptions opt;
  opt.threads = threads;
  opt.n = read_n(r, 64);
  Potential V = read_potential(r, 0.0);
  opt.s_max = positive(r, "s_max", opt.s_max);
  opt.output_interval = positive(r, "output_interval", opt.output_interval);
  opt.cfl = positive(r, "cfl", opt.cfl);
  opt.refine = r.boolean("refine", true);
  opt.window = read_window(r);
  strichartz::EnsembleSpec es = read_ensemble(r, seed, 100);
  auto exps = read_exponents(r);
  std::string route = r.string("route", "auto");
  if (route != "auto" && route != "closed_form" && route != "semigroup")
    r.error("route", "must be one of auto, closed_form, semigroup");
  if (route == "closed_form" && !V.is_zero()) r.error("route", "closed_form requires the zero potential");
  const double contrast_s = positive(r, "contrast_s", 5.0);
  r.finish();

  const bool closed = route == "closed_form" || (route == "auto" && V.is_zero());
  strichartz::StrichartzReport rep =
      closed ? strichartz::run_free_scan(es, exps, opt) : strichartz::run_potential_scan(V, es, exps, opt);

  out.header = {"member"};
  for (const auto& e : exps) out.header.push_back("ratio_" + pair_name(e));
  const std::size_t rows = rep.pairs.empty() ? 0 : rep.pairs.front().ratios.size();
  for (std::size_t m = 0; m < rows; ++m) {
    std::vector<double> row = {double(m)};
    for (const auto& p : rep.pairs) row.push_back(p.ratios[m]);
    out.rows.push_back(std::move(row));
  }
  Json pairs = Json::array();
  for (const auto& p : rep.pairs) {
    pairs.push_back({{"p", num(p.exponent.p)},
                     {"q", num(p.exponent.q)},
                     {"max_ratio", num(p.max_ratio)},
                     {"argmax", p.argmax},
                     {"tail_share", num(p.tail_share)},
                     {"delta_n", num(p.delta_n)},
                     {"delta_s", num(p.delta_s)}});
  }
  out.result["potential"] = rep.potential_id;
  out.result["route"] = closed ? "closed_form" : "semigroup";
  out.result["n"] = rep.n;
  out.result["s_max"] = rep.s_max;
  out.result["members"] = es.count;
  out.result["excluded_zero_members"] = rep.excluded;
  Json modes = Json::array();
  for (Complex z : rep.removed_modes) modes.push_back(complex_json(z));
  out.result["removed_modes"] = modes;
  out.result["pairs"] = pairs;
  if (!rep.removed_modes.empty()) {
    auto gc = strichartz::growth_contrast(V, es, contrast_s, opt);
    out.result["growth_contrast"] = {{"s", gc.s}, {"raw", num(gc.raw)}, {"projected", num(gc.projected)},
                                     {"contrast", num(gc.contrast)}};
  }
  return out;
}

RunOutput cmd_yangmills(ConfigReader& r) {
  RunOutput out;
  const int n = read_n(r, 64);
  GridPtr grid = make_grid(n);
  DataSpec data = read_data(r, "linear", "zero", 0.01, grid);
  ConfigReader& p = r.object("picard");
  nonlinear::PicardOptions popt;
  popt.nodes = p.integer("nodes", popt.nodes);
  if (popt.nodes < 2) p.error("nodes", "must be >= 2");
  popt.s_max = positive(p, "s_max", popt.s_max);
  popt.max_iter = p.integer("max_iter", popt.max_iter);
  if (popt.max_iter < 1) p.error("max_iter", "must be >= 1");
  popt.tol = positive(p, "tol", popt.tol);
  popt.delta_threshold = positive(p, "delta_threshold", popt.delta_threshold);
  const double cfl = positive(r, "cfl", 4.0);
  const bool direct = r.boolean("direct", true);
  r.finish();

  EnergyState init = data.state(grid);
  auto prop = nonlinear::PropagatorSet::for_interval(grid, popt.s_max / popt.nodes, cfl);
  nonlinear::PicardRun run = nonlinear::picard_solve(prop, init, popt);
  const Trajectory& u = run.solution();
  auto l6p = nonlinear::l6_series(u);

  std::optional<Trajectory> d;
  double diff = 0;
  if (direct) {
    d = nonlinear::nonlinear_evolve_direct(grid, init, popt.s_max, prop.ds(), prop.stride().steps_per_stride(), cfl);
    require(d->size() == u.size(), ErrorKind::internal, "direct and Picard sample sets differ");
    for (std::size_t i = 0; i < u.size(); ++i) diff = std::max(diff, lq_norm(u.state(i).u - d->state(i).u, 6));
  }
  out.header = {"s", "l6_picard"};
  if (direct) out.header.insert(out.header.end(), {"l6_direct", "l6_difference"});
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::vector<double> row = {u.time(i), l6p[i]};
    if (direct) {
      row.push_back(lq_norm(d->state(i).u, 6));
      row.push_back(lq_norm(u.state(i).u - d->state(i).u, 6));
    }
    out.rows.push_back(std::move(row));
  }
  double late = 0;
  for (std::size_t k = 1; k < run.ratios.size(); ++k) late = std::max(late, run.ratios[k]);
  auto rep = nonlinear::asymptotic_stability_report(u);
  out.result["data_energy"] = energy_norm(init);
  out.result["converged"] = run.converged;
  out.result["iterations"] = run.iterates.size() - 1;
  out.result["deltas"] = run.deltas;
  out.result["ratios"] = run.ratios;
  out.result["max_ratio_from_iterate_2"] = late;
  out.result["x_norm"] = run.x_norms.back();
  out.result["fixed_point_residual"] = run.residual;
  if (direct) out.result["direct_difference_linf_l6"] = diff;
  out.result["stability"] = {{"l3_l6", rep.l3_l6},
                             {"linf_l6", rep.linf_l6},
                             {"tail_l3_l6", rep.tail_l3_l6},
                             {"decay_rate", num(rep.decay_rate)}};
  return out;
}

RunOutput cmd_crosscheck(ConfigReader& r) {
  RunOutput out;
  const int n = read_n(r, 128);
  GridPtr grid = make_grid(n);
  DataSpec data = read_data(r, "linear", "zero", 0.01, grid);
  ConfigReader& c = r.object("cauchy");
  nonlinear::CauchyOptions opt;
  opt.s0 = c.number("s0", opt.s0);
  opt.s1 = c.number("s1", opt.s1);
  opt.y_max = c.number("y_max", opt.y_max);
  opt.R = positive(c, "R", opt.R);
  opt.h = positive(c, "h", opt.h);
  opt.band = positive(c, "band", opt.band);
  opt.cfl = positive(r, "cfl", opt.cfl);
  const bool doubling = r.boolean("doubling", true);
  r.finish();

  auto res = nonlinear::cauchy_cross_check(grid, data.state(grid), opt);
  out.header = {"y", "u_hyperboloidal", "u_cauchy", "difference"};
  for (std::size_t i = 0; i < res.ys.size(); ++i)
    out.rows.push_back({res.ys[i], res.u_hyperboloidal[i], res.u_cauchy[i], res.u_hyperboloidal[i] - res.u_cauchy[i]});
  out.result["n"] = n;
  out.result["h"] = opt.h;
  out.result["discrepancy"] = res.discrepancy;
  if (doubling) {
    GridPtr fine = make_grid(2 * n);
    nonlinear::CauchyOptions o2 = opt;
    o2.h = opt.h / 2;
    auto r2 = nonlinear::cauchy_cross_check(fine, data.state(fine), o2);
    out.result["discrepancy_doubled"] = r2.discrepancy;
    out.result["doubling_ratio"] = num(r2.discrepancy > 0 ? res.discrepancy / r2.discrepancy : kInf);
  }
  return out;
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::config, "cannot write '" + p.string() + "'");
  f << s;
  require(static_cast<bool>(f), ErrorKind::internal, "write failed for '" + p.string() + "'");
}

}  // namespace

RunOutput execute(const RunConfig& cfg) {
  ConfigReader r(cfg.root, "", &cfg.text);
  if (r.has("command") && r.string("command") != cfg.command)
    r.error("command", "does not match the command line ('" + cfg.command + "')");
  if (r.has("seed")) r.integer("seed");
  RunOutput out;
  if (cfg.command == "evolve") out = cmd_evolve(r);
  else if (cfg.command == "spectrum") out = cmd_spectrum(r);
  else if (cfg.command == "resolvent-check") out = cmd_resolvent(r, cfg.seed);
  else if (cfg.command == "strichartz") out = cmd_strichartz(r, cfg.seed, cfg.threads);
  else if (cfg.command == "yangmills") out = cmd_yangmills(r);
  else if (cfg.command == "crosscheck") out = cmd_crosscheck(r);
  else fail(ErrorKind::config, "unknown command '" + cfg.command + "'");
  out.resolved = r.resolved();
  out.resolved["command"] = cfg.command;
  out.resolved["seed"] = cfg.seed;
  return out;
}

std::string format_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + fmt(row[i]);
    s += "\n";
  }
  return s;
}

void write_outputs(const RunConfig& cfg, const RunOutput& out, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorKind::config, "cannot create output directory '" + dir.string() + "'");
  Json result = {{"command", cfg.command}, {"result", out.result}};
  write_file(dir / "result.json", result.dump(2) + "\n");
  write_file(dir / "series.csv", format_csv(out.header, out.rows));

  Json manifest;
  manifest["command"] = cfg.command;
  manifest["config_path"] = cfg.path;
  manifest["resolved_config"] = out.resolved;
  manifest["seed"] = cfg.seed;
  manifest["threads"] = cfg.threads;
  manifest["versions"] = {{"hyperwave", kVersion},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION)},
                          {"boost", BOOST_LIB_VERSION},
                          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                          {"compiler", __VERSION__}};
  manifest["constants"] = {{"parity_tolerance", OddField::kParityTol},
                           {"rk4_stability_radius", evolution::kRk4StabilityRadius}};
  manifest["measured"] = out.result;
  manifest["timestamp"] = utc_timestamp();
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config:
    case ErrorKind::invalid_argument:
    case ErrorKind::invalid_data:
    case ErrorKind::parity:
    case ErrorKind::out_of_chart:
    case ErrorKind::domain:
      return 2;
    case ErrorKind::internal:
    case ErrorKind::interpolation_domain:
      return 4;
    default:
      return 3;
  }
}

int run(const std::string& command, const std::string& config_path, const std::string& out_dir,
        std::optional<std::uint64_t> seed, int threads) {
  try {
    RunConfig cfg = load_config(command, config_path, seed, threads);
    RunOutput out = execute(cfg);
    write_outputs(cfg, out, out_dir);
    return 0;
  } catch (const Error& e) {
    std::cerr << "hyperwave: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "hyperwave: internal: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace hyperwave::harness
