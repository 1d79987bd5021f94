#include <cmath>

#include "hyperwave/evolution.hpp"
#include "hyperwave/free_wave.hpp"
#include "hyperwave/strichartz.hpp"

namespace hyperwave::strichartz {

namespace {

/// L^q norms per member, exponent and sample.
struct NormTable {
  std::vector<double> times;
  std::vector<double> qs;
  std::vector<std::vector<std::vector<double>>> vals;  // [member][q][sample]
  std::vector<double> energy;
};

int sample_count(const ScanOptions& opt) {
  require(opt.s_max > 0 && opt.output_interval > 0, ErrorKind::invalid_argument, "scan needs s_max > 0 and interval > 0");
  long m = std::lround(opt.s_max / opt.output_interval);
  require(m >= 2 && std::abs(m * opt.output_interval - opt.s_max) <= 1e-9 * opt.s_max, ErrorKind::invalid_argument,
          "s_max must be a multiple of the output interval");
  return static_cast<int>(m);
}

std::vector<double> distinct_q(const std::vector<Exponent>& exps) {
  std::vector<double> qs;
  for (const auto& e : exps)
    if (std::find(qs.begin(), qs.end(), e.q) == qs.end()) qs.push_back(e.q);
  return qs;
}

NormTable init_table(const std::vector<Exponent>& exps, std::size_t members, int samples, double interval) {
  NormTable t;
  t.qs = distinct_q(exps);
  for (int j = 0; j <= samples; ++j) t.times.push_back(j * interval);
  t.vals.assign(members, std::vector<std::vector<double>>(t.qs.size(), std::vector<double>(samples + 1, 0.0)));
  t.energy.assign(members, 0.0);
  return t;
}

double tail_norm(const std::vector<double>& t, const std::vector<double>& f, double p, double from) {
  std::vector<double> tt, ff;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= from - 1e-12) {
      tt.push_back(t[i]);
      ff.push_back(f[i]);
    }
  return mixed_norm_series(tt, ff, p);
}

void fill_pairs(StrichartzReport& rep, const NormTable& tab, const std::vector<Exponent>& exps) {
  rep.excluded = 0;
  for (double e : tab.energy)
    if (e == 0) ++rep.excluded;
  const double from = 0.75 * tab.times.back();
  for (const auto& e : exps) {
    PairResult pr;
    pr.exponent = e;
    std::size_t qi = std::find(tab.qs.begin(), tab.qs.end(), e.q) - tab.qs.begin();
    double best_total = 0;
    for (std::size_t m = 0; m < tab.energy.size(); ++m) {
      if (tab.energy[m] == 0) continue;
      double total = mixed_norm_series(tab.times, tab.vals[m][qi], e.p);
      double r = total / tab.energy[m];
      require(std::isfinite(r), ErrorKind::divergence, "non-finite Strichartz ratio");
      if (pr.ratios.empty() || r > pr.max_ratio) {
        pr.max_ratio = r;
        pr.argmax = m;
        best_total = total;
      }
      pr.ratios.push_back(r);
    }
    if (!pr.ratios.empty() && best_total > 0) pr.tail_share = tail_norm(tab.times, tab.vals[pr.argmax][qi], e.p, from) / best_total;
    rep.pairs.push_back(std::move(pr));
  }
}

NormTable free_table(const std::vector<EnsembleMember>& ens, const std::vector<Exponent>& exps, const ScanOptions& opt) {
  const int samples = sample_count(opt);
  GridPtr grid = make_grid(opt.n);
  NormTable tab = init_table(exps, ens.size(), samples, opt.output_interval);
  const int h = grid->half();
  parallel_for(ens.size(), opt.threads, [&](std::size_t m) {
    tab.energy[m] = energy_norm(member_state(ens[m], grid));
    free_wave::ClosedFormSolution sol(Profile::from_series(ens[m].f), Profile::from_series(ens[m].g));
    CVector half(h);
    for (int j = 0; j <= samples; ++j) {
      for (int i = 0; i < h; ++i) half[i] = sol.evaluate_exact(tab.times[j], grid->node(h + i));
      for (std::size_t k = 0; k < tab.qs.size(); ++k) tab.vals[m][k][j] = lq_norm_half(*grid, half, tab.qs[k]);
    }
  });
  return tab;
}

struct Batched {
  GridPtr grid;
  evolution::GeneratorMatrix gen;
  std::vector<Complex> modes;
  CMatrix stable;  ///< I - P on compact coordinates
  evolution::Propagator prop;
};

Batched make_batched(const Potential& V, const ScanOptions& opt) {
  GridPtr grid = make_grid(opt.n);
  evolution::GeneratorMatrix gen(grid, V);
  evolution::SpectralSplit split = evolution::spectral_split(gen, opt.window);
  const double n = opt.n;
  const int k = static_cast<int>(std::ceil(opt.output_interval / (opt.cfl / (n * n)) - 1e-9));
  const double ds = opt.output_interval / k;
  evolution::check_step(gen, ds, opt.cfl);
  const Eigen::Index m = gen.odd_block().rows();
  CMatrix stable = CMatrix::Identity(m, m);
  std::vector<Complex> modes;
  if (!split.points.empty()) {
    stable -= split.total;
    for (const auto& p : split.points) modes.push_back(p.lambda);
  }
  evolution::Propagator prop(gen.odd_block(), ds, k);
  return {grid, std::move(gen), std::move(modes), std::move(stable), std::move(prop)};
}

CMatrix data_matrix(const std::vector<EnsembleMember>& ens, const GridPtr& grid, std::vector<double>& energy) {
  CMatrix X(grid->size(), ens.size());
  energy.assign(ens.size(), 0.0);
  for (std::size_t m = 0; m < ens.size(); ++m) {
    EnergyState st = member_state(ens[m], grid);
    energy[m] = energy_norm(st);
    X.col(m) = st.compact();
  }
  return X;
}

NormTable potential_table(const Batched& b, const std::vector<EnsembleMember>& ens, const std::vector<Exponent>& exps,
                          const ScanOptions& opt) {
  const int samples = sample_count(opt);
  NormTable tab = init_table(exps, ens.size(), samples, opt.output_interval);
  const int h = b.grid->half();
  CMatrix X = b.stable * data_matrix(ens, b.grid, tab.energy);
  const bool project = !b.modes.empty();
  for (int j = 0; j <= samples; ++j) {
    if (j > 0) {
      X = b.prop.stride_matrix() * X;
      if (project) X = b.stable * X;
    }
    for (std::size_t m = 0; m < ens.size(); ++m)
      for (std::size_t k = 0; k < tab.qs.size(); ++k)
        tab.vals[m][k][j] = lq_norm_half(*b.grid, X.col(m).head(h), tab.qs[k]);
  }
  return tab;
}

void check_exponents(const std::vector<Exponent>& exps, bool free) {
  require(!exps.empty(), ErrorKind::invalid_argument, "no exponent pairs requested");
  for (const auto& e : exps) {
    require(e.q >= 1 && e.p >= 1, ErrorKind::invalid_argument, "exponents must be >= 1");
    if (free) {
      require(!std::isinf(e.q), ErrorKind::invalid_argument, "q = inf is outside the admissible set of the free estimate");
      require(e.p >= 2, ErrorKind::invalid_argument, "free estimate needs p >= 2");
    }
  }
}

template <class Run>
StrichartzReport with_refinement(const ScanOptions& opt, const std::vector<Exponent>& exps, Run run) {
  StrichartzReport rep = run(opt);
  if (!opt.refine) return rep;
  ScanOptions fine_n = opt, long_s = opt;
  fine_n.n *= 2;
  fine_n.refine = long_s.refine = false;
  long_s.s_max *= 2;
  StrichartzReport rn = run(fine_n), rs = run(long_s);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    double base = rep.pairs[i].max_ratio;
    if (base == 0) continue;
    rep.pairs[i].delta_n = std::abs(rn.pairs[i].max_ratio - base) / base;
    rep.pairs[i].delta_s = std::abs(rs.pairs[i].max_ratio - base) / base;
  }
  return rep;
}

}  // namespace

StrichartzReport run_free_scan(const EnsembleSpec& spec, const std::vector<Exponent>& exps, const ScanOptions& opt) {
  check_exponents(exps, true);
  auto ens = generate_ensemble(spec);
  return with_refinement(opt, exps, [&](const ScanOptions& o) {
    StrichartzReport rep;
    rep.potential_id = "0";
    rep.n = o.n;
    rep.s_max = o.s_max;
    fill_pairs(rep, free_table(ens, exps, o), exps);
    return rep;
  });
}

StrichartzReport run_potential_scan(const Potential& V, const EnsembleSpec& spec, const std::vector<Exponent>& exps,
                                    const ScanOptions& opt) {
  check_exponents(exps, false);
  auto ens = generate_ensemble(spec);
  return with_refinement(opt, exps, [&](const ScanOptions& o) {
    Batched b = make_batched(V, o);
    StrichartzReport rep;
    rep.potential_id = V.id();
    rep.n = o.n;
    rep.s_max = o.s_max;
    rep.removed_modes = b.modes;
    fill_pairs(rep, potential_table(b, ens, exps, o), exps);
    return rep;
  });
}

GrowthContrast growth_contrast(const Potential& V, const EnsembleSpec& spec, double s, const ScanOptions& opt) {
  ScanOptions o = opt;
  o.s_max = s;
  const int samples = sample_count(o);
  Batched b = make_batched(V, o);
  auto ens = generate_ensemble(spec);
  std::vector<double> energy;
  CMatrix raw = data_matrix(ens, b.grid, energy);
  CMatrix stable = b.stable * raw;
  for (int j = 0; j < samples; ++j) {
    raw = b.prop.stride_matrix() * raw;
    stable = b.stable * (b.prop.stride_matrix() * stable);
  }
  GrowthContrast gc;
  gc.s = s;
  for (std::size_t m = 0; m < ens.size(); ++m) {
    if (energy[m] == 0) continue;
    gc.raw = std::max(gc.raw, energy_norm(EnergyState::from_compact(b.grid, raw.col(m))) / energy[m]);
    gc.projected = std::max(gc.projected, energy_norm(EnergyState::from_compact(b.grid, stable.col(m))) / energy[m]);
  }
  gc.contrast = gc.projected > 0 ? gc.raw / gc.projected : kInf;
  return gc;
}

}  // namespace hyperwave::strichartz
