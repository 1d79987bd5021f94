#include <random>

#include "hyperwave/strichartz.hpp"

namespace hyperwave::strichartz {

namespace {

ChebSeries draw(std::mt19937_64& rng, int K, double decay) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(2 * K + 2, 0.0);
  for (int k = 0; k <= K; ++k) c[2 * k + 1] = normal(rng) / std::pow(k + 1.0, decay);
  return ChebSeries(std::move(c));
}

}  // namespace

std::vector<EnsembleMember> generate_ensemble(const EnsembleSpec& spec) {
  require(spec.count >= 1 && spec.band_limit >= 0, ErrorKind::invalid_argument, "ensemble needs count >= 1 and K >= 0");
  std::mt19937_64 rng(spec.seed);
  std::vector<EnsembleMember> out;
  out.reserve(spec.count);
  for (int m = 0; m < spec.count; ++m) {
    ChebSeries f = draw(rng, spec.band_limit, spec.decay);
    ChebSeries g = draw(rng, spec.band_limit, spec.decay);
    if (spec.mode == DataMode::g_only) f = ChebSeries(std::vector<double>(2, 0.0));
    if (spec.mode == DataMode::f_only) g = ChebSeries(std::vector<double>(2, 0.0));
    out.push_back({std::move(f), std::move(g)});
  }
  return out;
}

EnergyState member_state(const EnsembleMember& m, const GridPtr& grid) {
  return {OddField::sample(grid, [&](double y) { return Complex(m.f(y), 0); }),
          OddField::sample(grid, [&](double y) { return Complex(m.g(y), 0); })};
}

std::vector<Exponent> default_exponents() { return {{2, 4}, {3, 6}, {4, 8}, {kInf, 2}}; }

}  // namespace hyperwave::strichartz
