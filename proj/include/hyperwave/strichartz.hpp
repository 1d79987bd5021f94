#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hyperwave/core_types.hpp"
#include "hyperwave/spectral.hpp"

namespace hyperwave::strichartz {

enum class DataMode { both, f_only, g_only };

/// Random odd data f, g = sum_{k <= K} c_k T_{2k+1}, c_k ~ N(0, 1) / (k + 1)^decay.
struct EnsembleSpec {
  int count = 100;
  int band_limit = 8;
  std::uint64_t seed = 1;
  double decay = 2.0;
  DataMode mode = DataMode::both;
};

struct EnsembleMember {
  ChebSeries f, g;
};

std::vector<EnsembleMember> generate_ensemble(const EnsembleSpec& spec);
EnergyState member_state(const EnsembleMember& m, const GridPtr& grid);

struct Exponent {
  double p, q;
};

/// {(2,4), (3,6), (4,8), (inf,2)}
std::vector<Exponent> default_exponents();

struct ScanOptions {
  int n = 64;
  double s_max = 20;
  double output_interval = 0.05;
  double cfl = 4.0;
  bool refine = true;  ///< also run n -> 2n and s_max -> 2 s_max
  int threads = 1;
  spectral::SearchWindow window{};
};

struct PairResult {
  Exponent exponent{};
  std::vector<double> ratios;  ///< nonzero members only, in ensemble order
  double max_ratio = 0;
  std::size_t argmax = 0;
  double tail_share = 0;  ///< last-quarter share of the maximizing member's norm
  double delta_n = std::numeric_limits<double>::quiet_NaN();
  double delta_s = std::numeric_limits<double>::quiet_NaN();
};

struct StrichartzReport {
  std::string potential_id;
  int n = 0;
  double s_max = 0;
  std::size_t excluded = 0;  ///< zero-data members
  std::vector<Complex> removed_modes;
  std::vector<PairResult> pairs;
};

/// Free evolution through the closed form. Rejects q = inf and p < 2.
StrichartzReport run_free_scan(const EnsembleSpec& spec, const std::vector<Exponent>& exps, const ScanOptions& opt = {});

/// Semigroup evolution with the unstable projection removed; throws spectral_assumption
/// if an eigenvalue sits on the imaginary axis.
StrichartzReport run_potential_scan(const Potential& V, const EnsembleSpec& spec, const std::vector<Exponent>& exps,
                                    const ScanOptions& opt = {});

struct GrowthContrast {
  double s = 0;
  double raw = 0;        ///< max_m ||u_m(s)||_H / ||data_m||_H
  double projected = 0;  ///< same for the stable part
  double contrast = 0;
};

GrowthContrast growth_contrast(const Potential& V, const EnsembleSpec& spec, double s, const ScanOptions& opt = {});

}  // namespace hyperwave::strichartz
