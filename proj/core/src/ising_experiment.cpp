#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fisher/experiments.hpp"
#include "fisher/parallel.hpp"
#include "fisher/seeds.hpp"
#include "fisher/stencil.hpp"

namespace fisher {

IsingSweepConfig::IsingSweepConfig() {
  deft.num_points = 200;
  deft.box = BoxPolicy::fixed(-4.0, 1.0);
}

IsingSweepConfig IsingSweepConfig::paper_scale() {
  IsingSweepConfig c;
  c.segments = 200;
  c.chain.L = 25;
  c.chain.samples = 15000;
  c.chain.warmup_sweeps = 8000;  // 5e6 single-spin steps on 25 x 25
  c.repetitions = 5;
  return c;
}

std::vector<double> IsingSweepConfig::temperatures() const {
  std::vector<double> out(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) {
    out[i] = t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(segments);
  }
  return out;
}

void IsingSweepConfig::validate() const {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw std::invalid_argument("temperature range must satisfy 0 < t_min < t_max");
  if (segments < 2) throw std::invalid_argument("temperature sweep needs at least 2 segments");
  if (repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
  if (chain.samples < 10) throw std::invalid_argument("Ising sweep needs at least 10 energy samples per chain");
  IsingConfig probe = chain;
  probe.T = t_min;
  probe.validate();
  if (!(delta_target_epsilon > 0.0)) throw std::invalid_argument("delta target epsilon must be > 0");
  if (!(fixed_delta > 0.0)) throw std::invalid_argument("fixed delta_T must be > 0");
  if (!(delta_min > 0.0) || !(delta_max >= delta_min)) throw std::invalid_argument("delta_T bounds must satisfy 0 < min <= max");
  deft.validate();
  fim.validate();
}

Manifest IsingSweepConfig::to_manifest() const {
  Manifest m;
  put_run_header(m, "ising");
  m.set("t_min", t_min);
  m.set("t_max", t_max);
  m.set_size("segments", segments);
  m.set_size("L", chain.L);
  m.set("h_ext", chain.h_ext);
  m.set_size("warmup_sweeps", chain.warmup_sweeps);
  m.set_size("thin_sweeps", chain.thin_sweeps);
  m.set_size("samples", chain.samples);
  m.set("delta_policy", std::string(delta_policy == DeltaTPolicy::kSuggest ? "suggest" : "fixed"));
  m.set("delta_target_epsilon", delta_target_epsilon);
  m.set("fixed_delta", fixed_delta);
  m.set("delta_min", delta_min);
  m.set("delta_max", delta_max);
  m.set_size("repetitions", repetitions);
  m.set("seed", seed);
  m.set("repetition_seeds", repetition_seeds(seed, repetitions));
  put_options(m, "deft", deft);
  put_options(m, "fim", fim);
  m.set_size("threads", threads);
  return m;
}

IsingSweepConfig IsingSweepConfig::from_manifest(const Manifest& m) {
  IsingSweepConfig c;
  c.t_min = m.get_double("t_min");
  c.t_max = m.get_double("t_max");
  c.segments = m.get_size("segments");
  c.chain.L = m.get_size("L");
  c.chain.h_ext = m.get_double("h_ext");
  c.chain.warmup_sweeps = m.get_size("warmup_sweeps");
  c.chain.thin_sweeps = m.get_size("thin_sweeps");
  c.chain.samples = m.get_size("samples");
  const std::string& policy = m.get("delta_policy");
  if (policy == "suggest") {
    c.delta_policy = DeltaTPolicy::kSuggest;
  } else if (policy == "fixed") {
    c.delta_policy = DeltaTPolicy::kFixed;
  } else {
    throw std::invalid_argument("manifest: unknown delta_policy '" + policy + "'");
  }
  c.delta_target_epsilon = m.get_double("delta_target_epsilon");
  c.fixed_delta = m.get_double("fixed_delta");
  c.delta_min = m.get_double("delta_min");
  c.delta_max = m.get_double("delta_max");
  c.repetitions = m.get_size("repetitions");
  c.seed = m.get_u64("seed");
  c.deft = get_deft_options(m, "deft");
  c.fim = get_fim_options(m, "fim");
  c.threads = m.get_size("threads");
  return c;
}

namespace {

struct IsingCell {
  double g_tt = 0.0;
  double heat_capacity = 0.0;
  double ratio = 0.0;
  double epsilon = 0.0;
  double delta_t = 0.0;
};

IsingCell run_cell(const IsingSweepConfig& config, double T, std::uint64_t seed) {
  const double sites = static_cast<double>(config.chain.L * config.chain.L);
  const std::size_t n = config.chain.samples;

  IsingConfig center_cfg = config.chain;
  center_cfg.T = T;
  center_cfg.seed = derive_seed(seed, {0});
  const SampleSet center = ising_sample_energies(center_cfg);

  IsingCell cell;
  cell.heat_capacity = heat_capacity_per_spin(center, T, config.chain.L);

  double delta = config.fixed_delta;
  if (config.delta_policy == DeltaTPolicy::kSuggest) {
    const double pilot = cell.heat_capacity * sites / (T * T);
    delta = pilot > 0.0 ? suggest_delta(pilot, n, config.delta_target_epsilon) : config.delta_max;
    delta = std::clamp(delta, config.delta_min, config.delta_max);
  }
  delta = std::min(delta, 0.5 * T);
  cell.delta_t = delta;

  IsingConfig plus_cfg = config.chain;
  plus_cfg.T = T + delta;
  plus_cfg.seed = derive_seed(seed, {1});
  IsingConfig minus_cfg = config.chain;
  minus_cfg.T = T - delta;
  minus_cfg.seed = derive_seed(seed, {2});
  const ArmSamples arm{"T", delta, ising_sample_energies(plus_cfg), ising_sample_energies(minus_cfg)};

  const EstimatorOptions est{DensityMethod::kDeft, config.deft, {}};
  const Stencil stencil = build_stencil(ParameterPoint{{"T", T}}, center, std::span<const ArmSamples>(&arm, 1), est);
  cell.g_tt = fim_entry(stencil, "T", "T", config.fim);
  cell.epsilon = epsilon_radius(cell.g_tt, delta, n);
  cell.ratio = cell.heat_capacity > 0.0 ? cell.g_tt * T * T / (cell.heat_capacity * sites)
                                        : std::numeric_limits<double>::quiet_NaN();
  return cell;
}

}  // namespace

SweepResult run_ising_sweep(const IsingSweepConfig& config) {
  config.validate();
  const auto temps = config.temperatures();
  const auto seeds = repetition_seeds(config.seed, config.repetitions);
  const std::size_t reps = config.repetitions;

  std::vector<IsingCell> cells(temps.size() * reps);
  parallel_for(cells.size(), config.threads, [&](std::size_t task) {
    const std::size_t ti = task / reps;
    const std::size_t rep = task % reps;
    cells[task] = run_cell(config, temps[ti], derive_seed(seeds[rep], {ti}));
  });

  SweepResult out;
  out.name = "ising_sweep";
  out.coord_names = {"T"};
  out.metric_names = {"g_TT", "C_h", "ratio", "epsilon", "delta_T"};
  out.plot.kind = PlotKind::kLine;
  out.plot.x_coord = 0;
  out.plot.metric = 0;
  out.plot.title = "g_TT of the 2-D Ising energy distribution, L = " + std::to_string(config.chain.L);
  out.plot.x_label = "T";
  out.plot.y_label = "g_TT";
  for (std::size_t ti = 0; ti < temps.size(); ++ti) {
    std::vector<double> g, c, ratio, eps, dt;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const IsingCell& cell = cells[ti * reps + rep];
      g.push_back(cell.g_tt);
      c.push_back(cell.heat_capacity);
      ratio.push_back(cell.ratio);
      eps.push_back(cell.epsilon);
      dt.push_back(cell.delta_t);
    }
    out.rows.push_back({{temps[ti]},
                        {summarize_percentiles(g), summarize_percentiles(c), summarize_finite(ratio),
                         summarize_finite(eps), summarize_percentiles(dt)}});
  }
  return out;
}

}  // namespace fisher
