#include <cmath>
#include <stdexcept>

#include "fisher/experiments.hpp"
#include "fisher/normal.hpp"
#include "fisher/parallel.hpp"
#include "fisher/seeds.hpp"
#include "fisher/stencil.hpp"

namespace fisher {

void put_options(Manifest& m, const std::string& prefix, const DeftOptions& o) {
  m.set(prefix + ".alpha", static_cast<std::uint64_t>(o.alpha));
  m.set_size(prefix + ".num_points", o.num_points);
  m.set(prefix + ".box", o.box.is_auto() ? std::string("auto")
                                         : format_double(o.box.bounds->first) + "," + format_double(o.box.bounds->second));
  m.set_size(prefix + ".homotopy_steps", o.homotopy_steps);
  m.set(prefix + ".newton_tolerance", o.newton_tolerance);
  m.set_size(prefix + ".max_newton_iterations", o.max_newton_iterations);
}

void put_options(Manifest& m, const std::string& prefix, const KdeOptions& o) {
  m.set(prefix + ".bandwidth",
        o.rule == KdeOptions::Rule::kScott ? std::string("scott") : format_double(o.fixed_bandwidth));
}

void put_options(Manifest& m, const std::string& prefix, const FimOptions& o) {
  m.set(prefix + ".scheme", to_string(o.scheme));
  m.set(prefix + ".cutoff", o.cutoff);
  m.set(prefix + ".target_epsilon", o.target_epsilon);
  m.set(prefix + ".too_large_epsilon", o.too_large_epsilon);
}

DeftOptions get_deft_options(const Manifest& m, const std::string& prefix) {
  DeftOptions o;
  o.alpha = static_cast<int>(m.get_u64(prefix + ".alpha"));
  o.num_points = m.get_size(prefix + ".num_points");
  const std::string& box = m.get(prefix + ".box");
  if (box == "auto") {
    o.box = BoxPolicy::automatic();
  } else {
    const auto comma = box.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("manifest: bad box '" + box + "'");
    o.box = BoxPolicy::fixed(parse_double(box.substr(0, comma)), parse_double(box.substr(comma + 1)));
  }
  o.homotopy_steps = m.get_size(prefix + ".homotopy_steps");
  o.newton_tolerance = m.get_double(prefix + ".newton_tolerance");
  o.max_newton_iterations = m.get_size(prefix + ".max_newton_iterations");
  return o;
}

KdeOptions get_kde_options(const Manifest& m, const std::string& prefix) {
  const std::string& bw = m.get(prefix + ".bandwidth");
  if (bw == "scott") return KdeOptions::scott();
  return KdeOptions::fixed(parse_double(bw));
}

FimOptions get_fim_options(const Manifest& m, const std::string& prefix) {
  FimOptions o;
  o.scheme = parse_scheme(m.get(prefix + ".scheme"));
  o.cutoff = m.get_double(prefix + ".cutoff");
  o.target_epsilon = m.get_double(prefix + ".target_epsilon");
  o.too_large_epsilon = m.get_double(prefix + ".too_large_epsilon");
  return o;
}

void put_run_header(Manifest& m, const std::string& experiment) {
  m.set("experiment", experiment);
  m.set("tool_version", tool_version());
  m.set("timestamp", utc_timestamp());
}

std::vector<std::uint64_t> repetition_seeds(std::uint64_t master, std::size_t repetitions) {
  std::vector<std::uint64_t> out(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) out[r] = derive_seed(master, {r});
  return out;
}

namespace {

std::uint64_t combine(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6))); }

struct SigmaStencilSamples {
  double delta = 0.0;
  SampleSet center;
  ArmSamples arm;
};

SigmaStencilSamples draw_sigma_stencil(double mu, double sigma, double delta, std::size_t n, std::uint64_t seed) {
  if (!(delta < sigma)) {
    throw std::invalid_argument("delta_sigma " + format_double(delta) + " must be smaller than sigma " +
                                format_double(sigma));
  }
  SigmaStencilSamples s;
  s.delta = delta;
  s.center = normal_sample({mu, sigma}, n, derive_seed(seed, {0}));
  s.arm = ArmSamples{"sigma", delta, normal_sample({mu, sigma + delta}, n, derive_seed(seed, {1})),
                     normal_sample({mu, sigma - delta}, n, derive_seed(seed, {2}))};
  return s;
}

double estimate_g_sigma(const SigmaStencilSamples& s, double mu, double sigma, const GridSpec& grid,
                        const EstimatorOptions& est, const FimOptions& fim) {
  const Stencil stencil = build_stencil(ParameterPoint{{"mu", mu}, {"sigma", sigma}}, s.center,
                                        std::span<const ArmSamples>(&s.arm, 1), grid, est);
  return fim_entry(stencil, "sigma", "sigma", fim);
}

std::uint64_t stencil_hash(const SigmaStencilSamples& s) {
  return combine(combine(s.center.content_hash(), s.arm.plus.content_hash()), s.arm.minus.content_hash());
}

void check_common(std::size_t samples, std::size_t reps) {
  if (samples == 0) throw std::invalid_argument("sample count N must be >= 1");
  if (reps == 0) throw std::invalid_argument("repetitions must be >= 1");
}

}  // namespace

// ---------------------------------------------------------------------------

NormalComparisonConfig NormalComparisonConfig::paper_scale() {
  NormalComparisonConfig c;
  c.sigmas = {0.5, 1.0, 2.0, 5.0, 10.0};
  c.repetitions = 100;
  return c;
}

void NormalComparisonConfig::validate() const {
  check_common(samples, repetitions);
  if (sigmas.empty()) throw std::invalid_argument("sigma list is empty");
  for (double s : sigmas)
    if (!(s > 0.0)) throw std::invalid_argument("sigma values must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  deft.validate();
  kde.validate();
  deft_fim.validate();
  kde_fim.validate();
}

Manifest NormalComparisonConfig::to_manifest() const {
  Manifest m;
  put_run_header(m, "bench-normal");
  m.set("sigmas", sigmas);
  m.set("mu", mu);
  m.set_size("samples", samples);
  m.set("epsilon", epsilon);
  m.set_size("repetitions", repetitions);
  m.set("seed", seed);
  m.set("repetition_seeds", repetition_seeds(seed, repetitions));
  put_options(m, "deft", deft);
  put_options(m, "kde", kde);
  put_options(m, "deft_fim", deft_fim);
  put_options(m, "kde_fim", kde_fim);
  m.set_size("threads", threads);
  return m;
}

NormalComparisonConfig NormalComparisonConfig::from_manifest(const Manifest& m) {
  NormalComparisonConfig c;
  c.sigmas = m.get_doubles("sigmas");
  c.mu = m.get_double("mu");
  c.samples = m.get_size("samples");
  c.epsilon = m.get_double("epsilon");
  c.repetitions = m.get_size("repetitions");
  c.seed = m.get_u64("seed");
  c.deft = get_deft_options(m, "deft");
  c.kde = get_kde_options(m, "kde");
  c.deft_fim = get_fim_options(m, "deft_fim");
  c.kde_fim = get_fim_options(m, "kde_fim");
  c.threads = m.get_size("threads");
  return c;
}

NormalComparisonResult run_normal_comparison(const NormalComparisonConfig& config) {
  config.validate();
  const auto seeds = repetition_seeds(config.seed, config.repetitions);
  const std::size_t ns = config.sigmas.size();
  const std::size_t reps = config.repetitions;

  EstimatorOptions deft_est{DensityMethod::kDeft, config.deft, {}};
  EstimatorOptions kde_est{DensityMethod::kKde, config.deft, config.kde};

  struct Cell {
    double deft_fi = 0.0;
    double kde_fi = 0.0;
    std::uint64_t deft_hash = 0;
    std::uint64_t kde_hash = 0;
  };
  std::vector<Cell> cells(ns * reps);
  parallel_for(ns * reps, config.threads, [&](std::size_t task) {
    const std::size_t si = task / reps;
    const std::size_t rep = task % reps;
    const double sigma = config.sigmas[si];
    const double g = 2.0 / (sigma * sigma);
    const double delta = suggest_delta(g, config.samples, config.epsilon);
    const auto samples = draw_sigma_stencil(config.mu, sigma, delta, config.samples, derive_seed(seeds[rep], {si}));
    const GridSpec grid = shared_grid(samples.center, std::span<const ArmSamples>(&samples.arm, 1), deft_est);
    Cell& cell = cells[task];
    cell.deft_hash = stencil_hash(samples);
    cell.deft_fi = estimate_g_sigma(samples, config.mu, sigma, grid, deft_est, config.deft_fim);
    cell.kde_hash = stencil_hash(samples);
    cell.kde_fi = estimate_g_sigma(samples, config.mu, sigma, grid, kde_est, config.kde_fim);
  });

  NormalComparisonResult out;
  auto init = [&](SweepResult& r, const std::string& name, const std::string& label) {
    r.name = name;
    r.coord_names = {"sigma", "delta_sigma", "g_analytic"};
    r.metric_names = {"fi", "rel_error"};
    r.plot.kind = PlotKind::kLine;
    r.plot.x_coord = 0;
    r.plot.metric = 0;
    r.plot.log_x = true;
    r.plot.log_y = true;
    r.plot.title = "g_sigma_sigma estimate, " + label + " (median, 5-95 percentile band)";
    r.plot.x_label = "sigma";
    r.plot.y_label = "Fisher information g_sigma_sigma";
  };
  init(out.deft, "normal_deft", "DEFT");
  init(out.kde, "normal_kde", "Gaussian KDE");

  for (std::size_t si = 0; si < ns; ++si) {
    const double sigma = config.sigmas[si];
    const double g = 2.0 / (sigma * sigma);
    const double delta = suggest_delta(g, config.samples, config.epsilon);
    std::vector<double> dfi, drel, kfi, krel;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const Cell& c = cells[si * reps + rep];
      dfi.push_back(c.deft_fi);
      drel.push_back((g - c.deft_fi) / g);
      kfi.push_back(c.kde_fi);
      krel.push_back((g - c.kde_fi) / g);
      out.audit.push_back({sigma, rep, c.deft_hash, c.kde_hash});
    }
    out.deft.rows.push_back({{sigma, delta, g}, {summarize_percentiles(dfi), summarize_percentiles(drel)}});
    out.kde.rows.push_back({{sigma, delta, g}, {summarize_percentiles(kfi), summarize_percentiles(krel)}});
  }
  return out;
}

// ---------------------------------------------------------------------------

EpsilonSweepConfig EpsilonSweepConfig::paper_scale() {
  EpsilonSweepConfig c;
  c.sigmas = {0.5, 1.0, 2.0, 5.0, 10.0};
  c.repetitions = 100;
  return c;
}

void EpsilonSweepConfig::validate() const {
  check_common(samples, repetitions);
  if (sigmas.empty()) throw std::invalid_argument("sigma list is empty");
  if (epsilons.empty()) throw std::invalid_argument("epsilon grid is empty");
  for (double s : sigmas)
    if (!(s > 0.0)) throw std::invalid_argument("sigma values must be > 0");
  for (double e : epsilons)
    if (!(e > 0.0)) throw std::invalid_argument("epsilon grid entries must be > 0 (got " + format_double(e) + ")");
  deft.validate();
  fim.validate();
}

Manifest EpsilonSweepConfig::to_manifest() const {
  Manifest m;
  put_run_header(m, "sweep-eps");
  m.set("sigmas", sigmas);
  m.set("epsilons", epsilons);
  m.set_size("samples", samples);
  m.set_size("repetitions", repetitions);
  m.set("seed", seed);
  m.set("repetition_seeds", repetition_seeds(seed, repetitions));
  put_options(m, "deft", deft);
  put_options(m, "fim", fim);
  m.set_size("threads", threads);
  return m;
}

EpsilonSweepConfig EpsilonSweepConfig::from_manifest(const Manifest& m) {
  EpsilonSweepConfig c;
  c.sigmas = m.get_doubles("sigmas");
  c.epsilons = m.get_doubles("epsilons");
  c.samples = m.get_size("samples");
  c.repetitions = m.get_size("repetitions");
  c.seed = m.get_u64("seed");
  c.deft = get_deft_options(m, "deft");
  c.fim = get_fim_options(m, "fim");
  c.threads = m.get_size("threads");
  return c;
}

SweepResult run_epsilon_sweep(const EpsilonSweepConfig& config) {
  config.validate();
  const auto seeds = repetition_seeds(config.seed, config.repetitions);
  const std::size_t ns = config.sigmas.size();
  const std::size_t ne = config.epsilons.size();
  const std::size_t reps = config.repetitions;
  const EstimatorOptions est{DensityMethod::kDeft, config.deft, {}};

  std::vector<double> fi(ns * ne * reps);
  parallel_for(fi.size(), config.threads, [&](std::size_t task) {
    const std::size_t cell = task / reps;
    const std::size_t rep = task % reps;
    const std::size_t si = cell / ne;
    const std::size_t ei = cell % ne;
    const double sigma = config.sigmas[si];
    const double delta = suggest_delta(2.0 / (sigma * sigma), config.samples, config.epsilons[ei]);
    // Common random numbers along the epsilon axis.
    const auto samples = draw_sigma_stencil(0.0, sigma, delta, config.samples, derive_seed(seeds[rep], {si}));
    const GridSpec grid = shared_grid(samples.center, std::span<const ArmSamples>(&samples.arm, 1), est);
    fi[task] = estimate_g_sigma(samples, 0.0, sigma, grid, est, config.fim);
  });

  SweepResult out;
  out.name = "epsilon_sweep";
  out.coord_names = {"sigma", "epsilon", "delta_sigma"};
  out.metric_names = {"rel_error", "abs_rel_error", "fi"};
  out.plot.kind = PlotKind::kLine;
  out.plot.x_coord = 1;
  out.plot.series_coord = 0;
  out.plot.has_series = true;
  out.plot.metric = 0;
  out.plot.log_x = true;
  out.plot.title = "Relative error (g - FI) / g versus epsilon";
  out.plot.x_label = "epsilon";
  out.plot.y_label = "relative error";
  for (std::size_t si = 0; si < ns; ++si) {
    const double sigma = config.sigmas[si];
    const double g = 2.0 / (sigma * sigma);
    for (std::size_t ei = 0; ei < ne; ++ei) {
      std::vector<double> rel, abs_rel, vals;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const double v = fi[(si * ne + ei) * reps + rep];
        vals.push_back(v);
        rel.push_back((g - v) / g);
        abs_rel.push_back(std::abs((g - v) / g));
      }
      const double delta = suggest_delta(g, config.samples, config.epsilons[ei]);
      out.rows.push_back({{sigma, config.epsilons[ei], delta},
                          {summarize_percentiles(rel), summarize_percentiles(abs_rel), summarize_percentiles(vals)}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

HeatmapConfig HeatmapConfig::paper_scale() {
  HeatmapConfig c;
  c.repetitions = 100;
  return c;
}

void HeatmapConfig::validate() const {
  if (repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
  if (sample_counts.empty() || deltas.empty()) throw std::invalid_argument("heat map grids must be nonempty");
  for (double n : sample_counts)
    if (!(n >= 1.0) || n != std::floor(n)) throw std::invalid_argument("sample counts must be positive integers");
  for (double d : deltas)
    if (!(d > 0.0 && d < sigma)) throw std::invalid_argument("delta_sigma values must lie in (0, sigma)");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(contour_epsilon > 0.0)) throw std::invalid_argument("contour epsilon must be > 0");
  deft.validate();
  fim.validate();
}

Manifest HeatmapConfig::to_manifest() const {
  Manifest m;
  put_run_header(m, "heatmap");
  m.set("sample_counts", sample_counts);
  m.set("deltas", deltas);
  m.set("sigma", sigma);
  m.set_size("repetitions", repetitions);
  m.set("seed", seed);
  m.set("repetition_seeds", repetition_seeds(seed, repetitions));
  put_options(m, "deft", deft);
  put_options(m, "fim", fim);
  m.set("contour_epsilon", contour_epsilon);
  m.set("reference_delta", reference_delta);
  m.set_size("threads", threads);
  return m;
}

HeatmapConfig HeatmapConfig::from_manifest(const Manifest& m) {
  HeatmapConfig c;
  c.sample_counts = m.get_doubles("sample_counts");
  c.deltas = m.get_doubles("deltas");
  c.sigma = m.get_double("sigma");
  c.repetitions = m.get_size("repetitions");
  c.seed = m.get_u64("seed");
  c.deft = get_deft_options(m, "deft");
  c.fim = get_fim_options(m, "fim");
  c.contour_epsilon = m.get_double("contour_epsilon");
  c.reference_delta = m.get_double("reference_delta");
  c.threads = m.get_size("threads");
  return c;
}

SweepResult run_n_delta_heatmap(const HeatmapConfig& config) {
  config.validate();
  const auto seeds = repetition_seeds(config.seed, config.repetitions);
  const std::size_t nn = config.sample_counts.size();
  const std::size_t nd = config.deltas.size();
  const std::size_t reps = config.repetitions;
  const double sigma = config.sigma;
  const double g = 2.0 / (sigma * sigma);
  const EstimatorOptions est{DensityMethod::kDeft, config.deft, {}};

  std::vector<double> fi(nn * nd * reps);
  parallel_for(fi.size(), config.threads, [&](std::size_t task) {
    const std::size_t cell = task / reps;
    const std::size_t rep = task % reps;
    const std::size_t ni = cell / nd;
    const std::size_t di = cell % nd;
    const auto n = static_cast<std::size_t>(config.sample_counts[ni]);
    // Common random numbers along the delta axis.
    const auto samples = draw_sigma_stencil(0.0, sigma, config.deltas[di], n, derive_seed(seeds[rep], {ni}));
    const GridSpec grid = shared_grid(samples.center, std::span<const ArmSamples>(&samples.arm, 1), est);
    fi[task] = estimate_g_sigma(samples, 0.0, sigma, grid, est, config.fim);
  });

  SweepResult out;
  out.name = "n_delta_heatmap";
  out.coord_names = {"N", "delta_sigma", "epsilon", "eps_contour_line", "delta_ref_line"};
  out.metric_names = {"abs_rel_error", "rel_error"};
  out.plot.kind = PlotKind::kHeatMap;
  out.plot.x_coord = 0;
  out.plot.y_coord = 1;
  out.plot.metric = 0;
  out.plot.title = "|relative error| of g_sigma_sigma, sigma = " + format_double(sigma);
  out.plot.x_label = "N";
  out.plot.y_label = "delta_sigma";
  for (std::size_t ni = 0; ni < nn; ++ni) {
    const auto n = static_cast<std::size_t>(config.sample_counts[ni]);
    const double contour = suggest_delta(g, n, config.contour_epsilon);
    for (std::size_t di = 0; di < nd; ++di) {
      std::vector<double> rel, abs_rel;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const double v = fi[(ni * nd + di) * reps + rep];
        rel.push_back((g - v) / g);
        abs_rel.push_back(std::abs((g - v) / g));
      }
      const double eps = epsilon_radius(g, config.deltas[di], n);
      out.rows.push_back({{config.sample_counts[ni], config.deltas[di], eps, contour, config.reference_delta},
                          {summarize_percentiles(abs_rel), summarize_percentiles(rel)}});
    }
  }
  return out;
}

}  // namespace fisher
