#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>

#include "fisher/calibrate.hpp"
#include "fisher/experiments.hpp"
#include "fisher/normal.hpp"
#include "fisher/outputs.hpp"
#include "fisher/sample_io.hpp"
#include "fisher/stencil.hpp"
#include "fisher/svg_plot.hpp"

namespace fisher::cli {
namespace {

namespace fs = std::filesystem;

// Integer flags go through parse_u64 so counts like 1e4 are accepted.
template <class T>
CLI::Option* add_integer(CLI::App* app, const std::string& name, T& target, const std::string& desc) {
  return app
      ->add_option_function<std::string>(
          name,
          [&target, name](const std::string& text) {
            try {
              target = static_cast<T>(parse_u64(text));
            } catch (const std::exception&) {
              throw CLI::ValidationError(name, "expected a non-negative integer, got '" + text + "'");
            }
          },
          desc)
      ->default_str(std::to_string(target))
      ->type_name("UINT");
}

BoxPolicy parse_box(const std::string& text) {
  if (text == "auto") return BoxPolicy::automatic();
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("box must be 'auto' or 'lower,upper' (got '" + text + "')");
  const double lo = parse_double(text.substr(0, comma));
  const double hi = parse_double(text.substr(comma + 1));
  if (!(hi > lo)) throw std::invalid_argument("box must satisfy upper > lower (got '" + text + "')");
  return BoxPolicy::fixed(lo, hi);
}

std::string box_text(const BoxPolicy& box) {
  return box.is_auto() ? "auto" : format_double(box.bounds->first) + "," + format_double(box.bounds->second);
}

KdeOptions parse_bandwidth(const std::string& text) {
  if (text == "scott") return KdeOptions::scott();
  KdeOptions o = KdeOptions::fixed(parse_double(text));
  o.validate();
  return o;
}

DensityMethod parse_method(const std::string& text) {
  if (text == "deft") return DensityMethod::kDeft;
  if (text == "kde") return DensityMethod::kKde;
  throw std::invalid_argument("method must be 'deft' or 'kde' (got '" + text + "')");
}

// Flags shared by everything that fits densities.
struct DeftFlags {
  DeftOptions* target = nullptr;
  std::string box;

  void attach(CLI::App* app, DeftOptions& o) {
    target = &o;
    box = box_text(o.box);
    add_integer(app, "--points", o.num_points, "grid cells G");
    add_integer(app, "--alpha", o.alpha, "DEFT smoothness order (derivative penalized by the prior)");
    app->add_option("--box", box, "bounding box: 'auto' (twice the sample range) or 'lower,upper' in observable units")
        ->capture_default_str();
    add_integer(app, "--homotopy-steps", o.homotopy_steps, "DEFT length scales scanned (log-spaced, grid spacing to box width)");
    app->add_option("--newton-tol", o.newton_tolerance, "DEFT Newton tolerance (field sup-norm of the step, or predicted decrease of the action in nats)")->capture_default_str();
  }
  void apply() const { target->box = parse_box(box); }
};

struct SchemeFlag {
  FimOptions* target = nullptr;
  std::string scheme;

  void attach(CLI::App* app, const std::string& name, FimOptions& o, const std::string& what) {
    target = &o;
    scheme = to_string(o.scheme);
    app->add_option(name, scheme, "finite-difference scheme for " + what + ": density_diff or log_diff")
        ->capture_default_str();
  }
  void apply() const { target->scheme = parse_scheme(scheme); }
};

void put_estimator(Manifest& m, const EstimatorOptions& est) {
  m.set("method", to_string(est.method));
  put_options(m, "deft", est.deft);
  put_options(m, "kde", est.kde);
}

EstimatorOptions get_estimator(const Manifest& m) {
  EstimatorOptions est;
  const std::string& method = m.get("method");
  if (method == to_string(DensityMethod::kDeft)) {
    est.method = DensityMethod::kDeft;
  } else if (method == to_string(DensityMethod::kKde)) {
    est.method = DensityMethod::kKde;
  } else {
    throw std::invalid_argument("manifest: unknown method '" + method + "'");
  }
  est.deft = get_deft_options(m, "deft");
  est.kde = get_kde_options(m, "kde");
  est.deft.validate();
  est.kde.validate();
  return est;
}

std::string absolute_path(const std::string& p) { return fs::absolute(fs::path(p)).lexically_normal().string(); }

void prepare_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

// ---------------------------------------------------------------------------
// Executors, one per experiment name.

void execute_density(Manifest m, const fs::path& dir, std::ostream& out) {
  const EstimatorOptions est = get_estimator(m);
  const SampleSet samples = read_samples(m.get("input"));
  const GridSpec grid = make_grid(samples, est.deft.box, est.deft.num_points);
  const DensityEstimate q = fit_density(samples, grid, est);

  prepare_directory(dir);
  {
    auto f = open_output(dir / "density.csv");
    write_density_csv(f, q);
  }
  LinePlot plot{"Density estimate (" + to_string(q.method) + ")", "x", "q(x)", false, false, {}};
  plot.series.push_back({to_string(q.method), grid.centers(), q.values, {}, {}});
  open_output(dir / "density.svg") << render_line_plot(plot);
  m.write(dir / "manifest.txt");

  out << "method " << to_string(q.method) << ", N = " << q.sample_count << ", grid [" << format_double(grid.lower)
      << ", " << format_double(grid.upper) << "] with " << grid.num_points << " cells\n";
  if (q.length_scale) out << "length scale l* = " << format_double(*q.length_scale) << '\n';
  if (q.bandwidth) out << "bandwidth h = " << format_double(*q.bandwidth) << '\n';
  out << "integral = " << format_double(integrate(q.values, grid)) << '\n';
  out << "wrote " << (dir / "density.csv").string() << '\n';
}

void execute_fisher(Manifest m, const fs::path& dir, std::ostream& out) {
  const EstimatorOptions est = get_estimator(m);
  const FimOptions fim = get_fim_options(m, "fim");
  fim.validate();
  const std::size_t d = m.get_size("params");
  if (d == 0) throw std::invalid_argument("fisher: at least one parameter is required");

  std::vector<std::pair<std::string, double>> coords;
  std::vector<ArmSamples> arms;
  for (std::size_t i = 0; i < d; ++i) {
    const std::string key = "param." + std::to_string(i);
    const std::string name = m.get(key + ".name");
    coords.emplace_back(name, m.get_double(key + ".value"));
    arms.push_back({name, m.get_double(key + ".delta"), read_samples(m.get(key + ".plus")),
                    read_samples(m.get(key + ".minus"))});
  }
  const SampleSet center = read_samples(m.get("center"));
  const Stencil stencil = build_stencil(ParameterPoint(coords), center, arms, est);
  const FimEstimate g = fim_matrix(stencil, fim);

  prepare_directory(dir);
  {
    auto f = open_output(dir / "fim.csv");
    write_fim_csv(f, g);
  }
  m.write(dir / "manifest.txt");
  write_fim_csv(out, g);
  out << "wrote " << (dir / "fim.csv").string() << '\n';
}

void write_calibration_csv(const fs::path& path, const std::vector<CalibrationStep>& history) {
  auto f = open_output(path);
  f << "iteration,delta,g,epsilon\n";
  for (const auto& s : history) {
    f << s.iteration << ',' << format_double(s.delta) << ',' << format_double(s.g) << ',' << format_double(s.epsilon)
      << '\n';
  }
}

void execute_calibrate(Manifest m, const fs::path& dir, std::ostream& out) {
  const std::string model = m.get("model");
  if (model != "normal") throw std::invalid_argument("calibrate: unknown model '" + model + "'");
  const NormalParams params{m.get_double("mu"), m.get_double("sigma")};
  params.validate();
  const std::string param = m.get("param");

  CalibrationOptions opts;
  opts.samples = m.get_size("samples");
  opts.target_epsilon = m.get_double("target_epsilon");
  opts.initial_delta = m.get_double("initial_delta");
  opts.max_iterations = m.get_size("max_iterations");
  opts.max_growth = m.get_double("max_growth");
  opts.seed = m.get_u64("seed");
  opts.fim = get_fim_options(m, "fim");
  opts.estimator = get_estimator(m);

  prepare_directory(dir);
  m.write(dir / "manifest.txt");
  try {
    const CalibrationRecord rec =
        calibrate_delta(normal_parametric_sample, ParameterPoint{{"mu", params.mu}, {"sigma", params.sigma}}, param, opts);
    write_calibration_csv(dir / "calibration.csv", rec.history);
    out << "iterations " << rec.history.size() << ", delta = " << format_double(rec.delta)
        << ", epsilon = " << format_double(rec.epsilon) << ", g = " << format_double(rec.history.back().g) << '\n';
  } catch (const CalibrationError& e) {
    write_calibration_csv(dir / "calibration.csv", e.history());
    throw;
  }
  out << "wrote " << (dir / "calibration.csv").string() << '\n';
}

void report(const std::vector<fs::path>& written, std::ostream& out) {
  for (const auto& p : written) out << "wrote " << p.string() << '\n';
}

void execute_bench_normal(Manifest m, const fs::path& dir, std::ostream& out) {
  const auto config = NormalComparisonConfig::from_manifest(m);
  const auto result = run_normal_comparison(config);
  std::vector<std::uint64_t> deft_hashes, kde_hashes;
  for (const auto& a : result.audit) {
    deft_hashes.push_back(a.deft_hash);
    kde_hashes.push_back(a.kde_hash);
  }
  m.set("audit.deft_sample_hashes", deft_hashes);
  m.set("audit.kde_sample_hashes", kde_hashes);
  const std::vector<SweepResult> tables{result.deft, result.kde};
  report(write_outputs(tables, m, dir), out);
}

void execute_sweep_eps(const Manifest& m, const fs::path& dir, std::ostream& out) {
  const std::vector<SweepResult> tables{run_epsilon_sweep(EpsilonSweepConfig::from_manifest(m))};
  report(write_outputs(tables, m, dir), out);
}

void execute_heatmap(const Manifest& m, const fs::path& dir, std::ostream& out) {
  const std::vector<SweepResult> tables{run_n_delta_heatmap(HeatmapConfig::from_manifest(m))};
  report(write_outputs(tables, m, dir), out);
}

void execute_ising(const Manifest& m, const fs::path& dir, std::ostream& out) {
  const std::vector<SweepResult> tables{run_ising_sweep(IsingSweepConfig::from_manifest(m))};
  report(write_outputs(tables, m, dir), out);
}

// ---------------------------------------------------------------------------
// Command-line layer: flags -> manifest.

struct DensityCommand {
  std::string input;
  std::string method = "deft";
  std::string bandwidth = "scott";
  EstimatorOptions est;
  DeftFlags deft;

  void attach(CLI::App* app) {
    app->add_option("--input,-i", input, "sample file, one value per line ('#' comments allowed)")->required();
    app->add_option("--method", method, "estimator: deft or kde")->capture_default_str();
    deft.attach(app, est.deft);
    app->add_option("--bandwidth", bandwidth, "KDE bandwidth: 'scott' or a fixed width in observable units")
        ->capture_default_str();
  }
  Manifest manifest() {
    deft.apply();
    est.method = parse_method(method);
    est.kde = parse_bandwidth(bandwidth);
    est.deft.validate();
    Manifest m;
    put_run_header(m, "density");
    m.set("input", absolute_path(input));
    put_estimator(m, est);
    return m;
  }
};

struct FisherCommand {
  std::string center;
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> deltas;
  std::vector<std::string> plus;
  std::vector<std::string> minus;
  std::string method = "deft";
  std::string bandwidth = "scott";
  EstimatorOptions est;
  FimOptions fim;
  DeftFlags deft;
  SchemeFlag scheme;

  void attach(CLI::App* app) {
    app->add_option("--center", center, "sample file drawn at theta")->required();
    app->add_option("--param", names, "parameter name; repeat once per displaced parameter")->required();
    app->add_option("--value", values, "parameter value at theta (model units), one per --param; default 0");
    app->add_option("--delta", deltas, "step delta > 0 (model units), one per --param")->required();
    app->add_option("--plus", plus, "sample file drawn at theta + delta, one per --param")->required();
    app->add_option("--minus", minus, "sample file drawn at theta - delta, one per --param")->required();
    app->add_option("--method", method, "estimator: deft or kde")->capture_default_str();
    deft.attach(app, est.deft);
    app->add_option("--bandwidth", bandwidth, "KDE bandwidth: 'scott' or a fixed width in observable units")
        ->capture_default_str();
    scheme.attach(app, "--scheme", fim, "the FIM integrand");
    app->add_option("--cutoff", fim.cutoff, "density cutoff p_min in [1e-20, 1e-2] (density units)")
        ->capture_default_str();
    app->add_option("--eps-target", fim.target_epsilon, "target epsilon radius (dimensionless)")->capture_default_str();
  }
  Manifest manifest() {
    deft.apply();
    scheme.apply();
    est.method = parse_method(method);
    est.kde = parse_bandwidth(bandwidth);
    est.deft.validate();
    fim.validate();
    const std::size_t d = names.size();
    if (deltas.size() != d || plus.size() != d || minus.size() != d) {
      throw CLI::ValidationError("--param", "--delta, --plus and --minus must each be given once per --param");
    }
    if (!values.empty() && values.size() != d) {
      throw CLI::ValidationError("--value", "give --value once per --param or not at all");
    }
    Manifest m;
    put_run_header(m, "fisher");
    m.set("center", absolute_path(center));
    m.set_size("params", d);
    for (std::size_t i = 0; i < d; ++i) {
      const std::string key = "param." + std::to_string(i);
      m.set(key + ".name", names[i]);
      m.set(key + ".value", values.empty() ? 0.0 : values[i]);
      m.set(key + ".delta", deltas[i]);
      m.set(key + ".plus", absolute_path(plus[i]));
      m.set(key + ".minus", absolute_path(minus[i]));
    }
    put_estimator(m, est);
    put_options(m, "fim", fim);
    return m;
  }
};

struct CalibrateCommand {
  std::string model = "normal";
  double mu = 0.0;
  double sigma = 1.0;
  std::string param = "sigma";
  std::string method = "deft";
  std::string bandwidth = "scott";
  CalibrationOptions opts;
  DeftFlags deft;
  SchemeFlag scheme;

  CalibrateCommand() { opts.seed = 20160105; }

  void attach(CLI::App* app) {
    app->add_option("--model", model, "built-in sampler: normal")->capture_default_str();
    app->add_option("--mu", mu, "normal location at theta")->capture_default_str();
    app->add_option("--sigma", sigma, "normal scale at theta (> 0)")->capture_default_str();
    app->add_option("--param", param, "parameter to calibrate: mu or sigma")->capture_default_str();
    add_integer(app, "--samples", opts.samples, "samples N per stencil density");
    app->add_option("--eps-target", opts.target_epsilon, "target epsilon radius (dimensionless)")->capture_default_str();
    app->add_option("--initial-delta", opts.initial_delta, "first step delta (model units)")->capture_default_str();
    add_integer(app, "--max-iters", opts.max_iterations, "iterations before giving up");
    app->add_option("--max-growth", opts.max_growth, "cap on the per-iteration growth factor of delta")
        ->capture_default_str();
    add_integer(app, "--seed", opts.seed, "master seed");
    app->add_option("--method", method, "estimator: deft or kde")->capture_default_str();
    deft.attach(app, opts.estimator.deft);
    app->add_option("--bandwidth", bandwidth, "KDE bandwidth: 'scott' or a fixed width in observable units")
        ->capture_default_str();
    scheme.attach(app, "--scheme", opts.fim, "the FIM integrand");
    app->add_option("--cutoff", opts.fim.cutoff, "density cutoff p_min in [1e-20, 1e-2] (density units)")
        ->capture_default_str();
  }
  Manifest manifest() {
    deft.apply();
    scheme.apply();
    opts.estimator.method = parse_method(method);
    opts.estimator.kde = parse_bandwidth(bandwidth);
    opts.estimator.deft.validate();
    opts.fim.validate();
    if (param != "mu" && param != "sigma") throw CLI::ValidationError("--param", "must be mu or sigma");
    Manifest m;
    put_run_header(m, "calibrate");
    m.set("model", model);
    m.set("mu", mu);
    m.set("sigma", sigma);
    m.set("param", param);
    m.set_size("samples", opts.samples);
    m.set("target_epsilon", opts.target_epsilon);
    m.set("initial_delta", opts.initial_delta);
    m.set_size("max_iterations", opts.max_iterations);
    m.set("max_growth", opts.max_growth);
    m.set("seed", opts.seed);
    put_estimator(m, opts.estimator);
    put_options(m, "fim", opts.fim);
    return m;
  }
};

struct BenchNormalCommand {
  NormalComparisonConfig config;
  bool paper_scale = false;
  std::string bandwidth = "scott";
  DeftFlags deft;
  SchemeFlag deft_scheme;
  SchemeFlag kde_scheme;
  double cutoff = FimOptions{}.cutoff;

  void attach(CLI::App* app) {
    app->add_flag("--paper-scale", paper_scale, "published settings: sigma in {0.5,1,2,5,10}, 100 repetitions");
    app->add_option("--sigmas", config.sigmas, "scale values sigma, comma-separated")->delimiter(',')->capture_default_str();
    app->add_option("--mu", config.mu, "normal location")->capture_default_str();
    add_integer(app, "--samples", config.samples, "samples N per stencil density");
    app->add_option("--eps", config.epsilon, "epsilon radius fixing delta_sigma = sigma / (eps sqrt N)")
        ->capture_default_str();
    add_integer(app, "--reps", config.repetitions, "repetitions per sigma");
    add_integer(app, "--seed", config.seed, "master seed");
    deft.attach(app, config.deft);
    app->add_option("--bandwidth", bandwidth, "KDE bandwidth: 'scott' or a fixed width in observable units")
        ->capture_default_str();
    deft_scheme.attach(app, "--deft-scheme", config.deft_fim, "DEFT densities");
    kde_scheme.attach(app, "--kde-scheme", config.kde_fim, "KDE densities");
    app->add_option("--cutoff", cutoff, "density cutoff p_min in [1e-20, 1e-2] (density units), both methods")
        ->capture_default_str();
    add_integer(app, "--threads", config.threads, "worker threads (0 = all cores)");
  }
  void reset() { config = NormalComparisonConfig::paper_scale(); }
  Manifest manifest() {
    deft.apply();
    deft_scheme.apply();
    kde_scheme.apply();
    config.kde = parse_bandwidth(bandwidth);
    config.deft_fim.cutoff = cutoff;
    config.kde_fim.cutoff = cutoff;
    config.validate();
    return config.to_manifest();
  }
};

struct SweepEpsCommand {
  EpsilonSweepConfig config;
  bool paper_scale = false;
  DeftFlags deft;
  SchemeFlag scheme;

  void attach(CLI::App* app) {
    app->add_flag("--paper-scale", paper_scale, "published settings: 100 repetitions");
    app->add_option("--sigmas", config.sigmas, "scale values sigma, comma-separated")->delimiter(',')->capture_default_str();
    app->add_option("--eps-grid", config.epsilons, "epsilon values (dimensionless, > 0), comma-separated")
        ->delimiter(',')
        ->capture_default_str();
    add_integer(app, "--samples", config.samples, "samples N per stencil density");
    add_integer(app, "--reps", config.repetitions, "repetitions per (sigma, eps) cell");
    add_integer(app, "--seed", config.seed, "master seed");
    deft.attach(app, config.deft);
    scheme.attach(app, "--scheme", config.fim, "the FIM integrand");
    app->add_option("--cutoff", config.fim.cutoff, "density cutoff p_min in [1e-20, 1e-2] (density units)")
        ->capture_default_str();
    add_integer(app, "--threads", config.threads, "worker threads (0 = all cores)");
  }
  void reset() { config = EpsilonSweepConfig::paper_scale(); }
  Manifest manifest() {
    deft.apply();
    scheme.apply();
    config.validate();
    return config.to_manifest();
  }
};

struct HeatmapCommand {
  HeatmapConfig config;
  bool paper_scale = false;
  DeftFlags deft;
  SchemeFlag scheme;

  void attach(CLI::App* app) {
    app->add_flag("--paper-scale", paper_scale, "published settings: 100 repetitions");
    app->add_option("--samples-grid", config.sample_counts, "sample counts N, comma-separated")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--deltas", config.deltas, "steps delta_sigma (model units), comma-separated")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--sigma", config.sigma, "normal scale sigma")->capture_default_str();
    add_integer(app, "--reps", config.repetitions, "repetitions per (N, delta) cell");
    add_integer(app, "--seed", config.seed, "master seed");
    app->add_option("--contour-eps", config.contour_epsilon, "epsilon of the reference contour sigma / (eps sqrt N)")
        ->capture_default_str();
    app->add_option("--reference-delta", config.reference_delta, "horizontal reference line (model units)")
        ->capture_default_str();
    deft.attach(app, config.deft);
    scheme.attach(app, "--scheme", config.fim, "the FIM integrand");
    app->add_option("--cutoff", config.fim.cutoff, "density cutoff p_min in [1e-20, 1e-2] (density units)")
        ->capture_default_str();
    add_integer(app, "--threads", config.threads, "worker threads (0 = all cores)");
  }
  void reset() { config = HeatmapConfig::paper_scale(); }
  Manifest manifest() {
    deft.apply();
    scheme.apply();
    config.validate();
    return config.to_manifest();
  }
};

struct IsingCommand {
  IsingSweepConfig config;
  bool paper_scale = false;
  std::string policy = "suggest";
  DeftFlags deft;
  SchemeFlag scheme;

  void attach(CLI::App* app) {
    app->add_flag("--paper-scale", paper_scale,
                  "published settings: L = 25, 200 segments, N = 15000, 8000 warmup sweeps, 5 repetitions");
    add_integer(app, "--L", config.chain.L, "lattice side (spins)");
    app->add_option("--t-min", config.t_min, "lowest temperature (J / k_B)")->capture_default_str();
    app->add_option("--t-max", config.t_max, "highest temperature (J / k_B)")->capture_default_str();
    add_integer(app, "--segments", config.segments, "temperature segments (segments + 1 points)");
    add_integer(app, "--samples", config.chain.samples, "energy samples N per chain");
    add_integer(app, "--warmup", config.chain.warmup_sweeps, "warmup sweeps (L^2 proposals each)");
    add_integer(app, "--thin", config.chain.thin_sweeps, "sweeps between recorded samples");
    app->add_option("--delta-policy", policy, "delta_T rule: suggest (from a pilot C_h) or fixed")
        ->capture_default_str();
    app->add_option("--delta-t", config.fixed_delta, "fixed delta_T (J / k_B)")->capture_default_str();
    app->add_option("--delta-eps", config.delta_target_epsilon, "target epsilon for the suggest policy")
        ->capture_default_str();
    app->add_option("--delta-min", config.delta_min, "lower clamp on suggested delta_T (J / k_B)")
        ->capture_default_str();
    app->add_option("--delta-max", config.delta_max, "upper clamp on suggested delta_T (J / k_B)")
        ->capture_default_str();
    add_integer(app, "--reps", config.repetitions, "repetitions per temperature");
    add_integer(app, "--seed", config.seed, "master seed");
    deft.attach(app, config.deft);
    scheme.attach(app, "--scheme", config.fim, "the FIM integrand");
    app->add_option("--cutoff", config.fim.cutoff, "density cutoff p_min in [1e-20, 1e-2] (density units)")
        ->capture_default_str();
    add_integer(app, "--threads", config.threads, "worker threads (0 = all cores)");
  }
  void reset() { config = IsingSweepConfig::paper_scale(); }
  Manifest manifest() {
    deft.apply();
    scheme.apply();
    if (policy == "suggest") {
      config.delta_policy = DeltaTPolicy::kSuggest;
    } else if (policy == "fixed") {
      config.delta_policy = DeltaTPolicy::kFixed;
    } else {
      throw CLI::ValidationError("--delta-policy", "must be suggest or fixed");
    }
    config.validate();
    return config.to_manifest();
  }
};

struct ReplayCommand {
  std::string manifest_path;
  std::size_t threads = 0;
  bool threads_given = false;

  void attach(CLI::App* app) {
    app->add_option("--manifest,-m", manifest_path, "manifest.txt written by an earlier run")->required();
    add_integer(app, "--threads", threads, "override the worker count (does not change outputs)")
        ->each([this](const std::string&) { threads_given = true; });
  }
};

}  // namespace

void execute(const Manifest& manifest, const fs::path& directory, std::ostream& out) {
  Manifest m = manifest;
  m.set("tool_version", tool_version());
  m.set("timestamp", utc_timestamp());
  const std::string& experiment = m.get("experiment");
  if (experiment == "density") return execute_density(m, directory, out);
  if (experiment == "fisher") return execute_fisher(m, directory, out);
  if (experiment == "calibrate") return execute_calibrate(m, directory, out);
  if (experiment == "bench-normal") return execute_bench_normal(m, directory, out);
  if (experiment == "sweep-eps") return execute_sweep_eps(m, directory, out);
  if (experiment == "heatmap") return execute_heatmap(m, directory, out);
  if (experiment == "ising") return execute_ising(m, directory, out);
  throw std::invalid_argument("manifest: unknown experiment '" + experiment + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-parametric Fisher information from samples: density fitting, finite-difference FIM, "
               "step calibration and reference experiments.",
               "fisherfd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  std::string out_dir;
  auto add_out = [&](CLI::App* sub, const std::string& fallback) {
    sub->add_option("--out,-o", out_dir, "output directory")->default_str(fallback);
  };

  DensityCommand density;
  auto* density_app = app.add_subcommand("density", "fit DEFT or KDE to a sample file and dump the density");
  density.attach(density_app);
  add_out(density_app, "out/density");

  FisherCommand fisher_cmd;
  auto* fisher_app = app.add_subcommand("fisher", "estimate the FIM from stencil sample files");
  fisher_cmd.attach(fisher_app);
  add_out(fisher_app, "out/fisher");

  CalibrateCommand calibrate;
  auto* calibrate_app = app.add_subcommand("calibrate", "iterate delta until the epsilon radius meets its target");
  calibrate.attach(calibrate_app);
  add_out(calibrate_app, "out/calibrate");

  BenchNormalCommand bench;
  auto* bench_app = app.add_subcommand("bench-normal", "DEFT vs KDE relative error of g_sigma_sigma on normal data");
  bench.attach(bench_app);
  add_out(bench_app, "out/bench-normal");

  SweepEpsCommand sweep;
  auto* sweep_app = app.add_subcommand("sweep-eps", "relative error of g_sigma_sigma as a function of epsilon");
  sweep.attach(sweep_app);
  add_out(sweep_app, "out/sweep-eps");

  HeatmapCommand heat;
  auto* heat_app = app.add_subcommand("heatmap", "|relative error| over sample count N and step delta_sigma");
  heat.attach(heat_app);
  add_out(heat_app, "out/heatmap");

  IsingCommand ising;
  auto* ising_app = app.add_subcommand("ising", "g_TT of the 2-D Ising energy distribution vs heat capacity");
  ising.attach(ising_app);
  add_out(ising_app, "out/ising");

  ReplayCommand replay;
  auto* replay_app = app.add_subcommand("replay", "rerun any subcommand from its manifest.txt");
  replay.attach(replay_app);
  add_out(replay_app, "out/replay");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("fisherfd");
  const int argc = static_cast<int>(argv.size());

  auto usage_error = [&](const std::string& message) {
    err << "fisherfd: error: " << message << '\n';
    const CLI::App* failed = &app;
    for (const auto* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return 2;
  };

  try {
    app.parse(argc, argv.data());
    // --paper-scale presets replace the defaults; explicit flags still win.
    if (bench_app->parsed() && bench.paper_scale) {
      bench.reset();
      app.parse(argc, argv.data());
    } else if (sweep_app->parsed() && sweep.paper_scale) {
      sweep.reset();
      app.parse(argc, argv.data());
    } else if (heat_app->parsed() && heat.paper_scale) {
      heat.reset();
      app.parse(argc, argv.data());
    } else if (ising_app->parsed() && ising.paper_scale) {
      ising.reset();
      app.parse(argc, argv.data());
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    return usage_error(e.what());
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const fs::path dir = out_dir.empty() ? fs::path("out") / chosen->get_name() : fs::path(out_dir);

  Manifest manifest;
  try {
    if (chosen == density_app) manifest = density.manifest();
    else if (chosen == fisher_app) manifest = fisher_cmd.manifest();
    else if (chosen == calibrate_app) manifest = calibrate.manifest();
    else if (chosen == bench_app) manifest = bench.manifest();
    else if (chosen == sweep_app) manifest = sweep.manifest();
    else if (chosen == heat_app) manifest = heat.manifest();
    else if (chosen == ising_app) manifest = ising.manifest();
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  }

  try {
    if (chosen == replay_app) {
      manifest = Manifest::read(replay.manifest_path);
      if (replay.threads_given) manifest.set_size("threads", replay.threads);
    }
    execute(manifest, dir, out);
  } catch (const std::exception& e) {
    err << "fisherfd: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fisher::cli
