#include "lgtd/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lgtd/global_trend.hpp"
#include "lgtd/io.hpp"
#include "lgtd/metrics.hpp"
#include "lgtd/pipeline.hpp"
#include "lgtd/synth.hpp"
#include "lgtd/version.hpp"

namespace lgtd::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LGTD_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) {
      cap = static_cast<unsigned>(parsed);
    }
  }
  return cap;
}

// Runs fn(0..count-1) on up to thread_cap() workers. Jobs must write to
// disjoint locations; results do not depend on the worker count.
void parallel_for_each(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const auto workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_cap(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t job = next.fetch_add(1);
        if (job >= count) break;
        try {
          fn(job);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (failure) std::rethrow_exception(failure);
}

struct LltFlags {
  int window = 3;
  double p0 = 30.0;
  double dp = 10.0;
  int kmax = 20;
  bool no_update = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--window", window, "local-trend regression window")
        ->capture_default_str();
    cmd->add_option("--p0", p0, "baseline acceptance percentile")
        ->capture_default_str();
    cmd->add_option("--dp", dp, "percentile increment per iteration")
        ->capture_default_str();
    cmd->add_option("--kmax", kmax, "maximum refinement iterations")
        ->capture_default_str();
    cmd->add_flag("--no-update-threshold", no_update,
                  "keep the acceptance percentile fixed");
  }

  LltParams params() const {
    LltParams p;
    p.window = window;
    p.baseline_percentile = p0;
    p.percentile_step = dp;
    p.max_iterations = kmax;
    p.update_threshold = !no_update;
    return p;
  }
};

GlobalTrendConfig make_global_config(const std::string& kind, int window,
                                     int degree, std::size_t length) {
  if (kind == "ma") {
    return window > 0 ? GlobalTrendConfig::moving_average(window)
                      : default_global_config(length);
  }
  if (kind == "poly") {
    return GlobalTrendConfig::polynomial(degree);
  }
  if (kind == "local") {
    return window > 0 ? GlobalTrendConfig::local_regression(window)
                      : GlobalTrendConfig::local_regression(
                            default_global_window(length));
  }
  throw Error(ErrorKind::InvalidParams, "unknown global estimator: " + kind);
}

io::OutputFormats parse_formats(const std::string& spec) {
  io::OutputFormats formats{false, false};
  std::istringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token == "csv") {
      formats.csv = true;
    } else if (token == "json") {
      formats.json = true;
    } else {
      throw Error(ErrorKind::InvalidParams, "unknown format: " + token);
    }
  }
  if (!formats.csv && !formats.json) {
    throw Error(ErrorKind::InvalidParams, "no output format selected");
  }
  return formats;
}

struct DecomposeOptions {
  std::string input;
  std::string synth_source;  // "trend:season"
  std::size_t length = 2000;
  double sigma = 1.0;
  std::uint64_t seed = 42;
  std::string global_kind = "ma";
  int global_window = 0;  // 0 = derive from length
  int degree = 3;
  LltFlags llt;
  std::string out_dir;
  std::string formats = "csv,json";
};

int cmd_decompose(const DecomposeOptions& opt) {
  if (opt.input.empty() == opt.synth_source.empty()) {
    std::cerr << "decompose: exactly one of --input and --synth is required\n";
    return kExitUsage;
  }

  ordered_json echo;
  echo["command"] = "decompose";
  TimeSeries series = [&] {
    if (!opt.input.empty()) {
      echo["input"] = opt.input;
      return io::read_series_csv(opt.input);
    }
    const auto colon = opt.synth_source.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::InvalidParams,
                  "--synth expects trend:season, e.g. linear:fixed");
    }
    SyntheticSpec spec;
    spec.trend = synth::trend_from_string(opt.synth_source.substr(0, colon));
    spec.season = synth::season_from_string(opt.synth_source.substr(colon + 1));
    spec.length = opt.length;
    spec.noise_sigma = opt.sigma;
    spec.seed = opt.seed;
    echo["synth"] = {{"trend", synth::to_string(spec.trend)},
                     {"season", synth::to_string(spec.season)},
                     {"length", spec.length},
                     {"noise_sigma", spec.noise_sigma},
                     {"seed", spec.seed}};
    return synth::gen_series(spec).series;
  }();

  const auto gcfg = make_global_config(opt.global_kind, opt.global_window,
                                       opt.degree, series.size());
  const auto formats = parse_formats(opt.formats);
  echo["formats"] = opt.formats;

  const auto decomp = decompose(series, gcfg, opt.llt.params());
  const auto written =
      io::write_decomposition(decomp, opt.out_dir, formats, echo.dump());
  for (const auto& path : written) {
    std::cout << "wrote " << path.generic_string() << '\n';
  }
  return kExitOk;
}

struct SynthOptions {
  bool suite = false;
  std::string trend = "linear";
  std::string season = "fixed";
  std::size_t length = 2000;
  double sigma = 1.0;
  std::uint64_t seed = 42;
  double amplitude = 10.0;
  double trend_scale = 1.0;
  std::string out_dir;
};

int cmd_synth(const SynthOptions& opt) {
  if (opt.suite) {
    const auto entries = io::generate_suite(opt.out_dir, opt.seed, opt.length,
                                            opt.sigma, opt.amplitude,
                                            opt.trend_scale);
    std::cout << "wrote " << entries.size() << " datasets under " << opt.out_dir
              << '\n';
    return kExitOk;
  }
  SyntheticSpec spec;
  spec.trend = synth::trend_from_string(opt.trend);
  spec.season = synth::season_from_string(opt.season);
  spec.length = opt.length;
  spec.noise_sigma = opt.sigma;
  spec.seed = opt.seed;
  spec.amplitude = opt.amplitude;
  spec.trend_scale = opt.trend_scale;

  const std::string id = opt.trend + "-" + opt.season;
  const auto data = synth::gen_series(spec);
  io::write_dataset(data, spec, id, opt.out_dir);
  io::write_manifest(opt.out_dir,
                     {{id, synth::to_string(spec.season), spec, "series.csv",
                       "truth.csv"}},
                     opt.seed);
  std::cout << "wrote dataset " << id << " under " << opt.out_dir << '\n';
  return kExitOk;
}

struct EvalOptions {
  std::string decomp_dir;
  std::string truth_dir;
  std::string out_file;
};

int cmd_eval(const EvalOptions& opt) {
  const auto decomp = io::read_decomposition(opt.decomp_dir);
  const auto truth = io::read_truth_csv(fs::path(opt.truth_dir) / "truth.csv");
  const auto report = evaluate(decomp, truth);
  io::write_eval_report(report, opt.out_file);
  std::cout << "component,mae,mse\n"
            << "trend," << report.trend.mae << ',' << report.trend.mse << '\n'
            << "seasonal," << report.seasonal.mae << ',' << report.seasonal.mse
            << '\n'
            << "residual," << report.residual.mae << ',' << report.residual.mse
            << '\n'
            << "overall," << report.overall_mae << ',' << report.overall_mse
            << '\n';
  return kExitOk;
}

struct LoadedDataset {
  io::ManifestEntry entry;
  TimeSeries series;
  GroundTruth truth;
};

std::vector<LoadedDataset> load_suite(const fs::path& suite_dir,
                                      std::uint64_t seed, std::size_t length,
                                      double sigma, double amplitude,
                                      double trend_scale) {
  if (!fs::exists(suite_dir / "manifest.json")) {
    io::generate_suite(suite_dir, seed, length, sigma, amplitude, trend_scale);
  }
  std::vector<LoadedDataset> loaded;
  for (const auto& entry : io::read_manifest(suite_dir)) {
    TimeSeries series = io::read_series_csv(suite_dir / entry.series_path);
    GroundTruth truth = io::read_truth_csv(suite_dir / entry.truth_path);
    loaded.push_back({entry, std::move(series), std::move(truth)});
  }
  return loaded;
}

struct BenchOptions {
  std::string suite_dir;
  std::string out_dir;
  std::uint64_t seed = 42;
  std::size_t length = 2000;
  double sigma = 1.0;
  double amplitude = 10.0;
  double trend_scale = 1.0;
  std::string estimators = "ma,poly,local";
  int degree = 3;
  LltFlags llt;
};

std::vector<std::string> split_tokens(const std::string& spec) {
  std::vector<std::string> tokens;
  std::istringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) tokens.push_back(token);
  }
  return tokens;
}

int cmd_bench(const BenchOptions& opt) {
  const auto datasets = load_suite(opt.suite_dir, opt.seed, opt.length,
                                   opt.sigma, opt.amplitude, opt.trend_scale);
  const auto estimators = split_tokens(opt.estimators);
  if (estimators.empty()) {
    throw Error(ErrorKind::InvalidParams, "no estimators selected");
  }
  const LltParams lparams = opt.llt.params();

  struct Job {
    const LoadedDataset* dataset;
    std::string estimator;
    EvalReport report;
  };
  std::vector<Job> jobs;
  for (const auto& dataset : datasets) {
    for (const auto& estimator : estimators) {
      jobs.push_back({&dataset, estimator, {}});
    }
  }

  const fs::path out_dir(opt.out_dir);
  parallel_for_each(jobs.size(), [&](std::size_t i) {
    Job& job = jobs[i];
    const auto gcfg = make_global_config(job.estimator, 0, opt.degree,
                                         job.dataset->series.size());
    const auto decomp = decompose(job.dataset->series, gcfg, lparams);
    job.report = evaluate(decomp, job.dataset->truth);

    ordered_json echo;
    echo["command"] = "bench";
    echo["dataset"] = job.dataset->entry.id;
    echo["estimator"] = job.estimator;
    echo["seed"] = opt.seed;
    const fs::path job_dir = out_dir / job.dataset->entry.id / job.estimator;
    io::write_decomposition(decomp, job_dir, {}, echo.dump());
    io::write_eval_report(job.report, job_dir / "eval.json");
  });

  std::vector<SuiteEvalEntry> entries;
  entries.reserve(jobs.size());
  for (const auto& job : jobs) {
    entries.push_back({job.dataset->entry.id, "lgtd-" + job.estimator,
                       job.dataset->entry.regime, job.report});
  }
  const auto table = aggregate_suite(entries);
  io::write_text_file(out_dir / "aggregate.csv", to_csv(table));
  io::write_text_file(out_dir / "aggregate.md", to_markdown(table));

  ordered_json summary;
  summary["command"] = "bench";
  summary["version"] = kVersion;
  summary["seed"] = opt.seed;
  summary["estimators"] = estimators;
  summary["llt"] = {{"window", lparams.window},
                    {"max_iterations", lparams.max_iterations},
                    {"baseline_percentile", lparams.baseline_percentile},
                    {"percentile_step", lparams.percentile_step},
                    {"update_threshold", lparams.update_threshold}};
  io::write_text_file(out_dir / "bench.json", summary.dump(2) + "\n");

  std::cout << to_markdown(table);
  return kExitOk;
}

struct SweepOptions {
  std::string param = "p0";
  std::string values = "20,30,40,50";
  std::string suite_dir;
  std::string out_file;
  std::uint64_t seed = 42;
  std::size_t length = 2000;
  double sigma = 1.0;
  double amplitude = 10.0;
  double trend_scale = 1.0;
  std::string estimator = "ma";
  int degree = 3;
  LltFlags llt;
};

int cmd_sweep(const SweepOptions& opt) {
  const auto datasets = load_suite(opt.suite_dir, opt.seed, opt.length,
                                   opt.sigma, opt.amplitude, opt.trend_scale);

  std::vector<double> values;
  for (const auto& token : split_tokens(opt.values)) {
    values.push_back(std::stod(token));
  }
  if (values.empty()) {
    throw Error(ErrorKind::InvalidParams, "sweep requires at least one value");
  }

  std::ostringstream csv;
  csv.precision(17);
  csv << "param,value,trend_mae,seasonal_mae,residual_mae,overall_mae\n";

  std::vector<double> overall_maes;
  for (double value : values) {
    LltParams lparams = opt.llt.params();
    if (opt.param == "p0") {
      lparams.baseline_percentile = value;
    } else if (opt.param == "dp") {
      lparams.percentile_step = value;
    } else if (opt.param == "window") {
      lparams.window = static_cast<int>(value);
    } else if (opt.param == "kmax") {
      lparams.max_iterations = static_cast<int>(value);
    } else {
      throw Error(ErrorKind::InvalidParams,
                  "unknown sweep parameter: " + opt.param);
    }

    std::vector<SuiteEvalEntry> entries(datasets.size());
    parallel_for_each(datasets.size(), [&](std::size_t i) {
      const auto& dataset = datasets[i];
      const auto gcfg = make_global_config(opt.estimator, 0, opt.degree,
                                           dataset.series.size());
      const auto decomp = decompose(dataset.series, gcfg, lparams);
      entries[i] = {dataset.entry.id, "lgtd", dataset.entry.regime,
                    evaluate(decomp, dataset.truth)};
    });
    const auto table = aggregate_suite(entries);
    const AggregateRow& row = table.overall.front();
    overall_maes.push_back(row.overall_mae);
    csv << opt.param << ',' << value << ',' << row.trend.mae << ','
        << row.seasonal.mae << ',' << row.residual.mae << ',' << row.overall_mae
        << '\n';
  }

  const double lo = *std::min_element(overall_maes.begin(), overall_maes.end());
  const double hi = *std::max_element(overall_maes.begin(), overall_maes.end());
  const double spread = lo > 0.0 ? (hi - lo) / lo : 0.0;
  csv << "max_relative_spread," << spread << ",,,,\n";

  io::write_text_file(opt.out_file, csv.str());
  std::cout << "sweep " << opt.param << " over {" << opt.values
            << "}: max relative spread of overall MAE = " << spread << '\n'
            << "wrote " << opt.out_file << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Season-length-free time-series decomposition toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  DecomposeOptions dec;
  auto* decompose_cmd =
      app.add_subcommand("decompose", "decompose a series into components");
  decompose_cmd->add_option("--input", dec.input, "input series CSV");
  decompose_cmd->add_option("--synth", dec.synth_source,
                            "generate the input instead (trend:season)");
  decompose_cmd->add_option("--length", dec.length, "generated series length")
      ->capture_default_str();
  decompose_cmd->add_option("--sigma", dec.sigma, "generated noise sigma")
      ->capture_default_str();
  decompose_cmd->add_option("--seed", dec.seed, "generator seed")
      ->capture_default_str();
  decompose_cmd
      ->add_option("--global", dec.global_kind, "global estimator: ma|poly|local")
      ->capture_default_str();
  decompose_cmd->add_option("--global-window", dec.global_window,
                            "smoothing window (default: derived from length)");
  decompose_cmd->add_option("--degree", dec.degree, "polynomial degree")
      ->capture_default_str();
  dec.llt.attach(decompose_cmd);
  decompose_cmd->add_option("--out", dec.out_dir, "output directory")->required();
  decompose_cmd->add_option("--format", dec.formats, "outputs: csv,json")
      ->capture_default_str();

  SynthOptions syn;
  auto* synth_cmd = app.add_subcommand("synth", "generate benchmark data");
  synth_cmd->add_flag("--suite", syn.suite, "generate all nine suite datasets");
  synth_cmd->add_option("--trend", syn.trend, "linear|invv|piecewise")
      ->capture_default_str();
  synth_cmd->add_option("--season", syn.season, "fixed|transitive|variable")
      ->capture_default_str();
  synth_cmd->add_option("--length", syn.length, "series length")
      ->capture_default_str();
  synth_cmd->add_option("--sigma", syn.sigma, "noise sigma")
      ->capture_default_str();
  synth_cmd->add_option("--seed", syn.seed, "generator seed")
      ->capture_default_str();
  synth_cmd->add_option("--amplitude", syn.amplitude, "seasonal amplitude")
      ->capture_default_str();
  synth_cmd->add_option("--trend-scale", syn.trend_scale, "trend scale factor")
      ->capture_default_str();
  synth_cmd->add_option("--out", syn.out_dir, "output directory")->required();

  EvalOptions evl;
  auto* eval_cmd =
      app.add_subcommand("eval", "score a decomposition against ground truth");
  eval_cmd->add_option("--decomp", evl.decomp_dir, "directory with result.json")
      ->required();
  eval_cmd->add_option("--truth", evl.truth_dir, "directory with truth.csv")
      ->required();
  eval_cmd->add_option("--out", evl.out_file, "output report file")->required();

  BenchOptions ben;
  auto* bench_cmd =
      app.add_subcommand("bench", "run the benchmark suite end to end");
  bench_cmd->add_option("--suite", ben.suite_dir, "suite directory (generated if absent)")
      ->required();
  bench_cmd->add_option("--out", ben.out_dir, "output directory")->required();
  bench_cmd->add_option("--seed", ben.seed, "suite seed")->capture_default_str();
  bench_cmd->add_option("--length", ben.length, "series length")
      ->capture_default_str();
  bench_cmd->add_option("--sigma", ben.sigma, "noise sigma")
      ->capture_default_str();
  bench_cmd->add_option("--amplitude", ben.amplitude, "seasonal amplitude")
      ->capture_default_str();
  bench_cmd->add_option("--trend-scale", ben.trend_scale, "trend scale factor")
      ->capture_default_str();
  bench_cmd
      ->add_option("--estimators", ben.estimators, "comma list of ma|poly|local")
      ->capture_default_str();
  bench_cmd->add_option("--degree", ben.degree, "polynomial degree")
      ->capture_default_str();
  ben.llt.attach(bench_cmd);

  SweepOptions swp;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "parameter sensitivity over the suite");
  sweep_cmd->add_option("--param", swp.param, "p0|dp|window|kmax")
      ->capture_default_str();
  sweep_cmd->add_option("--values", swp.values, "comma-separated values")
      ->capture_default_str();
  sweep_cmd->add_option("--suite", swp.suite_dir, "suite directory (generated if absent)")
      ->required();
  sweep_cmd->add_option("--out", swp.out_file, "output CSV file")->required();
  sweep_cmd->add_option("--seed", swp.seed, "suite seed")->capture_default_str();
  sweep_cmd->add_option("--length", swp.length, "series length")
      ->capture_default_str();
  sweep_cmd->add_option("--sigma", swp.sigma, "noise sigma")
      ->capture_default_str();
  sweep_cmd->add_option("--amplitude", swp.amplitude, "seasonal amplitude")
      ->capture_default_str();
  sweep_cmd->add_option("--trend-scale", swp.trend_scale, "trend scale factor")
      ->capture_default_str();
  sweep_cmd->add_option("--estimator", swp.estimator, "global estimator")
      ->capture_default_str();
  sweep_cmd->add_option("--degree", swp.degree, "polynomial degree")
      ->capture_default_str();
  swp.llt.attach(sweep_cmd);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("lgtd");
  for (const auto& arg : args) argv_storage.push_back(arg);
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& arg : argv_storage) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    std::cout << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (decompose_cmd->parsed()) return cmd_decompose(dec);
    if (synth_cmd->parsed()) return cmd_synth(syn);
    if (eval_cmd->parsed()) return cmd_eval(evl);
    if (bench_cmd->parsed()) return cmd_bench(ben);
    if (sweep_cmd->parsed()) return cmd_sweep(swp);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace lgtd::cli
