#include "lgtd/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "lgtd/version.hpp"

namespace lgtd::io {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

std::string strip(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double_field(const std::string& field, std::size_t line_no) {
  const std::string token = strip(field);
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                           ": cannot parse value '" + token + "'");
  }
  return value;
}

bool parse_int64(const std::string& token, std::int64_t& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !token.empty();
}

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// civil-days algorithm).
std::int64_t days_from_civil(int year, int month, int day) {
  year -= month <= 2;
  const int era = (year >= 0 ? year : year - 399) / 400;
  const auto yoe = static_cast<unsigned>(year - era * 400);
  const auto doy = static_cast<unsigned>(
      (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 +
         static_cast<std::int64_t>(doe) - 719468;
}

int days_in_month(int year, int month) {
  static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30,
                                      31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return lengths[month - 1];
}

// Accepts YYYY-MM-DD with an optional THH:MM:SS (and trailing Z); returns
// epoch seconds.
bool parse_iso8601(const std::string& token, std::int64_t& out) {
  auto digits = [&](std::size_t pos, std::size_t count, int& value) {
    if (pos + count > token.size()) return false;
    value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
      if (token[i] < '0' || token[i] > '9') return false;
      value = value * 10 + (token[i] - '0');
    }
    return true;
  };
  int year = 0, month = 0, day = 0;
  if (token.size() < 10 || token[4] != '-' || token[7] != '-' ||
      !digits(0, 4, year) || !digits(5, 2, month) || !digits(8, 2, day)) {
    return false;
  }
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
    return false;
  }
  int hour = 0, minute = 0, second = 0;
  if (token.size() > 10) {
    if (token[10] != 'T' || token.size() < 19 || token[13] != ':' ||
        token[16] != ':' || !digits(11, 2, hour) || !digits(14, 2, minute) ||
        !digits(17, 2, second)) {
      return false;
    }
    if (hour > 23 || minute > 59 || second > 59) return false;
    if (token.size() > 19 && (token.size() != 20 || token[19] != 'Z')) {
      return false;
    }
  }
  out = days_from_civil(year, month, day) * 86400 +
        static_cast<std::int64_t>(hour) * 3600 + minute * 60 + second;
  return true;
}

std::uint64_t fnv1a_init() { return 1469598103934665603ULL; }

void fnv1a_mix(std::uint64_t& hash, std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (word >> (8 * i)) & 0xFFULL;
    hash *= 1099511628211ULL;
  }
}

void fnv1a_mix_doubles(std::uint64_t& hash, const std::vector<double>& values) {
  for (double value : values) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof(bits));
    fnv1a_mix(hash, bits);
  }
}

ordered_json global_config_to_json(const GlobalTrendConfig& cfg) {
  ordered_json j;
  switch (cfg.kind) {
    case GlobalTrendConfig::Kind::MovingAverage:
      j["kind"] = "moving_average";
      j["window"] = cfg.window;
      break;
    case GlobalTrendConfig::Kind::PolynomialLeastSquares:
      j["kind"] = "polynomial";
      j["degree"] = cfg.degree;
      break;
    case GlobalTrendConfig::Kind::LocalRegression:
      j["kind"] = "local_regression";
      j["window"] = cfg.window;
      break;
  }
  return j;
}

GlobalTrendConfig global_config_from_json(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "moving_average") {
    return GlobalTrendConfig::moving_average(j.at("window").get<int>());
  }
  if (kind == "polynomial") {
    return GlobalTrendConfig::polynomial(j.at("degree").get<int>());
  }
  if (kind == "local_regression") {
    return GlobalTrendConfig::local_regression(j.at("window").get<int>());
  }
  throw Error(ErrorKind::ParseError, "unknown global trend kind: " + kind);
}

ordered_json llt_params_to_json(const LltParams& params) {
  ordered_json j;
  j["window"] = params.window;
  j["max_iterations"] = params.max_iterations;
  j["baseline_percentile"] = params.baseline_percentile;
  j["percentile_step"] = params.percentile_step;
  j["update_threshold"] = params.update_threshold;
  return j;
}

LltParams llt_params_from_json(const ordered_json& j) {
  LltParams params;
  params.window = j.at("window").get<int>();
  params.max_iterations = j.at("max_iterations").get<int>();
  params.baseline_percentile = j.at("baseline_percentile").get<double>();
  params.percentile_step = j.at("percentile_step").get<double>();
  params.update_threshold = j.at("update_threshold").get<bool>();
  return params;
}

ordered_json spec_to_json(const SyntheticSpec& spec) {
  ordered_json j;
  j["trend"] = synth::to_string(spec.trend);
  j["season"] = synth::to_string(spec.season);
  j["length"] = spec.length;
  j["noise_sigma"] = spec.noise_sigma;
  j["seed"] = spec.seed;
  j["amplitude"] = spec.amplitude;
  j["trend_scale"] = spec.trend_scale;
  j["generator"] = "xoshiro256++/splitmix64, polar gaussian";
  return j;
}

SyntheticSpec spec_from_json(const ordered_json& j) {
  SyntheticSpec spec;
  spec.trend = synth::trend_from_string(j.at("trend").get<std::string>());
  spec.season = synth::season_from_string(j.at("season").get<std::string>());
  spec.length = j.at("length").get<std::size_t>();
  spec.noise_sigma = j.at("noise_sigma").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.amplitude = j.at("amplitude").get<double>();
  spec.trend_scale = j.at("trend_scale").get<double>();
  return spec;
}

ordered_json parse_json_file(const fs::path& path) {
  const std::string text = read_text_file(path);
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorKind::ParseError, "invalid JSON in " + path.string());
  }
  return j;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error(ErrorKind::IoError, "failed while writing " + path.string());
  }
}

TimeSeries read_series_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::EmptySeries, "empty file: " + path.string());
  }
  auto header = split_line(strip(line));
  for (auto& field : header) field = strip(field);

  bool with_index = false;
  if (header.size() == 1 && header[0] == "value") {
    with_index = false;
  } else if (header.size() == 2 && header[0] == "t" && header[1] == "value") {
    with_index = true;
  } else {
    throw Error(ErrorKind::MissingColumn,
                "expected header 'value' or 't,value' in " + path.string());
  }

  std::vector<double> values;
  std::vector<std::int64_t> ticks;
  enum class IndexMode { Unknown, Integer, Iso } mode = IndexMode::Unknown;
  std::size_t line_no = 1;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = strip(line);
    if (trimmed.empty()) {
      continue;
    }
    const auto fields = split_line(trimmed);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    if (with_index) {
      const std::string token = strip(fields[0]);
      std::int64_t tick = 0;
      if (mode == IndexMode::Unknown) {
        mode = parse_int64(token, tick) ? IndexMode::Integer : IndexMode::Iso;
      }
      if (mode == IndexMode::Integer) {
        if (!parse_int64(token, tick)) {
          throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                                 ": bad integer index '" +
                                                 token + "'");
        }
        // Integer ticks must advance by exactly one; a jump means missing
        // observations, which the toolkit does not model.
        if (!ticks.empty() && tick != ticks.back() + 1) {
          throw Error(ErrorKind::NonMonotoneIndex,
                      "line " + std::to_string(line_no) +
                          ": index must increase by 1 (got " +
                          std::to_string(ticks.back()) + " -> " +
                          std::to_string(tick) + ")");
        }
      } else {
        if (!parse_iso8601(token, tick)) {
          throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                                 ": bad timestamp '" + token +
                                                 "'");
        }
        if (!ticks.empty() && tick <= ticks.back()) {
          throw Error(ErrorKind::NonMonotoneIndex,
                      "line " + std::to_string(line_no) +
                          ": timestamps must be strictly increasing");
        }
      }
      ticks.push_back(tick);
      values.push_back(parse_double_field(fields[1], line_no));
    } else {
      values.push_back(parse_double_field(fields[0], line_no));
    }
  }

  if (values.empty()) {
    throw Error(ErrorKind::EmptySeries, "no data rows in " + path.string());
  }
  if (with_index) {
    return {std::move(values), std::move(ticks)};
  }
  return TimeSeries(std::move(values));
}

std::string content_checksum(const Decomposition& decomp) {
  std::uint64_t hash = fnv1a_init();
  fnv1a_mix_doubles(hash, decomp.global_trend);
  fnv1a_mix_doubles(hash, decomp.local_trend);
  fnv1a_mix_doubles(hash, decomp.residual);
  for (int label : decomp.labels) {
    fnv1a_mix(hash, static_cast<std::uint64_t>(static_cast<std::int64_t>(label)));
  }
  std::array<char, 17> buffer{};
  for (int i = 15; i >= 0; --i) {
    buffer[i] = "0123456789abcdef"[hash & 0xF];
    hash >>= 4;
  }
  return std::string("fnv1a64:") + buffer.data();
}

std::vector<fs::path> write_decomposition(const Decomposition& decomp,
                                          const fs::path& dir,
                                          OutputFormats formats,
                                          const std::string& run_echo_json) {
  fs::create_directories(dir);
  std::vector<fs::path> written;

  if (formats.csv) {
    std::ostringstream csv;
    csv << "t,y,global,local,residual,label\n";
    for (std::size_t t = 0; t < decomp.size(); ++t) {
      // y is reconstructed from the components; it matches the input up to
      // the rounding already embedded in the residual definition.
      const double y =
          decomp.global_trend[t] + decomp.local_trend[t] + decomp.residual[t];
      csv << t << ',' << format_double(y) << ','
          << format_double(decomp.global_trend[t]) << ','
          << format_double(decomp.local_trend[t]) << ','
          << format_double(decomp.residual[t]) << ',' << decomp.labels[t]
          << '\n';
    }
    const fs::path path = dir / "components.csv";
    write_text_file(path, csv.str());
    written.push_back(path);
  }

  if (formats.json) {
    ordered_json j;
    j["tool"] = "lgtd";
    j["version"] = kVersion;
    j["params"]["global"] = global_config_to_json(decomp.params.global);
    j["params"]["llt"] = llt_params_to_json(decomp.params.llt);
    if (!run_echo_json.empty()) {
      ordered_json echo = ordered_json::parse(run_echo_json, nullptr, false);
      if (echo.is_discarded()) {
        throw Error(ErrorKind::InvalidParams, "run echo is not valid JSON");
      }
      j["run"] = echo;
    }
    j["length"] = decomp.size();
    j["labels"] = decomp.labels;
    j["global_trend"] = decomp.global_trend;
    j["local_trend"] = decomp.local_trend;
    j["residual"] = decomp.residual;
    ordered_json models = ordered_json::array();
    for (const auto& model : decomp.models) {
      ordered_json m;
      m["slope"] = model.slope;
      m["intercept"] = model.intercept;
      m["range_start"] = model.range_start;
      m["range_end"] = model.range_end;
      m["iteration"] = model.iteration;
      models.push_back(std::move(m));
    }
    j["models"] = std::move(models);
    j["checksum"] = content_checksum(decomp);

    const fs::path path = dir / "result.json";
    write_text_file(path, j.dump(2) + "\n");
    written.push_back(path);
  }

  return written;
}

Decomposition read_decomposition(const fs::path& dir) {
  const ordered_json j = parse_json_file(dir / "result.json");
  Decomposition decomp;
  decomp.params.global = global_config_from_json(j.at("params").at("global"));
  decomp.params.llt = llt_params_from_json(j.at("params").at("llt"));
  decomp.labels = j.at("labels").get<std::vector<int>>();
  decomp.global_trend = j.at("global_trend").get<std::vector<double>>();
  decomp.local_trend = j.at("local_trend").get<std::vector<double>>();
  decomp.residual = j.at("residual").get<std::vector<double>>();
  for (const auto& m : j.at("models")) {
    decomp.models.push_back({m.at("slope").get<double>(),
                             m.at("intercept").get<double>(),
                             m.at("range_start").get<int>(),
                             m.at("range_end").get<int>(),
                             m.at("iteration").get<int>()});
  }
  const std::size_t n = decomp.global_trend.size();
  if (decomp.local_trend.size() != n || decomp.residual.size() != n ||
      decomp.labels.size() != n) {
    throw Error(ErrorKind::LengthMismatch,
                "component arrays in " + (dir / "result.json").string() +
                    " have inconsistent lengths");
  }
  const std::string expected = j.at("checksum").get<std::string>();
  if (content_checksum(decomp) != expected) {
    throw Error(ErrorKind::ParseError,
                "checksum mismatch in " + (dir / "result.json").string());
  }
  return decomp;
}

void write_dataset(const synth::SyntheticSeries& data, const SyntheticSpec& spec,
                   const std::string& id, const fs::path& dir) {
  fs::create_directories(dir);

  std::ostringstream series;
  series << "t,value\n";
  const auto& values = data.series.values();
  for (std::size_t t = 0; t < values.size(); ++t) {
    series << t << ',' << format_double(values[t]) << '\n';
  }
  write_text_file(dir / "series.csv", series.str());

  std::ostringstream truth;
  truth << "t,trend,seasonal,noise,total\n";
  for (std::size_t t = 0; t < values.size(); ++t) {
    truth << t << ',' << format_double(data.truth.trend[t]) << ','
          << format_double(data.truth.seasonal[t]) << ','
          << format_double(data.truth.noise[t]) << ','
          << format_double(data.truth.total[t]) << '\n';
  }
  write_text_file(dir / "truth.csv", truth.str());

  ordered_json j;
  j["id"] = id;
  j["spec"] = spec_to_json(spec);
  j["tool"] = "lgtd";
  j["version"] = kVersion;
  write_text_file(dir / "spec.json", j.dump(2) + "\n");
}

GroundTruth read_truth_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) ||
      strip(line) != "t,trend,seasonal,noise,total") {
    throw Error(ErrorKind::MissingColumn,
                "expected header 't,trend,seasonal,noise,total' in " +
                    path.string());
  }
  GroundTruth truth;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = strip(line);
    if (trimmed.empty()) continue;
    const auto fields = split_line(trimmed);
    if (fields.size() != 5) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": expected 5 fields");
    }
    truth.trend.push_back(parse_double_field(fields[1], line_no));
    truth.seasonal.push_back(parse_double_field(fields[2], line_no));
    truth.noise.push_back(parse_double_field(fields[3], line_no));
    truth.total.push_back(parse_double_field(fields[4], line_no));
  }
  if (truth.total.empty()) {
    throw Error(ErrorKind::EmptySeries, "no data rows in " + path.string());
  }
  return truth;
}

void write_manifest(const fs::path& dir, const std::vector<ManifestEntry>& entries,
                    std::uint64_t base_seed) {
  ordered_json j;
  j["suite"] = "synthetic-3x3";
  j["tool"] = "lgtd";
  j["version"] = kVersion;
  j["base_seed"] = base_seed;
  ordered_json datasets = ordered_json::array();
  for (const auto& entry : entries) {
    ordered_json d;
    d["id"] = entry.id;
    d["regime"] = entry.regime;
    d["spec"] = spec_to_json(entry.spec);
    d["series"] = entry.series_path;
    d["truth"] = entry.truth_path;
    datasets.push_back(std::move(d));
  }
  j["datasets"] = std::move(datasets);
  fs::create_directories(dir);
  write_text_file(dir / "manifest.json", j.dump(2) + "\n");
}

std::vector<ManifestEntry> generate_suite(const fs::path& dir,
                                          std::uint64_t base_seed,
                                          std::size_t length, double noise_sigma,
                                          double amplitude, double trend_scale) {
  const auto suite =
      synth::suite_specs(base_seed, length, noise_sigma, amplitude, trend_scale);
  std::vector<ManifestEntry> entries;
  entries.reserve(suite.size());
  for (const auto& dataset : suite) {
    const auto data = synth::gen_series(dataset.spec);
    write_dataset(data, dataset.spec, dataset.id, dir / dataset.id);
    entries.push_back({dataset.id, synth::to_string(dataset.spec.season),
                       dataset.spec, dataset.id + "/series.csv",
                       dataset.id + "/truth.csv"});
  }
  write_manifest(dir, entries, base_seed);
  return entries;
}

std::vector<ManifestEntry> read_manifest(const fs::path& dir) {
  const ordered_json j = parse_json_file(dir / "manifest.json");
  std::vector<ManifestEntry> entries;
  for (const auto& d : j.at("datasets")) {
    ManifestEntry entry;
    entry.id = d.at("id").get<std::string>();
    entry.regime = d.at("regime").get<std::string>();
    entry.spec = spec_from_json(d.at("spec"));
    entry.series_path = d.at("series").get<std::string>();
    entry.truth_path = d.at("truth").get<std::string>();
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) {
    throw Error(ErrorKind::ParseError,
                "manifest in " + dir.string() + " lists no datasets");
  }
  return entries;
}

void write_eval_report(const EvalReport& report, const fs::path& path) {
  ordered_json j;
  auto component = [](const ComponentScore& score) {
    ordered_json c;
    c["mae"] = score.mae;
    c["mse"] = score.mse;
    return c;
  };
  j["trend"] = component(report.trend);
  j["seasonal"] = component(report.seasonal);
  j["residual"] = component(report.residual);
  j["overall_mae"] = report.overall_mae;
  j["overall_mse"] = report.overall_mse;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  write_text_file(path, j.dump(2) + "\n");
}

EvalReport read_eval_report(const fs::path& path) {
  const ordered_json j = parse_json_file(path);
  EvalReport report;
  auto component = [&](const char* name) {
    return ComponentScore{j.at(name).at("mae").get<double>(),
                          j.at(name).at("mse").get<double>()};
  };
  report.trend = component("trend");
  report.seasonal = component("seasonal");
  report.residual = component("residual");
  report.overall_mae = j.at("overall_mae").get<double>();
  report.overall_mse = j.at("overall_mse").get<double>();
  return report;
}

}  // namespace lgtd::io
