#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lgtd/metrics.hpp"
#include "lgtd/synth.hpp"
#include "lgtd/types.hpp"

namespace lgtd::io {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/**
 * Reads a header CSV holding either a single `value` column or `t,value`
 * pairs. An integer `t` column must increase in steps of exactly one; an
 * ISO-8601 `t` column (YYYY-MM-DD with optional THH:MM:SS[Z]) must be
 * strictly increasing and is stored as epoch seconds.
 * Errors carry 1-based line numbers.
 */
TimeSeries read_series_csv(const std::filesystem::path& path);

struct OutputFormats {
  bool csv = true;
  bool json = true;
};

/// FNV-1a 64 over the little-endian bytes of the component arrays and
/// labels; embedded in result.json so runs can be compared cheaply.
std::string content_checksum(const Decomposition& decomp);

/**
 * Writes `components.csv` (t,y,global,local,residual,label; y is the
 * reconstructed component sum) and/or `result.json` (all arrays, models,
 * parameters, tool version, checksum, optional run-configuration echo).
 * Output is deterministic byte for byte for a given decomposition.
 * Returns the paths written.
 */
std::vector<std::filesystem::path> write_decomposition(
    const Decomposition& decomp, const std::filesystem::path& dir,
    OutputFormats formats = {}, const std::string& run_echo_json = "");

/// Loads a decomposition back from `result.json`, verifying the checksum.
Decomposition read_decomposition(const std::filesystem::path& dir);

/// Writes series.csv, truth.csv and spec.json for one generated dataset.
void write_dataset(const synth::SyntheticSeries& data, const SyntheticSpec& spec,
                   const std::string& id, const std::filesystem::path& dir);

GroundTruth read_truth_csv(const std::filesystem::path& path);

struct ManifestEntry {
  std::string id;
  std::string regime;
  SyntheticSpec spec;
  std::string series_path;  // relative to the manifest directory
  std::string truth_path;
};

/// Generates every dataset of the 3x3 suite under `dir` (one subdirectory
/// per dataset) and writes manifest.json describing them.
std::vector<ManifestEntry> generate_suite(const std::filesystem::path& dir,
                                          std::uint64_t base_seed,
                                          std::size_t length = 2000,
                                          double noise_sigma = 1.0,
                                          double amplitude = 10.0,
                                          double trend_scale = 1.0);

/// Writes manifest.json for an arbitrary dataset list (paths relative to dir).
void write_manifest(const std::filesystem::path& dir,
                    const std::vector<ManifestEntry>& entries,
                    std::uint64_t base_seed);

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);

void write_eval_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_eval_report(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lgtd::io
