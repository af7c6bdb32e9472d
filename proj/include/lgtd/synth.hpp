#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgtd/types.hpp"

namespace lgtd::synth {

/// Per-index seasonal period, piecewise-constant over the series.
struct PeriodSchedule {
  std::vector<int> period_at;
};

// Generator constants. Slopes and amplitude are chosen so the seasonal
// signal sits well above the unit-noise floor; all of them are recorded in
// output metadata so runs are self-describing.
inline constexpr double kLinearSlope = 0.02;
inline constexpr double kPiecewiseSlopes[3] = {0.03, -0.01, 0.05};
inline constexpr int kFixedPeriod = 120;
inline constexpr int kTransitiveSecondPeriod = 60;
inline constexpr int kVariablePeriodMin = 72;
inline constexpr int kVariablePeriodStep = 15;
inline constexpr int kVariablePeriodCount = 28;  // 72, 87, ..., 477 (< 490)

/**
 * Deterministic trend component.
 * Linear: 0.02 * scale * t. InvertedV: rises to an apex at T/2 and falls
 * symmetrically. Piecewise: three segments with slopes (0.03, -0.01, 0.05)
 * * scale, continuous at breakpoints floor(T/3) and floor(2T/3).
 */
std::vector<double> gen_trend(TrendKind kind, std::size_t length,
                              double trend_scale);

/// Period schedule for a regime. Fixed: 120 throughout. Transitive: 120 for
/// the first half, 60 afterwards. Variable: successive whole cycles, each
/// cycle's period drawn (seeded) from {72, 87, ..., 477}; the final cycle
/// may be cut off by the series end.
PeriodSchedule gen_period_schedule(SeasonRegime regime, std::size_t length,
                                   std::uint64_t seed);

/// Phase-continuous sinusoid: s[t] = amplitude * sin(phi_t) with phi_0 = 0
/// and phi_{t+1} = phi_t + 2*pi / period_at(t), so period switches do not
/// introduce jumps.
std::vector<double> gen_seasonal(const PeriodSchedule& schedule,
                                 double amplitude, std::size_t length);

struct SyntheticSeries {
  TimeSeries series;
  GroundTruth truth;
};

/// Assembles trend + seasonal + seeded Gaussian noise and returns the
/// series together with its exact components. The period and noise streams
/// are derived from the spec seed with splitmix64, so equal specs produce
/// bit-identical output.
SyntheticSeries gen_series(const SyntheticSpec& spec);

struct SuiteDataset {
  std::string id;  // synth1 .. synth9
  SyntheticSpec spec;
};

/// The nine-dataset benchmark grid (3 trends x 3 seasonality regimes),
/// trend-major: synth1 = Linear-Fixed ... synth9 = Piecewise-Variable.
/// Per-dataset seeds are derived from base_seed.
std::vector<SuiteDataset> suite_specs(std::uint64_t base_seed,
                                      std::size_t length = 2000,
                                      double noise_sigma = 1.0,
                                      double amplitude = 10.0,
                                      double trend_scale = 1.0);

std::string to_string(TrendKind kind);
std::string to_string(SeasonRegime regime);
TrendKind trend_from_string(const std::string& token);
SeasonRegime season_from_string(const std::string& token);

}  // namespace lgtd::synth
