#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lgtd/error.hpp"

namespace lgtd {

/**
 * Ordered real-valued observations with an optional strictly increasing
 * index (integer ticks; ISO-8601 timestamps are converted to epoch seconds
 * by the CSV reader). Construction rejects empty input and non-finite
 * values, so every TimeSeries in the system is safe to compute on.
 */
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values);
  TimeSeries(std::vector<double> values, std::vector<std::int64_t> index);

  const std::vector<double>& values() const noexcept { return values_; }
  const std::optional<std::vector<std::int64_t>>& index() const noexcept {
    return index_;
  }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
  std::optional<std::vector<std::int64_t>> index_;
};

/// Validates a raw array and wraps it as a TimeSeries.
/// Throws EmptySeries for length 0 and NonFiniteValue for NaN/Inf entries.
TimeSeries validate_series(std::vector<double> raw);

/**
 * Parameters of the adaptive local-linear-trend extraction.
 *
 * window            length of the regression window that precedes each
 *                   focus range (must allow a slope, so >= 2)
 * max_iterations    hard cap on refinement iterations
 * baseline_percentile  initial acceptance percentile p0 in (0, 100]
 * percentile_step   increment added to the percentile after each iteration
 *                   when update_threshold is on (must then be > 0)
 */
struct LltParams {
  int window = 3;
  int max_iterations = 20;
  double baseline_percentile = 30.0;
  double percentile_step = 10.0;
  bool update_threshold = true;

  void validate() const;  // throws InvalidParams
};

/// One fitted local regime h(t) = slope * t + intercept, valid over the
/// inclusive index range [range_start, range_end] it was fitted for, plus
/// the refinement iteration that produced it.
struct LocalLinearModel {
  double slope = 0.0;
  double intercept = 0.0;
  int range_start = 0;
  int range_end = 0;
  int iteration = 1;
};

/// Output of the local-trend extraction: per-index labels (iteration of
/// assignment, -1 = never assigned), the piecewise-linear reconstruction,
/// and every fitted model in fit order.
struct LltResult {
  std::vector<int> labels;
  std::vector<double> local_trend;
  std::vector<LocalLinearModel> models;
  int iterations_used = 0;
};

inline constexpr int kUnassignedLabel = -1;

/**
 * Choice of global-trend estimator.
 *
 * MovingAverage          centered mean of odd width `window`, truncated to
 *                        the series bounds at the edges
 * PolynomialLeastSquares global OLS polynomial of `degree` (<= 5)
 * LocalRegression        per-point OLS line over the centered window
 */
struct GlobalTrendConfig {
  enum class Kind { MovingAverage, PolynomialLeastSquares, LocalRegression };

  Kind kind = Kind::MovingAverage;
  int window = 5;  // MovingAverage / LocalRegression
  int degree = 1;  // PolynomialLeastSquares

  static GlobalTrendConfig moving_average(int window);
  static GlobalTrendConfig polynomial(int degree);
  static GlobalTrendConfig local_regression(int window);

  void validate() const;                        // structural checks
  void validate_for(std::size_t length) const;  // + WindowTooLarge vs T
};

/// Parameter record carried by every Decomposition so results are
/// self-describing.
struct DecompositionParams {
  GlobalTrendConfig global;
  LltParams llt;
};

/**
 * Full decomposition y = global_trend + local_trend + residual.
 * All arrays share the input length; residual is defined by subtraction
 * (residual[t] = (y[t] - global_trend[t]) - local_trend[t]), so summing
 * the components in that grouping reproduces the input bit for bit.
 */
struct Decomposition {
  std::vector<double> global_trend;
  std::vector<double> local_trend;
  std::vector<double> residual;
  std::vector<int> labels;
  std::vector<LocalLinearModel> models;
  DecompositionParams params;

  std::size_t size() const noexcept { return global_trend.size(); }
};

enum class TrendKind { Linear, InvertedV, Piecewise };
enum class SeasonRegime { Fixed, Transitive, Variable };

/**
 * Declarative recipe for one synthetic benchmark series. `amplitude` may be
 * zero to disable the seasonal component entirely (used by no-season
 * baselines); when it is positive the length must admit at least four full
 * cycles of the largest period the regime can produce.
 */
struct SyntheticSpec {
  TrendKind trend = TrendKind::Linear;
  SeasonRegime season = SeasonRegime::Fixed;
  std::size_t length = 2000;
  double noise_sigma = 1.0;
  std::uint64_t seed = 0;
  double amplitude = 10.0;
  double trend_scale = 1.0;

  void validate() const;  // throws InvalidParams
};

/// Exact components a synthetic series was assembled from;
/// total[t] = trend[t] + seasonal[t] + noise[t] as generated.
struct GroundTruth {
  std::vector<double> trend;
  std::vector<double> seasonal;
  std::vector<double> noise;
  std::vector<double> total;
};

struct ComponentScore {
  double mae = 0.0;
  double mse = 0.0;
};

/// Component-wise evaluation of a decomposition against ground truth.
/// overall_* is the arithmetic mean of the three component scores.
struct EvalReport {
  ComponentScore trend;
  ComponentScore seasonal;
  ComponentScore residual;
  double overall_mae = 0.0;
  double overall_mse = 0.0;
};

}  // namespace lgtd
