#include "lgtd/types.hpp"

#include <cmath>
#include <string>

namespace lgtd {

namespace {

void check_finite(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::NonFiniteValue,
                  "non-finite value at index " + std::to_string(i));
    }
  }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorKind::EmptySeries, "series must contain at least one value");
  }
  check_finite(values_);
}

TimeSeries::TimeSeries(std::vector<double> values, std::vector<std::int64_t> index)
    : TimeSeries(std::move(values)) {
  if (index.size() != values_.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "index length " + std::to_string(index.size()) +
                    " does not match series length " + std::to_string(values_.size()));
  }
  for (std::size_t i = 1; i < index.size(); ++i) {
    if (index[i] <= index[i - 1]) {
      throw Error(ErrorKind::NonMonotoneIndex,
                  "index must be strictly increasing (violated at position " +
                      std::to_string(i) + ")");
    }
  }
  index_ = std::move(index);
}

TimeSeries validate_series(std::vector<double> raw) {
  return TimeSeries(std::move(raw));
}

void LltParams::validate() const {
  if (window < 2) {
    throw Error(ErrorKind::InvalidParams, "window must be at least 2");
  }
  if (max_iterations < 1) {
    throw Error(ErrorKind::InvalidParams, "max_iterations must be positive");
  }
  if (!(baseline_percentile > 0.0) || baseline_percentile > 100.0) {
    throw Error(ErrorKind::InvalidParams,
                "baseline_percentile must lie in (0, 100]");
  }
  if (percentile_step < 0.0) {
    throw Error(ErrorKind::InvalidParams, "percentile_step must be >= 0");
  }
  if (update_threshold && !(percentile_step > 0.0)) {
    throw Error(ErrorKind::InvalidParams,
                "percentile_step must be > 0 when update_threshold is on");
  }
}

GlobalTrendConfig GlobalTrendConfig::moving_average(int window) {
  GlobalTrendConfig cfg;
  cfg.kind = Kind::MovingAverage;
  cfg.window = window;
  return cfg;
}

GlobalTrendConfig GlobalTrendConfig::polynomial(int degree) {
  GlobalTrendConfig cfg;
  cfg.kind = Kind::PolynomialLeastSquares;
  cfg.degree = degree;
  return cfg;
}

GlobalTrendConfig GlobalTrendConfig::local_regression(int window) {
  GlobalTrendConfig cfg;
  cfg.kind = Kind::LocalRegression;
  cfg.window = window;
  return cfg;
}

void GlobalTrendConfig::validate() const {
  switch (kind) {
    case Kind::MovingAverage:
    case Kind::LocalRegression:
      if (window < 1 || window % 2 == 0) {
        throw Error(ErrorKind::InvalidParams,
                    "smoothing window must be an odd positive integer");
      }
      break;
    case Kind::PolynomialLeastSquares:
      if (degree < 0) {
        throw Error(ErrorKind::InvalidParams, "degree must be non-negative");
      }
      if (degree > 5) {
        throw Error(ErrorKind::DegreeTooHigh, "degree must be at most 5");
      }
      break;
  }
}

void GlobalTrendConfig::validate_for(std::size_t length) const {
  validate();
  if (kind != Kind::PolynomialLeastSquares &&
      static_cast<std::size_t>(window) > length) {
    throw Error(ErrorKind::WindowTooLarge,
                "smoothing window " + std::to_string(window) +
                    " exceeds series length " + std::to_string(length));
  }
}

void SyntheticSpec::validate() const {
  if (length < 2) {
    throw Error(ErrorKind::InvalidParams, "length must be at least 2");
  }
  if (noise_sigma < 0.0) {
    throw Error(ErrorKind::InvalidParams, "noise_sigma must be >= 0");
  }
  if (amplitude < 0.0) {
    throw Error(ErrorKind::InvalidParams, "amplitude must be >= 0");
  }
  if (!(trend_scale > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "trend_scale must be > 0");
  }
  if (amplitude > 0.0) {
    // Require at least four full cycles of the largest period the chosen
    // regime can produce.
    const std::size_t max_period = season == SeasonRegime::Variable ? 490 : 120;
    if (length < 4 * max_period) {
      throw Error(ErrorKind::InvalidParams,
                  "length " + std::to_string(length) +
                      " is too short for the seasonal regime (need >= " +
                      std::to_string(4 * max_period) + ")");
    }
  }
}

}  // namespace lgtd
