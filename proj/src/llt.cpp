#include "lgtd/llt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lgtd::llt {

std::vector<FocusRange> partition_ranges(const FocusSet& focus) {
  if (focus.empty()) {
    throw Error(ErrorKind::EmptyFocus, "cannot partition an empty focus set");
  }
  std::vector<FocusRange> ranges;
  int start = focus.front();
  int prev = focus.front();
  for (std::size_t i = 1; i < focus.size(); ++i) {
    if (focus[i] == prev + 1) {
      prev = focus[i];
    } else {
      ranges.push_back({start, prev});
      start = prev = focus[i];
    }
  }
  ranges.push_back({start, prev});
  return ranges;
}

LocalLinearModel fit_window_ols(const std::vector<double>& y, FocusRange range,
                                int window, int iteration) {
  const int n = static_cast<int>(y.size());
  if (window < 2) {
    throw Error(ErrorKind::InvalidParams, "window must be at least 2");
  }
  if (range.start < 1 || range.end < range.start || range.end >= n) {
    throw Error(ErrorKind::InvalidParams,
                "focus range [" + std::to_string(range.start) + ", " +
                    std::to_string(range.end) + "] out of bounds");
  }
  const int t_start = std::max(0, range.start - window);
  const int t_end = std::min(range.end - 1, t_start + window - 1);
  const int count = t_end - t_start + 1;
  if (count < 2) {
    throw Error(ErrorKind::DegenerateWindow,
                "regression window before range [" +
                    std::to_string(range.start) + ", " +
                    std::to_string(range.end) + "] has fewer than two points");
  }

  double sum_t = 0.0;
  double sum_y = 0.0;
  for (int t = t_start; t <= t_end; ++t) {
    sum_t += t;
    sum_y += y[t];
  }
  const double mean_t = sum_t / count;
  const double mean_y = sum_y / count;

  // Integer abscissae are distinct, so sxx > 0 and the fit never degenerates.
  double sxx = 0.0;
  double sxy = 0.0;
  for (int t = t_start; t <= t_end; ++t) {
    const double dt = t - mean_t;
    sxx += dt * dt;
    sxy += dt * (y[t] - mean_y);
  }
  const double slope = sxy / sxx;
  const double intercept = mean_y - slope * mean_t;
  return {slope, intercept, range.start, range.end, iteration};
}

double predict(const LocalLinearModel& model, int t) {
  return model.slope * static_cast<double>(t) + model.intercept;
}

double percentile(std::vector<double> errors, double p) {
  if (errors.empty()) {
    throw Error(ErrorKind::EmptyErrors, "percentile of an empty error set");
  }
  if (!(p > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "percentile requires p > 0");
  }
  std::sort(errors.begin(), errors.end());
  if (p >= 100.0) {
    return errors.back();  // saturation: any p >= 100 selects the maximum
  }
  const std::size_t n = errors.size();
  const double h = (p / 100.0) * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) {
    return errors.back();
  }
  const double frac = h - static_cast<double>(lo);
  return errors[lo] + frac * (errors[lo + 1] - errors[lo]);
}

int termination_bound(const LltParams& params) {
  if (params.baseline_percentile >= 100.0) {
    return 1;
  }
  if (!(params.percentile_step > 0.0)) {
    throw Error(ErrorKind::InvalidParams,
                "termination bound requires a positive percentile_step");
  }
  const double steps =
      std::ceil((100.0 - params.baseline_percentile) / params.percentile_step);
  return 1 + static_cast<int>(steps);
}

LltResult run(const std::vector<double>& y, const LltParams& params) {
  params.validate();
  const int n = static_cast<int>(y.size());
  const int w = params.window;

  LltResult result;
  result.labels.assign(y.size(), kUnassignedLabel);
  result.local_trend.assign(y.size(),
                            std::numeric_limits<double>::quiet_NaN());

  FocusSet focus;
  for (int t = w; t < n; ++t) {
    focus.push_back(t);
  }

  std::vector<double> predicted(y.size(),
                                std::numeric_limits<double>::quiet_NaN());
  std::vector<double> errors;
  double p = params.baseline_percentile;

  // With a growing schedule the percentile reaches 100 exactly at the
  // termination bound; saturate by iteration count so accumulation rounding
  // in p can never delay the final full-assignment pass.
  const int saturation_iteration =
      params.update_threshold && params.percentile_step > 0.0
          ? termination_bound(params)
          : std::numeric_limits<int>::max();

  for (int k = 1; k <= params.max_iterations; ++k) {
    if (focus.empty()) {
      break;
    }
    result.iterations_used = k;

    const auto runs = partition_ranges(focus);
    errors.clear();
    std::fill(predicted.begin(), predicted.end(),
              std::numeric_limits<double>::quiet_NaN());

    // Each contiguous run is processed in ranges of at most `w` indices so
    // every prediction stays within `w` steps of its regression window;
    // unbounded ranges would extrapolate a short-window line arbitrarily
    // far and poison the percentile threshold. Errors are accumulated range
    // by range in ascending order, t ascending within each range.
    for (const auto& run_range : runs) {
      for (int start = run_range.start; start <= run_range.end; start += w) {
        const FocusRange range{start, std::min(run_range.end, start + w - 1)};
        const LocalLinearModel model = fit_window_ols(y, range, w, k);
        result.models.push_back(model);
        for (int t = range.start; t <= range.end; ++t) {
          predicted[t] = predict(model, t);
          errors.push_back(std::abs(y[t] - predicted[t]));
        }
      }
    }

    const double tau =
        percentile(errors, k >= saturation_iteration ? 100.0 : p);

    FocusSet still_focused;
    still_focused.reserve(focus.size());
    for (int t : focus) {
      if (std::abs(y[t] - predicted[t]) <= tau) {
        result.labels[t] = k;
        result.local_trend[t] = predicted[t];
      } else {
        still_focused.push_back(t);
      }
    }
    focus = std::move(still_focused);

    if (params.update_threshold) {
      p += params.percentile_step;
    }
  }

  // A growing percentile schedule must have emptied the focus set by the
  // bound; anything else is a logic error.
  if (params.update_threshold && params.percentile_step > 0.0 &&
      params.max_iterations >= termination_bound(params)) {
    if (!focus.empty() || result.iterations_used > termination_bound(params)) {
      throw std::logic_error("refinement failed to terminate within its bound");
    }
  }

  // Leftover indices (max_iterations exhausted) keep label -1 but take the
  // prediction from the final iteration so the local trend stays finite.
  for (int t : focus) {
    result.local_trend[t] = predicted[t];
  }

  if (!result.models.empty()) {
    // Backfill the never-focused prefix by extrapolating the earliest model.
    const LocalLinearModel& first = result.models.front();
    for (int t = 0; t < std::min(w, n); ++t) {
      result.local_trend[t] = predict(first, t);
    }
  } else {
    // No focusable index at all (n <= w): all-unassigned, zero trend.
    std::fill(result.local_trend.begin(), result.local_trend.end(), 0.0);
  }

  return result;
}

}  // namespace lgtd::llt
