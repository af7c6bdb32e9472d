#pragma once

#include <vector>

#include "lgtd/types.hpp"

namespace lgtd::llt {

/// Inclusive run of indices still awaiting a local-trend assignment.
struct FocusRange {
  int start = 0;
  int end = 0;
};

/// Sorted, duplicate-free set of indices awaiting assignment.
using FocusSet = std::vector<int>;

/// Splits a focus set into maximal contiguous ranges, ascending. Consecutive
/// ranges are separated by at least one assigned index.
/// Throws EmptyFocus when the set is empty.
std::vector<FocusRange> partition_ranges(const FocusSet& focus);

/**
 * Ordinary least squares line over the window preceding `range`:
 * indices t_start = max(0, range.start - window) through
 * t_end = min(range.end - 1, t_start + window - 1). Slope and intercept are
 * expressed in the original time coordinate, so predictions use absolute t.
 * A window shorter than `window` points (possible only when range.start <
 * window) is fitted as long as it has at least two points; otherwise
 * DegenerateWindow is thrown.
 */
LocalLinearModel fit_window_ols(const std::vector<double>& y, FocusRange range,
                                int window, int iteration = 1);

/// Evaluates the fitted line at index t (extrapolation is allowed).
double predict(const LocalLinearModel& model, int t);

/**
 * Percentile with the linear-interpolation (closest-ranks) convention:
 * for p < 100, h = (p/100)*(n-1) over the ascending sort, interpolating
 * between floor(h) and ceil(h). Any p >= 100 returns the maximum.
 * Throws EmptyErrors on empty input and InvalidParams for p <= 0.
 */
double percentile(std::vector<double> errors, double p);

/// Smallest iteration count at which the percentile schedule reaches 100
/// and therefore forces full assignment: 1 + ceil((100 - p0) / step).
/// Only meaningful when update_threshold is on.
int termination_bound(const LltParams& params);

/**
 * Adaptive local-linear-trend extraction.
 *
 * Iteratively partitions the unexplained indices into contiguous focus
 * ranges of at most `window` indices each, fits one window regression per
 * range, extrapolates it across the range, and permanently assigns every
 * focused index whose absolute prediction error is at or below the current
 * percentile threshold. Capping the range length keeps every prediction
 * within `window` steps of the points it was fitted on. The threshold
 * percentile grows by percentile_step per iteration when update_threshold
 * is on and saturates (selects the maximum error) from the bound iteration
 * onward, which guarantees termination within termination_bound(params)
 * iterations.
 *
 * Indices before `window` are never focused; their labels stay -1 and their
 * local_trend values are backfilled by extrapolating the first fitted model
 * backwards. If max_iterations is exhausted with a nonempty focus set
 * (possible with update_threshold off), the leftover indices keep label -1
 * and take the prediction from the final iteration, so local_trend is
 * finite everywhere.
 *
 * When the series has no focusable index at all (size <= window) the result
 * is all-unassigned with a zero local trend.
 */
LltResult run(const std::vector<double>& y, const LltParams& params);

}  // namespace lgtd::llt
