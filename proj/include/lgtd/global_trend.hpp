#pragma once

#include <cstddef>
#include <vector>

#include "lgtd/types.hpp"

namespace lgtd {

/**
 * Fits the smooth global trend with the configured estimator and returns it
 * evaluated at every index.
 *
 * MovingAverage averages the centered window truncated to the series
 * bounds. PolynomialLeastSquares fits one global polynomial (internally on
 * the scaled coordinate t' = (t - (T-1)/2) / ((T-1)/2) to keep the normal
 * equations well conditioned). LocalRegression fits an OLS line over the
 * centered window at each point and evaluates it there.
 */
std::vector<double> fit_global(const std::vector<double>& y,
                               const GlobalTrendConfig& config);

/// r[t] = y[t] - g[t]. Throws LengthMismatch when sizes differ.
std::vector<double> detrend(const std::vector<double>& y,
                            const std::vector<double>& g);

/// Default estimator for a series of the given length: a centered moving
/// average whose window is the smallest odd integer >= length/4, clamped
/// to [5, length rounded down to odd].
GlobalTrendConfig default_global_config(std::size_t length);

/// Default odd smoothing window for the given length (same rule as
/// default_global_config), reusable for LocalRegression.
int default_global_window(std::size_t length);

}  // namespace lgtd
