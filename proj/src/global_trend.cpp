#include "lgtd/global_trend.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace lgtd {

namespace {

std::vector<double> moving_average(const std::vector<double>& y, int window) {
  const int n = static_cast<int>(y.size());
  const int half = window / 2;
  std::vector<double> prefix(y.size() + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + y[i];
  }
  std::vector<double> g(y.size());
  for (int t = 0; t < n; ++t) {
    const int lo = std::max(0, t - half);
    const int hi = std::min(n - 1, t + half);
    g[t] = (prefix[hi + 1] - prefix[lo]) / (hi - lo + 1);
  }
  return g;
}

std::vector<double> local_regression(const std::vector<double>& y, int window) {
  const int n = static_cast<int>(y.size());
  const int half = window / 2;
  std::vector<double> g(y.size());
  for (int t = 0; t < n; ++t) {
    const int lo = std::max(0, t - half);
    const int hi = std::min(n - 1, t + half);
    const int count = hi - lo + 1;
    if (count < 2) {
      g[t] = y[lo];
      continue;
    }
    double sum_t = 0.0, sum_y = 0.0;
    for (int i = lo; i <= hi; ++i) {
      sum_t += i;
      sum_y += y[i];
    }
    const double mean_t = sum_t / count;
    const double mean_y = sum_y / count;
    double sxx = 0.0, sxy = 0.0;
    for (int i = lo; i <= hi; ++i) {
      const double dt = i - mean_t;
      sxx += dt * dt;
      sxy += dt * (y[i] - mean_y);
    }
    const double slope = sxy / sxx;
    g[t] = slope * (t - mean_t) + mean_y;
  }
  return g;
}

// Gaussian elimination with partial pivoting; the systems here are at most
// 6x6, so nothing fancier is needed.
std::array<double, 6> solve_normal_equations(std::array<std::array<double, 6>, 6>& a,
                                             std::array<double, 6>& b, int m) {
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int row = col + 1; row < m; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) {
        pivot = row;
      }
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int row = col + 1; row < m; ++row) {
      const double factor = a[row][col] / a[col][col];
      for (int k = col; k < m; ++k) {
        a[row][k] -= factor * a[col][k];
      }
      b[row] -= factor * b[col];
    }
  }
  std::array<double, 6> x{};
  for (int row = m - 1; row >= 0; --row) {
    double acc = b[row];
    for (int k = row + 1; k < m; ++k) {
      acc -= a[row][k] * x[k];
    }
    x[row] = acc / a[row][row];
  }
  return x;
}

std::vector<double> polynomial_fit(const std::vector<double>& y, int degree) {
  const int n = static_cast<int>(y.size());
  const int m = degree + 1;
  const double center = (n - 1) / 2.0;
  const double scale = n > 1 ? (n - 1) / 2.0 : 1.0;

  // Accumulate sums of x^j and y*x^j on the scaled coordinate.
  std::array<double, 11> xpow_sums{};
  std::array<double, 6> rhs{};
  for (int t = 0; t < n; ++t) {
    const double x = (t - center) / scale;
    double xp = 1.0;
    for (int j = 0; j < 2 * m - 1; ++j) {
      xpow_sums[j] += xp;
      if (j < m) {
        rhs[j] += y[t] * xp;
      }
      xp *= x;
    }
  }

  std::array<std::array<double, 6>, 6> gram{};
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      gram[j][k] = xpow_sums[j + k];
    }
  }
  const auto coeffs = solve_normal_equations(gram, rhs, m);

  std::vector<double> g(y.size());
  for (int t = 0; t < n; ++t) {
    const double x = (t - center) / scale;
    double value = coeffs[m - 1];
    for (int j = m - 2; j >= 0; --j) {
      value = value * x + coeffs[j];
    }
    g[t] = value;
  }
  return g;
}

}  // namespace

std::vector<double> fit_global(const std::vector<double>& y,
                               const GlobalTrendConfig& config) {
  if (y.empty()) {
    throw Error(ErrorKind::EmptySeries, "cannot fit a global trend to an empty series");
  }
  config.validate_for(y.size());
  switch (config.kind) {
    case GlobalTrendConfig::Kind::MovingAverage:
      return moving_average(y, config.window);
    case GlobalTrendConfig::Kind::LocalRegression:
      return local_regression(y, config.window);
    case GlobalTrendConfig::Kind::PolynomialLeastSquares:
      return polynomial_fit(y, config.degree);
  }
  throw Error(ErrorKind::InvalidParams, "unknown global trend kind");
}

std::vector<double> detrend(const std::vector<double>& y,
                            const std::vector<double>& g) {
  if (y.size() != g.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "series length " + std::to_string(y.size()) +
                    " does not match trend length " + std::to_string(g.size()));
  }
  std::vector<double> r(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) {
    r[t] = y[t] - g[t];
  }
  return r;
}

int default_global_window(std::size_t length) {
  // A quarter of the series covers at least one full cycle of the longest
  // seasonality worth modelling (generated periods never exceed length/4),
  // so the average suppresses seasonal content instead of tracking it.
  const std::size_t upper = length % 2 == 1 ? length : length - 1;
  std::size_t window = (length + 3) / 4;
  if (window % 2 == 0) {
    ++window;
  }
  window = std::max<std::size_t>(window, 5);
  window = std::min(window, upper);
  return static_cast<int>(window);
}

GlobalTrendConfig default_global_config(std::size_t length) {
  return GlobalTrendConfig::moving_average(default_global_window(length));
}

}  // namespace lgtd
