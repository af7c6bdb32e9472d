#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "lgtd/llt.hpp"
#include "llt_reference.hpp"
#include "test_util.hpp"

using namespace lgtd;
using test_util::bit_equal;
using test_util::gaussian_series;

namespace {

// Independent closed-form check for a two-parameter least-squares line,
// solved with Cramer's rule on the raw normal equations.
struct CramerLine {
  double slope;
  double intercept;
};

CramerLine cramer_ols(const std::vector<std::pair<double, double>>& points) {
  double s = 0, st = 0, stt = 0, sy = 0, sty = 0;
  for (const auto& [t, y] : points) {
    s += 1.0;
    st += t;
    stt += t * t;
    sy += y;
    sty += t * y;
  }
  const double det = s * stt - st * st;
  return {(s * sty - st * sy) / det, (sy * stt - st * sty) / det};
}

void check_matches_reference(const std::vector<double>& y, const LltParams& params) {
  const auto got = llt::run(y, params);
  const auto want = llt_reference::run(y, params.window, params.max_iterations,
                                       params.baseline_percentile,
                                       params.percentile_step,
                                       params.update_threshold);
  REQUIRE(got.labels == want.labels);
  REQUIRE(bit_equal(got.local_trend, want.local_trend));
  REQUIRE(got.iterations_used == want.iterations_used);
  REQUIRE(got.models.size() == want.models.size());
  for (std::size_t i = 0; i < got.models.size(); ++i) {
    CHECK(got.models[i].slope ==
          doctest::Approx(want.models[i].slope).epsilon(1e-12));
    CHECK(got.models[i].intercept ==
          doctest::Approx(want.models[i].intercept).epsilon(1e-12));
    CHECK(got.models[i].range_start == want.models[i].range_start);
    CHECK(got.models[i].range_end == want.models[i].range_end);
    CHECK(got.models[i].iteration == want.models[i].iteration);
  }
}

}  // namespace

TEST_SUITE("llt") {

TEST_CASE("partition_ranges forms maximal contiguous runs") {
  using llt::FocusRange;
  auto same = [](const std::vector<FocusRange>& got,
                 const std::vector<std::pair<int, int>>& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].start != want[i].first || got[i].end != want[i].second) {
        return false;
      }
    }
    return true;
  };

  CHECK(same(llt::partition_ranges({3, 4, 5, 9, 10}), {{3, 5}, {9, 10}}));
  CHECK(same(llt::partition_ranges({7}), {{7, 7}}));
  CHECK(same(llt::partition_ranges({2, 4, 6}), {{2, 2}, {4, 4}, {6, 6}}));

  CHECK_THROWS_AS(llt::partition_ranges({}), Error);
  try {
    llt::partition_ranges({});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyFocus);
  }
}

TEST_CASE("fit_window_ols on an exact line") {
  const std::vector<double> y = {0, 1, 2, 3, 4, 5};
  const auto model = llt::fit_window_ols(y, {3, 5}, 3);
  CHECK(model.slope == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(model.intercept == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(model.range_start == 3);
  CHECK(model.range_end == 5);
}

TEST_CASE("fit_window_ols on a constant") {
  const std::vector<double> y = {5, 5, 5, 5};
  const auto model = llt::fit_window_ols(y, {2, 3}, 2);
  CHECK(model.slope == doctest::Approx(0.0));
  CHECK(model.intercept == doctest::Approx(5.0));
}

TEST_CASE("fit_window_ols matches an independent closed-form solution") {
  const std::vector<double> y = {0, 2, 1, 4, 3, 6};
  const auto model = llt::fit_window_ols(y, {4, 5}, 3);
  // Window indices are {1, 2, 3}; solve the same system with Cramer's rule.
  const auto line = cramer_ols({{1, 2}, {2, 1}, {3, 4}});
  CHECK(line.slope == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(line.intercept == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(model.slope == doctest::Approx(line.slope).epsilon(1e-12));
  CHECK(model.intercept == doctest::Approx(line.intercept).epsilon(1e-12));
}

TEST_CASE("fit_window_ols degenerate and invalid ranges") {
  const std::vector<double> y = {1, 2, 3, 4, 5};
  // range [1,1] leaves only index 0 in the window: one point, no slope.
  try {
    llt::fit_window_ols(y, {1, 1}, 3);
    FAIL("expected DegenerateWindow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateWindow);
  }
  // A truncated two-point window is still fittable.
  CHECK_NOTHROW(llt::fit_window_ols(y, {1, 2}, 3));
  CHECK_THROWS_AS(llt::fit_window_ols(y, {0, 2}, 3), Error);
  CHECK_THROWS_AS(llt::fit_window_ols(y, {3, 2}, 3), Error);
}

TEST_CASE("predict evaluates the line at absolute indices") {
  CHECK(llt::predict({1.0, 0.0, 0, 0, 1}, 7) == 7.0);
  CHECK(llt::predict({0.0, 5.0, 0, 0, 1}, 0) == 5.0);
  const double third = 1.0 / 3.0;
  CHECK(llt::predict({1.0, third, 0, 0, 1}, 4) ==
        doctest::Approx(13.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("percentile saturates at and above 100") {
  CHECK(llt::percentile({1, 2, 3, 4}, 100.0) == 4.0);
  CHECK(llt::percentile({1, 2, 3, 4}, 150.0) == 4.0);
}

TEST_CASE("percentile interpolates linearly between closest ranks") {
  CHECK(llt::percentile({0.0, 10.0}, 50.0) == 5.0);
  CHECK(llt::percentile({4.0, 1.0, 3.0, 2.0}, 50.0) == doctest::Approx(2.5));
  CHECK(llt::percentile({7.0}, 30.0) == 7.0);
}

TEST_CASE("percentile input validation") {
  try {
    llt::percentile({}, 50.0);
    FAIL("expected EmptyErrors");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyErrors);
  }
  CHECK_THROWS_AS(llt::percentile({1.0}, 0.0), Error);
}

TEST_CASE("an exact line is fully explained in one iteration") {
  std::vector<double> y(50);
  for (int t = 0; t < 50; ++t) {
    y[t] = 2.0 * t + 1.0;
  }
  LltParams params;  // w=3, p0=30, dp=10, update on
  const auto result = llt::run(y, params);

  CHECK(result.iterations_used == 1);
  for (int t = 0; t < 50; ++t) {
    if (t < params.window) {
      CHECK(result.labels[t] == kUnassignedLabel);
    } else {
      CHECK(result.labels[t] == 1);
    }
    // Exact for every index: the prefix is backfilled from the same line.
    CHECK(result.local_trend[t] == 2.0 * t + 1.0);
  }
}

TEST_CASE("termination bound holds whenever the threshold grows") {
  Xoshiro256pp rng(2024);
  for (int rep = 0; rep < 25; ++rep) {
    LltParams params;
    params.window = 2 + static_cast<int>(rng.next_below(4));
    params.baseline_percentile = 5.0 + 90.0 * rng.next_double();
    params.percentile_step = 1.0 + 24.0 * rng.next_double();
    params.update_threshold = true;
    params.max_iterations = 60;

    const int bound = llt::termination_bound(params);
    const auto y = gaussian_series(150 + rng.next_below(150), 500 + rep);
    const auto result = llt::run(y, params);

    CHECK(result.iterations_used <= bound);
    for (std::size_t t = params.window; t < y.size(); ++t) {
      CHECK(result.labels[t] != kUnassignedLabel);
    }
  }
}

TEST_CASE("fractional percentile steps cannot delay termination") {
  // 30 + 100 * 0.7 sums to just under 100 in floating point; the schedule
  // must still saturate at its bound iteration.
  LltParams params;
  params.baseline_percentile = 30.0;
  params.percentile_step = 0.7;
  params.max_iterations = 500;
  const int bound = llt::termination_bound(params);
  const auto y = gaussian_series(2000, 424242);
  const auto result = llt::run(y, params);
  CHECK(result.iterations_used <= bound);
  for (std::size_t t = params.window; t < y.size(); ++t) {
    CHECK(result.labels[t] != kUnassignedLabel);
  }
  check_matches_reference(y, params);
}

TEST_CASE("focus shrinks monotonically and strictly") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const auto y = gaussian_series(200, seed);
    const auto ref = llt_reference::run(y, 3, 20, 30.0, 10.0, true);
    for (std::size_t k = 1; k < ref.focus_sizes.size(); ++k) {
      CHECK(ref.focus_sizes[k] < ref.focus_sizes[k - 1]);
    }
  }
}

TEST_CASE("assigned errors respect the iteration threshold") {
  const auto y = gaussian_series(300, 77);
  LltParams params;
  const auto result = llt::run(y, params);
  const auto ref = llt_reference::run(y, params.window, params.max_iterations,
                                      params.baseline_percentile,
                                      params.percentile_step, true);
  REQUIRE(result.labels == ref.labels);
  for (std::size_t t = 0; t < y.size(); ++t) {
    const int label = result.labels[t];
    if (label >= 1) {
      CHECK(std::abs(y[t] - result.local_trend[t]) <=
            ref.taus[static_cast<std::size_t>(label) - 1]);
    }
  }
}

TEST_CASE("labels stay in the documented domain") {
  const auto y = gaussian_series(120, 9);
  LltParams params;
  params.max_iterations = 5;
  params.update_threshold = false;
  params.percentile_step = 0.0;
  params.baseline_percentile = 20.0;
  const auto result = llt::run(y, params);
  for (std::size_t t = 0; t < y.size(); ++t) {
    const int label = result.labels[t];
    CHECK((label == kUnassignedLabel ||
           (label >= 1 && label <= params.max_iterations)));
    if (t < static_cast<std::size_t>(params.window)) {
      CHECK(label == kUnassignedLabel);
    }
    CHECK(std::isfinite(result.local_trend[t]));
    if (label >= 1) {
      // Every assigned index is covered by a model from its iteration.
      const bool covered = std::any_of(
          result.models.begin(), result.models.end(),
          [&](const LocalLinearModel& m) {
            return m.iteration == label &&
                   m.range_start <= static_cast<int>(t) &&
                   static_cast<int>(t) <= m.range_end;
          });
      CHECK(covered);
    }
  }
}

TEST_CASE("exhausted iterations leave honest -1 labels with finite output") {
  const auto y = gaussian_series(200, 41);
  LltParams params;
  params.max_iterations = 1;
  params.baseline_percentile = 10.0;
  params.update_threshold = false;
  params.percentile_step = 0.0;
  const auto result = llt::run(y, params);

  int unassigned = 0;
  for (std::size_t t = params.window; t < y.size(); ++t) {
    if (result.labels[t] == kUnassignedLabel) {
      ++unassigned;
    }
    CHECK(std::isfinite(result.local_trend[t]));
  }
  CHECK(unassigned > 0);  // one 10th-percentile pass cannot absorb everything
  check_matches_reference(y, params);
}

TEST_CASE("series no longer than the window comes back all-unassigned") {
  const std::vector<double> y = {1.0, 2.0, 3.0};
  LltParams params;
  params.window = 3;
  const auto result = llt::run(y, params);
  CHECK(result.iterations_used == 0);
  CHECK(result.models.empty());
  for (std::size_t t = 0; t < y.size(); ++t) {
    CHECK(result.labels[t] == kUnassignedLabel);
    CHECK(result.local_trend[t] == 0.0);
  }
}

TEST_CASE("invalid parameters are rejected") {
  const auto y = gaussian_series(50, 1);
  LltParams params;
  params.window = 1;
  CHECK_THROWS_AS(llt::run(y, params), Error);
}

TEST_CASE("matches the reference transcription on random inputs") {
  Xoshiro256pp rng(515151);
  for (int rep = 0; rep < 10; ++rep) {
    const auto params = test_util::random_params(rng);
    const std::size_t length =
        static_cast<std::size_t>(params.window) + 2 + rng.next_below(180);
    const double drift = (rng.next_double() - 0.5) * 0.4;
    const auto y = gaussian_series(length, 900 + rep, 1.0, drift);
    CAPTURE(rep);
    check_matches_reference(y, params);
  }
}

TEST_CASE("shifting the input shifts the reconstruction only") {
  Xoshiro256pp rng(6161);
  for (int rep = 0; rep < 10; ++rep) {
    const auto y = gaussian_series(150, 700 + rep);
    const double c = (rng.next_double() - 0.5) * 200.0;
    std::vector<double> shifted(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
      shifted[t] = y[t] + c;
    }
    LltParams params;
    const auto base = llt::run(y, params);
    const auto moved = llt::run(shifted, params);
    REQUIRE(moved.labels == base.labels);
    for (std::size_t t = 0; t < y.size(); ++t) {
      const double want = base.local_trend[t] + c;
      CHECK(moved.local_trend[t] ==
            doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("positive power-of-two scaling is exactly equivariant") {
  for (double c : {0.25, 0.5, 2.0, 8.0}) {
    const auto y = gaussian_series(150, 321);
    std::vector<double> scaled(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
      scaled[t] = c * y[t];
    }
    LltParams params;
    const auto base = llt::run(y, params);
    const auto result = llt::run(scaled, params);
    REQUIRE(result.labels == base.labels);
    for (std::size_t t = 0; t < y.size(); ++t) {
      CHECK(bit_equal(result.local_trend[t], c * base.local_trend[t]));
    }
  }
}

TEST_CASE("general positive scaling preserves labels") {
  Xoshiro256pp rng(8181);
  for (int rep = 0; rep < 10; ++rep) {
    const auto y = gaussian_series(150, 4000 + rep);
    const double c = 0.1 + 9.9 * rng.next_double();
    std::vector<double> scaled(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
      scaled[t] = c * y[t];
    }
    LltParams params;
    const auto base = llt::run(y, params);
    const auto result = llt::run(scaled, params);
    REQUIRE(result.labels == base.labels);
    for (std::size_t t = 0; t < y.size(); ++t) {
      CHECK(result.local_trend[t] ==
            doctest::Approx(c * base.local_trend[t]).epsilon(1e-9));
    }
  }
}

}  // TEST_SUITE
