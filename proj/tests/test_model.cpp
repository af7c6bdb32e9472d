#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "lgtd/global_trend.hpp"
#include "lgtd/pipeline.hpp"
#include "lgtd/types.hpp"
#include "test_util.hpp"

using namespace lgtd;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::logic_error("expected an lgtd::Error");
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("validate_series accepts well-formed input") {
  const auto series = validate_series({1.0, 2.0, 3.0});
  CHECK(series.size() == 3);
  CHECK(series.values()[2] == 3.0);
  CHECK(!series.index().has_value());
}

TEST_CASE("validate_series rejects empty input") {
  CHECK(kind_of([] { validate_series({}); }) == ErrorKind::EmptySeries);
}

TEST_CASE("validate_series rejects non-finite values with the index") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    validate_series({1.0, nan});
    FAIL("expected NonFiniteValue");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteValue);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
  CHECK(kind_of([&] {
          validate_series({std::numeric_limits<double>::infinity()});
        }) == ErrorKind::NonFiniteValue);
}

TEST_CASE("TimeSeries index must be strictly increasing and aligned") {
  CHECK_NOTHROW(TimeSeries({1.0, 2.0}, {10, 20}));
  CHECK(kind_of([] { TimeSeries({1.0, 2.0}, {10, 10}); }) ==
        ErrorKind::NonMonotoneIndex);
  CHECK(kind_of([] { TimeSeries({1.0, 2.0}, {10}); }) ==
        ErrorKind::LengthMismatch);
}

TEST_CASE("LltParams validation") {
  LltParams params;
  CHECK_NOTHROW(params.validate());

  LltParams bad = params;
  bad.window = 1;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidParams);

  bad = params;
  bad.baseline_percentile = 0.0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidParams);

  bad = params;
  bad.baseline_percentile = 100.5;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidParams);

  bad = params;
  bad.update_threshold = true;
  bad.percentile_step = 0.0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidParams);

  // A fixed threshold does not need a step.
  bad.update_threshold = false;
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("GlobalTrendConfig validation") {
  CHECK_NOTHROW(GlobalTrendConfig::moving_average(5).validate_for(100));
  CHECK(kind_of([] { GlobalTrendConfig::moving_average(4).validate(); }) ==
        ErrorKind::InvalidParams);
  CHECK(kind_of([] { GlobalTrendConfig::moving_average(11).validate_for(10); }) ==
        ErrorKind::WindowTooLarge);
  CHECK(kind_of([] { GlobalTrendConfig::polynomial(6).validate(); }) ==
        ErrorKind::DegreeTooHigh);
  CHECK_NOTHROW(GlobalTrendConfig::polynomial(5).validate_for(10));
}

TEST_CASE("SyntheticSpec validation") {
  SyntheticSpec spec;
  CHECK_NOTHROW(spec.validate());

  SyntheticSpec short_spec = spec;
  short_spec.length = 400;  // under four cycles of period 120
  CHECK(kind_of([&] { short_spec.validate(); }) == ErrorKind::InvalidParams);

  // Without a seasonal component the cycle requirement does not apply.
  short_spec.amplitude = 0.0;
  CHECK_NOTHROW(short_spec.validate());

  SyntheticSpec variable = spec;
  variable.season = SeasonRegime::Variable;
  variable.length = 1900;  // under four cycles of the largest possible period
  CHECK(kind_of([&] { variable.validate(); }) == ErrorKind::InvalidParams);
  variable.length = 1960;
  CHECK_NOTHROW(variable.validate());
}

TEST_CASE("decomposition components sum back to the input") {
  // The residual is defined as (y - g) - l, so recomputing that expression
  // must reproduce it bit for bit, and the summed form stays within a few
  // roundings.
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto y = test_util::gaussian_series(300, seed, 2.0, 0.05);
    const TimeSeries series(y);
    const auto d = decompose(series, default_global_config(y.size()), LltParams{});
    for (std::size_t t = 0; t < y.size(); ++t) {
      const double recomputed = (y[t] - d.global_trend[t]) - d.local_trend[t];
      CHECK(test_util::bit_equal(recomputed, d.residual[t]));
      const double sum = d.global_trend[t] + d.local_trend[t] + d.residual[t];
      CHECK(sum == doctest::Approx(y[t]).epsilon(1e-12));
    }
  }
}

}  // TEST_SUITE
