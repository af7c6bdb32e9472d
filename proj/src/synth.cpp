#include "lgtd/synth.hpp"

#include <algorithm>
#include <cmath>

#include "lgtd/rng.hpp"

namespace lgtd::synth {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::vector<double> gen_trend(TrendKind kind, std::size_t length,
                              double trend_scale) {
  if (length < 2) {
    throw Error(ErrorKind::InvalidParams, "trend needs at least two points");
  }
  if (!(trend_scale > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "trend_scale must be > 0");
  }
  const auto n = static_cast<std::ptrdiff_t>(length);
  std::vector<double> trend(length);
  switch (kind) {
    case TrendKind::Linear: {
      const double slope = trend_scale * kLinearSlope;
      for (std::ptrdiff_t t = 0; t < n; ++t) {
        trend[t] = slope * static_cast<double>(t);
      }
      break;
    }
    case TrendKind::InvertedV: {
      // Apex at t = T/2, peak value scale * 0.02 * (T/2), symmetric fall.
      const double slope = trend_scale * kLinearSlope;
      for (std::ptrdiff_t t = 0; t < n; ++t) {
        trend[t] = slope * static_cast<double>(std::min(t, n - t));
      }
      break;
    }
    case TrendKind::Piecewise: {
      const std::ptrdiff_t b1 = n / 3;
      const std::ptrdiff_t b2 = 2 * n / 3;
      const double s1 = trend_scale * kPiecewiseSlopes[0];
      const double s2 = trend_scale * kPiecewiseSlopes[1];
      const double s3 = trend_scale * kPiecewiseSlopes[2];
      const double level1 = s1 * static_cast<double>(b1);
      const double level2 = level1 + s2 * static_cast<double>(b2 - b1);
      for (std::ptrdiff_t t = 0; t < n; ++t) {
        if (t < b1) {
          trend[t] = s1 * static_cast<double>(t);
        } else if (t < b2) {
          trend[t] = level1 + s2 * static_cast<double>(t - b1);
        } else {
          trend[t] = level2 + s3 * static_cast<double>(t - b2);
        }
      }
      break;
    }
  }
  return trend;
}

PeriodSchedule gen_period_schedule(SeasonRegime regime, std::size_t length,
                                   std::uint64_t seed) {
  PeriodSchedule schedule;
  schedule.period_at.resize(length);
  switch (regime) {
    case SeasonRegime::Fixed:
      std::fill(schedule.period_at.begin(), schedule.period_at.end(),
                kFixedPeriod);
      break;
    case SeasonRegime::Transitive: {
      const std::size_t half = length / 2;
      for (std::size_t t = 0; t < length; ++t) {
        schedule.period_at[t] =
            t < half ? kFixedPeriod : kTransitiveSecondPeriod;
      }
      break;
    }
    case SeasonRegime::Variable: {
      Xoshiro256pp rng(seed);
      std::size_t t = 0;
      while (t < length) {
        const auto draw = rng.next_below(kVariablePeriodCount);
        const int period =
            kVariablePeriodMin + kVariablePeriodStep * static_cast<int>(draw);
        const std::size_t end =
            std::min(length, t + static_cast<std::size_t>(period));
        for (; t < end; ++t) {
          schedule.period_at[t] = period;
        }
      }
      break;
    }
  }
  return schedule;
}

std::vector<double> gen_seasonal(const PeriodSchedule& schedule,
                                 double amplitude, std::size_t length) {
  if (schedule.period_at.size() < length) {
    throw Error(ErrorKind::LengthMismatch,
                "period schedule shorter than requested length");
  }
  std::vector<double> seasonal(length);
  double phase = 0.0;
  for (std::size_t t = 0; t < length; ++t) {
    seasonal[t] = amplitude * std::sin(phase);
    phase += kTwoPi / schedule.period_at[t];
    if (phase >= kTwoPi) {
      phase -= kTwoPi;  // keep the accumulator small over long series
    }
  }
  return seasonal;
}

SyntheticSeries gen_series(const SyntheticSpec& spec) {
  spec.validate();

  SplitMix64 seeder(spec.seed);
  const std::uint64_t period_seed = seeder.next();
  const std::uint64_t noise_seed = seeder.next();

  GroundTruth truth;
  truth.trend = gen_trend(spec.trend, spec.length, spec.trend_scale);
  const auto schedule = gen_period_schedule(spec.season, spec.length, period_seed);
  truth.seasonal = gen_seasonal(schedule, spec.amplitude, spec.length);

  truth.noise.assign(spec.length, 0.0);
  if (spec.noise_sigma > 0.0) {
    Xoshiro256pp rng(noise_seed);
    for (auto& value : truth.noise) {
      value = spec.noise_sigma * rng.next_gaussian();
    }
  }

  truth.total.resize(spec.length);
  for (std::size_t t = 0; t < spec.length; ++t) {
    truth.total[t] = truth.trend[t] + truth.seasonal[t] + truth.noise[t];
  }

  TimeSeries series(truth.total);
  return {std::move(series), std::move(truth)};
}

std::vector<SuiteDataset> suite_specs(std::uint64_t base_seed,
                                      std::size_t length, double noise_sigma,
                                      double amplitude, double trend_scale) {
  constexpr TrendKind trends[] = {TrendKind::Linear, TrendKind::InvertedV,
                                  TrendKind::Piecewise};
  constexpr SeasonRegime regimes[] = {SeasonRegime::Fixed,
                                      SeasonRegime::Transitive,
                                      SeasonRegime::Variable};
  SplitMix64 seeder(base_seed);
  std::vector<SuiteDataset> suite;
  suite.reserve(9);
  int index = 1;
  for (TrendKind trend : trends) {
    for (SeasonRegime regime : regimes) {
      SyntheticSpec spec;
      spec.trend = trend;
      spec.season = regime;
      spec.length = length;
      spec.noise_sigma = noise_sigma;
      spec.seed = seeder.next();
      spec.amplitude = amplitude;
      spec.trend_scale = trend_scale;
      suite.push_back({"synth" + std::to_string(index), spec});
      ++index;
    }
  }
  return suite;
}

std::string to_string(TrendKind kind) {
  switch (kind) {
    case TrendKind::Linear:
      return "linear";
    case TrendKind::InvertedV:
      return "invv";
    case TrendKind::Piecewise:
      return "piecewise";
  }
  return "linear";
}

std::string to_string(SeasonRegime regime) {
  switch (regime) {
    case SeasonRegime::Fixed:
      return "fixed";
    case SeasonRegime::Transitive:
      return "transitive";
    case SeasonRegime::Variable:
      return "variable";
  }
  return "fixed";
}

TrendKind trend_from_string(const std::string& token) {
  if (token == "linear") return TrendKind::Linear;
  if (token == "invv") return TrendKind::InvertedV;
  if (token == "piecewise") return TrendKind::Piecewise;
  throw Error(ErrorKind::InvalidParams, "unknown trend kind: " + token);
}

SeasonRegime season_from_string(const std::string& token) {
  if (token == "fixed") return SeasonRegime::Fixed;
  if (token == "transitive") return SeasonRegime::Transitive;
  if (token == "variable") return SeasonRegime::Variable;
  throw Error(ErrorKind::InvalidParams, "unknown season regime: " + token);
}

}  // namespace lgtd::synth
