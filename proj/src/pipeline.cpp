#include "lgtd/pipeline.hpp"

#include <string>
#include <utility>

#include "lgtd/global_trend.hpp"
#include "lgtd/llt.hpp"

namespace lgtd {

namespace {

Decomposition assemble(const std::vector<double>& y, std::vector<double> g,
                       const GlobalTrendConfig& gcfg, const LltParams& lparams) {
  auto r = detrend(y, g);
  auto local = llt::run(r, lparams);

  Decomposition d;
  d.global_trend = std::move(g);
  d.local_trend = std::move(local.local_trend);
  d.labels = std::move(local.labels);
  d.models = std::move(local.models);
  d.residual.resize(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) {
    d.residual[t] = r[t] - d.local_trend[t];
  }
  d.params = {gcfg, lparams};
  return d;
}

void require_longer_than_window(const TimeSeries& series, const LltParams& lparams) {
  lparams.validate();
  if (series.size() <= static_cast<std::size_t>(lparams.window)) {
    throw Error(ErrorKind::SeriesTooShort,
                "series too short: length " + std::to_string(series.size()) +
                    " must exceed the local-trend window " +
                    std::to_string(lparams.window));
  }
}

}  // namespace

Decomposition decompose(const TimeSeries& series, const GlobalTrendConfig& gcfg,
                        const LltParams& lparams) {
  require_longer_than_window(series, lparams);
  auto g = fit_global(series.values(), gcfg);
  return assemble(series.values(), std::move(g), gcfg, lparams);
}

Decomposition decompose_ablated(const TimeSeries& series,
                                const GlobalTrendConfig& gcfg,
                                const LltParams& lparams, Ablation ablation) {
  require_longer_than_window(series, lparams);
  switch (ablation) {
    case Ablation::NoGlobal: {
      // Local trends must absorb everything; the recorded parameters still
      // carry the requested (unused) global config.
      std::vector<double> zeros(series.size(), 0.0);
      return assemble(series.values(), std::move(zeros), gcfg, lparams);
    }
    case Ablation::NoAdaptiveThreshold: {
      LltParams fixed = lparams;
      fixed.update_threshold = false;
      auto g = fit_global(series.values(), gcfg);
      return assemble(series.values(), std::move(g), gcfg, fixed);
    }
  }
  throw Error(ErrorKind::InvalidParams, "unknown ablation");
}

}  // namespace lgtd
