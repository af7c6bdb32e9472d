#pragma once

#include "lgtd/types.hpp"

namespace lgtd {

enum class Ablation { NoGlobal, NoAdaptiveThreshold };

/**
 * Full decomposition: fit the global trend, extract local linear trends
 * from the detrended residuals, and define the final residual by
 * subtraction. Deterministic and pure; throws SeriesTooShort when the
 * series has no index beyond the local-trend window.
 */
Decomposition decompose(const TimeSeries& series, const GlobalTrendConfig& gcfg,
                        const LltParams& lparams);

/// Variant with one stage disabled: NoGlobal forces the global trend to
/// zero and extracts local trends from the raw series; NoAdaptiveThreshold
/// keeps the acceptance percentile fixed across iterations.
Decomposition decompose_ablated(const TimeSeries& series,
                                const GlobalTrendConfig& gcfg,
                                const LltParams& lparams, Ablation ablation);

}  // namespace lgtd
