#pragma once

#include <string>
#include <vector>

#include "lgtd/types.hpp"

namespace lgtd {

/// Mean absolute difference. Throws EmptyInput / LengthMismatch.
double mae(const std::vector<double>& estimate, const std::vector<double>& truth);

/// Mean squared difference. Throws EmptyInput / LengthMismatch.
double mse(const std::vector<double>& estimate, const std::vector<double>& truth);

/// Scores the decomposition component-wise: global trend against the true
/// trend, local trend against the true seasonal component, residual against
/// the injected noise. Overall scores are the means over the three rows.
EvalReport evaluate(const Decomposition& decomp, const GroundTruth& truth);

/// One scored (dataset, method) pair. `regime` tags the dataset's
/// seasonality regime for sliced aggregation; leave empty to keep the entry
/// out of the per-regime tables.
struct SuiteEvalEntry {
  std::string dataset;
  std::string method;
  std::string regime;
  EvalReport report;
};

struct AggregateRow {
  std::string method;
  std::size_t datasets = 0;
  ComponentScore trend;
  ComponentScore seasonal;
  ComponentScore residual;
  double overall_mae = 0.0;
  double overall_mse = 0.0;
};

/// Per-method means, overall and sliced by regime. Rows within each table
/// are sorted by overall MAE ascending.
struct AggregateTable {
  std::vector<AggregateRow> overall;
  std::vector<std::pair<std::string, std::vector<AggregateRow>>> by_regime;
};

AggregateTable aggregate_suite(const std::vector<SuiteEvalEntry>& entries);

std::string to_csv(const AggregateTable& table);
std::string to_markdown(const AggregateTable& table);

}  // namespace lgtd
