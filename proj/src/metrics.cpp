#include "lgtd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lgtd {

namespace {

void check_pair(const std::vector<double>& estimate,
                const std::vector<double>& truth) {
  if (estimate.empty() || truth.empty()) {
    throw Error(ErrorKind::EmptyInput, "metric inputs must be nonempty");
  }
  if (estimate.size() != truth.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "metric inputs differ in length: " +
                    std::to_string(estimate.size()) + " vs " +
                    std::to_string(truth.size()));
  }
}

ComponentScore score(const std::vector<double>& estimate,
                     const std::vector<double>& truth) {
  return {mae(estimate, truth), mse(estimate, truth)};
}

std::vector<AggregateRow> method_means(const std::vector<SuiteEvalEntry>& entries) {
  std::vector<AggregateRow> rows;
  for (const auto& entry : entries) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const AggregateRow& r) {
      return r.method == entry.method;
    });
    if (it == rows.end()) {
      rows.push_back({entry.method, 0, {}, {}, {}, 0.0, 0.0});
      it = rows.end() - 1;
    }
    const EvalReport& rep = entry.report;
    it->datasets += 1;
    it->trend.mae += rep.trend.mae;
    it->trend.mse += rep.trend.mse;
    it->seasonal.mae += rep.seasonal.mae;
    it->seasonal.mse += rep.seasonal.mse;
    it->residual.mae += rep.residual.mae;
    it->residual.mse += rep.residual.mse;
    it->overall_mae += rep.overall_mae;
    it->overall_mse += rep.overall_mse;
  }
  for (auto& row : rows) {
    const auto n = static_cast<double>(row.datasets);
    row.trend.mae /= n;
    row.trend.mse /= n;
    row.seasonal.mae /= n;
    row.seasonal.mse /= n;
    row.residual.mae /= n;
    row.residual.mse /= n;
    row.overall_mae /= n;
    row.overall_mse /= n;
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const AggregateRow& a, const AggregateRow& b) {
                     if (a.overall_mae != b.overall_mae) {
                       return a.overall_mae < b.overall_mae;
                     }
                     return a.method < b.method;
                   });
  return rows;
}

void append_rows_csv(std::ostringstream& out, const std::string& scope,
                     const std::vector<AggregateRow>& rows) {
  for (const auto& row : rows) {
    out << scope << ',' << row.method << ',' << row.datasets << ','
        << row.trend.mae << ',' << row.seasonal.mae << ',' << row.residual.mae
        << ',' << row.overall_mae << ',' << row.trend.mse << ','
        << row.seasonal.mse << ',' << row.residual.mse << ','
        << row.overall_mse << '\n';
  }
}

void append_rows_markdown(std::ostringstream& out, const std::string& title,
                          const std::vector<AggregateRow>& rows) {
  out << "## " << title << "\n\n";
  out << "| Method | Datasets | Trend MAE | Seasonal MAE | Residual MAE | "
         "Overall MAE | Overall MSE |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& row : rows) {
    out << "| " << row.method << " | " << row.datasets << " | " << row.trend.mae
        << " | " << row.seasonal.mae << " | " << row.residual.mae << " | "
        << row.overall_mae << " | " << row.overall_mse << " |\n";
  }
  out << '\n';
}

std::string scope_title(const std::string& regime) {
  if (regime == "fixed") return "Fixed period";
  if (regime == "transitive") return "Transitive period";
  if (regime == "variable") return "Variable period";
  return regime;
}

}  // namespace

double mae(const std::vector<double>& estimate, const std::vector<double>& truth) {
  check_pair(estimate, truth);
  double total = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    total += std::abs(estimate[i] - truth[i]);
  }
  return total / static_cast<double>(estimate.size());
}

double mse(const std::vector<double>& estimate, const std::vector<double>& truth) {
  check_pair(estimate, truth);
  double total = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const double diff = estimate[i] - truth[i];
    total += diff * diff;
  }
  return total / static_cast<double>(estimate.size());
}

EvalReport evaluate(const Decomposition& decomp, const GroundTruth& truth) {
  EvalReport report;
  report.trend = score(decomp.global_trend, truth.trend);
  report.seasonal = score(decomp.local_trend, truth.seasonal);
  report.residual = score(decomp.residual, truth.noise);
  report.overall_mae =
      (report.trend.mae + report.seasonal.mae + report.residual.mae) / 3.0;
  report.overall_mse =
      (report.trend.mse + report.seasonal.mse + report.residual.mse) / 3.0;
  return report;
}

AggregateTable aggregate_suite(const std::vector<SuiteEvalEntry>& entries) {
  if (entries.empty()) {
    throw Error(ErrorKind::EmptyInput, "aggregate_suite requires entries");
  }
  AggregateTable table;
  table.overall = method_means(entries);

  std::vector<std::string> regimes;
  for (const auto& entry : entries) {
    if (entry.regime.empty()) continue;
    if (std::find(regimes.begin(), regimes.end(), entry.regime) == regimes.end()) {
      regimes.push_back(entry.regime);
    }
  }
  for (const auto& regime : regimes) {
    std::vector<SuiteEvalEntry> slice;
    for (const auto& entry : entries) {
      if (entry.regime == regime) slice.push_back(entry);
    }
    table.by_regime.emplace_back(regime, method_means(slice));
  }
  return table;
}

std::string to_csv(const AggregateTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "scope,method,datasets,trend_mae,seasonal_mae,residual_mae,"
         "overall_mae,trend_mse,seasonal_mse,residual_mse,overall_mse\n";
  append_rows_csv(out, "overall", table.overall);
  for (const auto& [regime, rows] : table.by_regime) {
    append_rows_csv(out, regime, rows);
  }
  return out.str();
}

std::string to_markdown(const AggregateTable& table) {
  std::ostringstream out;
  out.precision(6);
  append_rows_markdown(out, "Overall", table.overall);
  for (const auto& [regime, rows] : table.by_regime) {
    append_rows_markdown(out, scope_title(regime), rows);
  }
  return out.str();
}

}  // namespace lgtd
