#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapsel/engine.hpp"

namespace mapsel {

// Shortest decimal text that parses back to the same double.
std::string format_number(double v);
std::string format_optional(const std::optional<double>& v);

inline constexpr std::string_view kMetricsCsvHeader =
    "round,vehicle_count,elected_maps,flagged_count,avg_handover,max_handover,min_handover,"
    "avg_delay_s,disconnected";

// One row per round. Handover and delay columns are running aggregates through
// that round, so the last row carries the run summary.
std::string metrics_csv(const SimulationReport& report);
std::string summary_json(const SimulationReport& report);

struct MetricsCsvRow {
  std::uint64_t round = 0;
  std::size_t vehicle_count = 0;
  std::size_t elected_maps = 0;
  std::size_t flagged_count = 0;
  std::optional<double> avg_handover;
  std::optional<double> max_handover;
  std::optional<double> min_handover;
  std::optional<double> avg_delay_s;
  std::size_t disconnected = 0;
};
std::vector<MetricsCsvRow> parse_metrics_csv(std::string_view csv);

// metrics.csv, summary.json and ledger.json under `dir` (created if missing).
void write_run_outputs(const SimulationReport& report, const std::filesystem::path& dir);

struct MetricStat {
  std::optional<double> mean;
  std::optional<double> stddev;  // sample standard deviation; 0 for a single run
  std::size_t samples = 0;
};
MetricStat describe(const std::vector<std::optional<double>>& values);

struct ComparisonRow {
  std::string strategy;
  std::size_t runs = 0;
  MetricStat avg_handover;
  MetricStat max_handover;
  MetricStat min_handover;
  MetricStat avg_delay;
};

ComparisonRow summarize_strategy(Strategy strategy, const std::vector<Aggregates>& runs);

inline constexpr std::string_view kComparisonCsvHeader =
    "strategy,runs,avg_handover_mean,avg_handover_std,max_handover_mean,max_handover_std,"
    "min_handover_mean,min_handover_std,avg_delay_s_mean,avg_delay_s_std";

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

// 960x540 grouped bar chart: one group per metric, one bar per strategy. Every
// bar carries data-strategy / data-metric / data-value attributes holding the
// exact comparison.csv mean.
std::string comparison_svg(const std::vector<ComparisonRow>& rows);

}  // namespace mapsel
