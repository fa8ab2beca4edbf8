#include "mapsel/report.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mapsel {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::string metrics_csv(const SimulationReport& report) {
  std::ostringstream out;
  out << kMetricsCsvHeader << '\n';
  RunAccumulator acc;
  for (const auto& m : report.rounds) {
    acc.add(m);
    out << m.round << ',' << m.vehicle_count << ',' << m.elected_maps << ',' << m.flagged_count << ','
        << format_optional(acc.avg_handover()) << ',' << format_optional(acc.max_handover()) << ','
        << format_optional(acc.min_handover()) << ',' << format_optional(acc.avg_delay()) << ','
        << m.disconnected << '\n';
  }
  return out.str();
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string_view trim_cr(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("malformed CSV field '" + std::string(s) + "'");
  }
  return v;
}

std::optional<double> parse_optional(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return parse_field<double>(s);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string summary_json(const SimulationReport& report) {
  json config = json::object();
  for (const auto& [key, value] : config_entries(report.config)) config[key] = value;

  std::size_t sybils = 0;
  for (bool s : report.sybil_truth) sybils += s ? 1 : 0;

  const auto& a = report.aggregates;
  json j = {
      {"strategy", std::string(to_string(report.config.strategy))},
      {"seed", report.config.rng_seed},
      {"config", config},
      {"rounds", report.rounds.size()},
      {"identity_count", report.identity_count},
      {"sybil_identities", sybils},
      {"aggregates",
       {{"avg_handover", optional_json(a.avg_handover)},
        {"max_handover", optional_json(a.max_handover)},
        {"min_handover", optional_json(a.min_handover)},
        {"avg_delay_s", optional_json(a.avg_delay)},
        {"disconnection_rate", optional_json(a.disconnection_rate)},
        {"sybil_tpr", optional_json(a.sybil_tpr)},
        {"sybil_fpr", optional_json(a.sybil_fpr)}}},
      {"ledger", {{"blocks", report.ledger.size()}, {"head_hash", to_hex(report.ledger.head_hash())}}},
  };
  return j.dump(2) + "\n";
}

std::vector<MetricsCsvRow> parse_metrics_csv(std::string_view csv) {
  std::vector<MetricsCsvRow> rows;
  bool header = true;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    const auto line = trim_cr(csv.substr(0, nl));
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    if (line.empty()) continue;
    if (header) {
      if (line != kMetricsCsvHeader) throw std::runtime_error("unexpected metrics.csv header");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) throw std::runtime_error("metrics.csv row must have 9 fields");
    MetricsCsvRow r;
    r.round = parse_field<std::uint64_t>(f[0]);
    r.vehicle_count = parse_field<std::size_t>(f[1]);
    r.elected_maps = parse_field<std::size_t>(f[2]);
    r.flagged_count = parse_field<std::size_t>(f[3]);
    r.avg_handover = parse_optional(f[4]);
    r.max_handover = parse_optional(f[5]);
    r.min_handover = parse_optional(f[6]);
    r.avg_delay_s = parse_optional(f[7]);
    r.disconnected = parse_field<std::size_t>(f[8]);
    rows.push_back(r);
  }
  return rows;
}

void write_run_outputs(const SimulationReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "metrics.csv", metrics_csv(report));
  write_file(dir / "summary.json", summary_json(report));
  write_file(dir / "ledger.json", report.ledger.to_json());
}

MetricStat describe(const std::vector<std::optional<double>>& values) {
  MetricStat s;
  double sum = 0.0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++s.samples;
    }
  }
  if (s.samples == 0) return s;
  const double mean = sum / static_cast<double>(s.samples);
  double sq = 0.0;
  for (const auto& v : values) {
    if (v) sq += (*v - mean) * (*v - mean);
  }
  s.mean = mean;
  s.stddev = s.samples > 1 ? std::sqrt(sq / static_cast<double>(s.samples - 1)) : 0.0;
  return s;
}

ComparisonRow summarize_strategy(Strategy strategy, const std::vector<Aggregates>& runs) {
  ComparisonRow row;
  row.strategy = std::string(to_string(strategy));
  row.runs = runs.size();
  auto column = [&runs](std::optional<double> Aggregates::*field) {
    std::vector<std::optional<double>> values;
    for (const auto& a : runs) values.push_back(a.*field);
    return describe(values);
  };
  row.avg_handover = column(&Aggregates::avg_handover);
  row.max_handover = column(&Aggregates::max_handover);
  row.min_handover = column(&Aggregates::min_handover);
  row.avg_delay = column(&Aggregates::avg_delay);
  return row;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << kComparisonCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.strategy << ',' << r.runs;
    for (const MetricStat* m : {&r.avg_handover, &r.max_handover, &r.min_handover, &r.avg_delay}) {
      out << ',' << format_optional(m->mean) << ',' << format_optional(m->stddev);
    }
    out << '\n';
  }
  return out.str();
}

std::string comparison_svg(const std::vector<ComparisonRow>& rows) {
  constexpr int kWidth = 960, kHeight = 540;
  constexpr double kLeft = 60, kRight = 20, kTop = 60, kBottom = 90;
  static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                             "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  struct Group {
    const char* key;
    const char* label;
    MetricStat ComparisonRow::*field;
  };
  static constexpr Group kGroups[] = {
      {"avg_handover", "Average handovers", &ComparisonRow::avg_handover},
      {"max_handover", "Maximum handovers", &ComparisonRow::max_handover},
      {"min_handover", "Minimum handovers", &ComparisonRow::min_handover},
      {"avg_delay_s", "Average delay (s)", &ComparisonRow::avg_delay},
  };

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double group_w = plot_w / std::size(kGroups);
  const double bar_w = rows.empty() ? 0.0 : group_w * 0.8 / static_cast<double>(rows.size());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"18\">Handover frequency and communication delay by strategy</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";

  char label[32];
  for (std::size_t g = 0; g < std::size(kGroups); ++g) {
    // Each metric group is scaled to its own maximum.
    double group_max = 0.0;
    for (const auto& r : rows) {
      const auto& m = r.*(kGroups[g].field);
      if (m.mean) group_max = std::max(group_max, *m.mean);
    }
    const double x0 = kLeft + g * group_w + group_w * 0.1;
    for (std::size_t s = 0; s < rows.size(); ++s) {
      const auto& m = rows[s].*(kGroups[g].field);
      const double value = m.mean.value_or(0.0);
      const double h = group_max > 0 ? plot_h * value / group_max : 0.0;
      const double x = x0 + s * bar_w;
      const double y = kTop + plot_h - h;
      svg << "<rect class=\"bar\" data-strategy=\"" << xml_escape(rows[s].strategy) << "\" data-metric=\""
          << kGroups[g].key << "\" data-value=\"" << format_optional(m.mean) << "\" x=\"" << x
          << "\" y=\"" << y << "\" width=\"" << bar_w * 0.9 << "\" height=\"" << h << "\" fill=\""
          << kPalette[s % std::size(kPalette)] << "\"/>\n";
      std::snprintf(label, sizeof label, "%.2f", value);
      svg << "<text x=\"" << x + bar_w * 0.45 << "\" y=\"" << y - 4
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
          << (m.mean ? label : "n/a") << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + (g + 0.5) * group_w << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << kGroups[g].label
        << "</text>\n";
  }

  for (std::size_t s = 0; s < rows.size(); ++s) {
    const double x = kLeft + s * 200.0;
    const double y = kHeight - 30.0;
    svg << "<rect x=\"" << x << "\" y=\"" << y - 10 << "\" width=\"12\" height=\"12\" fill=\""
        << kPalette[s % std::size(kPalette)] << "\"/>\n";
    svg << "<text x=\"" << x + 18 << "\" y=\"" << y
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(rows[s].strategy) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mapsel
