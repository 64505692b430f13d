#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "skirent/simulator.hpp"
#include "skirent/solver.hpp"

namespace skirent {
namespace report {

/// One point of the cutoff/guarantee curves over alpha. Empty optionals are
/// unbounded values and serialize as the token "inf" (z_star and cutoff_days
/// are unbounded only at alpha = 1, delta also at alpha = 0).
struct SweepRow {
  double alpha;
  std::optional<double> z_star;
  std::optional<double> cutoff_days;
  double optimal_cr;
  std::optional<double> delta;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Best and worst expected competitive ratio reachable from a prediction
/// under the worst admissible error radius max(alpha_hat, 1 - alpha_hat).
struct RobustnessRow {
  double alpha_hat;
  double cr_best;
  std::optional<double> cr_worst;  // empty = unbounded, serialized "inf"

  friend bool operator==(const RobustnessRow&, const RobustnessRow&) = default;
};

/// A labelled simulation outcome next to its exact expected value.
struct SimulationRow {
  std::string label;
  sim::SimulationSummary summary;
  double theoretical;
};

inline constexpr std::string_view kSweepHeader =
    "alpha,z_star,cutoff_days,optimal_cr,delta";
inline constexpr std::string_view kRobustnessHeader = "alpha_hat,cr_best,cr_worst";
inline constexpr std::string_view kSimulationHeader =
    "label,trials,seed,mean_cr,std_err,ci95_lo,ci95_hi,theoretical";

namespace detail {

inline void validate_grid(double start, double stop, double step) {
  if (!(start >= 0.0) || !(start < stop) || !(stop <= 1.0) || !(step > 0.0)) {
    throw std::domain_error(
        "grid requires 0 <= start < stop <= 1 and a positive step");
  }
}

inline std::vector<double> alpha_grid(double start, double stop, double step) {
  validate_grid(start, stop, step);
  std::vector<double> grid;
  const auto count = static_cast<long long>((stop - start) / step + 1e-9);
  grid.reserve(static_cast<std::size_t>(count) + 1);
  for (long long k = 0; k <= count; ++k) {
    // Accumulated rounding must not push the last point past stop.
    grid.push_back(std::min(start + static_cast<double>(k) * step, stop));
  }
  if (grid.empty()) throw std::domain_error("grid is empty");
  return grid;
}

}  // namespace detail

inline std::vector<SweepRow> emit_sweep(double alpha_start, double alpha_stop,
                                        double step, double buy_cost) {
  if (!(buy_cost > 0.0)) {
    throw std::domain_error("emit_sweep: buy_cost must be positive");
  }
  std::vector<SweepRow> rows;
  for (double alpha : detail::alpha_grid(alpha_start, alpha_stop, step)) {
    SweepRow row;
    row.alpha = alpha;
    if (alpha == 1.0) {
      row.optimal_cr = 1.0;  // limit value; the cutoff itself is unbounded
    } else {
      const double z = solver::optimal_cutoff_z(alpha);
      row.z_star = z;
      row.cutoff_days = buy_cost * z;
      row.optimal_cr = solver::optimal_cr(alpha);
    }
    row.delta = alpha == 1.0 ? std::nullopt : solver::sensitivity_delta(alpha);
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<RobustnessRow> emit_robustness(double alpha_start,
                                                  double alpha_stop, double step) {
  std::vector<RobustnessRow> rows;
  for (double alpha : detail::alpha_grid(alpha_start, alpha_stop, step)) {
    RobustnessRow row;
    row.alpha_hat = alpha;
    row.cr_best = solver::optimal_cr(alpha);
    if (alpha == 0.0 || alpha == 1.0) {
      row.cr_worst = std::nullopt;
    } else {
      const auto pred =
          solver::Prediction(alpha, std::max(alpha, 1.0 - alpha));
      row.cr_worst = solver::cr_interval(pred).second;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

// Shortest representation that parses back to the exact same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_optional(const std::optional<double>& v,
                                   const char* missing_token) {
  return v ? format_double(*v) : std::string(missing_token);
}

inline double parse_double(std::string_view field) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument("malformed numeric field: " + std::string(field));
  }
  return v;
}

inline std::optional<double> parse_optional(std::string_view field,
                                            std::string_view missing_token) {
  if (field == missing_token) return std::nullopt;
  return parse_double(field);
}

inline std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

inline std::vector<std::vector<std::string_view>> parse_csv_body(
    std::string_view text, std::string_view header, std::size_t columns) {
  std::vector<std::vector<std::string_view>> rows;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != header) {
        throw std::invalid_argument("unexpected CSV header: " + std::string(line));
      }
      saw_header = true;
      continue;
    }
    auto fields = split_line(line);
    if (fields.size() != columns) {
      throw std::invalid_argument("wrong field count in CSV row");
    }
    rows.push_back(std::move(fields));
  }
  if (!saw_header) throw std::invalid_argument("CSV is missing its header");
  return rows;
}

}  // namespace detail

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepHeader);
  out.push_back('\n');
  for (const auto& row : rows) {
    out += detail::format_double(row.alpha);
    out.push_back(',');
    out += detail::format_optional(row.z_star, "inf");
    out.push_back(',');
    out += detail::format_optional(row.cutoff_days, "inf");
    out.push_back(',');
    out += detail::format_double(row.optimal_cr);
    out.push_back(',');
    out += detail::format_optional(row.delta, "inf");
    out.push_back('\n');
  }
  return out;
}

inline std::string to_csv(const std::vector<RobustnessRow>& rows) {
  std::string out(kRobustnessHeader);
  out.push_back('\n');
  for (const auto& row : rows) {
    out += detail::format_double(row.alpha_hat);
    out.push_back(',');
    out += detail::format_double(row.cr_best);
    out.push_back(',');
    out += detail::format_optional(row.cr_worst, "inf");
    out.push_back('\n');
  }
  return out;
}

inline std::string to_csv(const std::vector<SimulationRow>& rows) {
  std::string out(kSimulationHeader);
  out.push_back('\n');
  for (const auto& row : rows) {
    const auto& s = row.summary;
    out += row.label;
    out.push_back(',');
    out += std::to_string(s.trials);
    out.push_back(',');
    out += std::to_string(s.seed);
    out.push_back(',');
    out += detail::format_double(s.mean_cr);
    out.push_back(',');
    out += detail::format_optional(s.std_err, "na");
    out.push_back(',');
    out += detail::format_optional(s.ci95_lo, "na");
    out.push_back(',');
    out += detail::format_optional(s.ci95_hi, "na");
    out.push_back(',');
    out += detail::format_double(row.theoretical);
    out.push_back('\n');
  }
  return out;
}

inline std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  for (const auto& fields : detail::parse_csv_body(text, kSweepHeader, 5)) {
    SweepRow row;
    row.alpha = detail::parse_double(fields[0]);
    row.z_star = detail::parse_optional(fields[1], "inf");
    row.cutoff_days = detail::parse_optional(fields[2], "inf");
    row.optimal_cr = detail::parse_double(fields[3]);
    row.delta = detail::parse_optional(fields[4], "inf");
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<RobustnessRow> parse_robustness_csv(std::string_view text) {
  std::vector<RobustnessRow> rows;
  for (const auto& fields : detail::parse_csv_body(text, kRobustnessHeader, 3)) {
    RobustnessRow row;
    row.alpha_hat = detail::parse_double(fields[0]);
    row.cr_best = detail::parse_double(fields[1]);
    row.cr_worst = detail::parse_optional(fields[2], "inf");
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

inline nlohmann::ordered_json json_value(const std::optional<double>& v,
                                         const char* missing_token) {
  if (v) return *v;
  return missing_token;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const SweepRow& row) {
  return {{"alpha", row.alpha},
          {"z_star", detail::json_value(row.z_star, "inf")},
          {"cutoff_days", detail::json_value(row.cutoff_days, "inf")},
          {"optimal_cr", row.optimal_cr},
          {"delta", detail::json_value(row.delta, "inf")}};
}

inline nlohmann::ordered_json to_json(const RobustnessRow& row) {
  return {{"alpha_hat", row.alpha_hat},
          {"cr_best", row.cr_best},
          {"cr_worst", detail::json_value(row.cr_worst, "inf")}};
}

inline nlohmann::ordered_json to_json(const SimulationRow& row) {
  const auto& s = row.summary;
  return {{"label", row.label},
          {"trials", s.trials},
          {"seed", s.seed},
          {"mean_cr", s.mean_cr},
          {"std_err", detail::json_value(s.std_err, "na")},
          {"ci95_lo", detail::json_value(s.ci95_lo, "na")},
          {"ci95_hi", detail::json_value(s.ci95_hi, "na")},
          {"theoretical", row.theoretical}};
}

inline nlohmann::ordered_json to_json(const solver::GuaranteeReport& report) {
  return {{"z_star", report.z_star},
          {"cutoff_days", report.cutoff_days},
          {"cr_optimal", report.cr_optimal},
          {"cr_best", report.cr_best},
          {"cr_worst", detail::json_value(report.cr_worst, "inf")},
          {"delta", detail::json_value(report.delta, "inf")}};
}

inline std::string to_csv(const solver::GuaranteeReport& report) {
  std::string out = "z_star,cutoff_days,cr_optimal,cr_best,cr_worst,delta\n";
  out += detail::format_double(report.z_star);
  out.push_back(',');
  out += detail::format_double(report.cutoff_days);
  out.push_back(',');
  out += detail::format_double(report.cr_optimal);
  out.push_back(',');
  out += detail::format_double(report.cr_best);
  out.push_back(',');
  out += detail::format_optional(report.cr_worst, "inf");
  out.push_back(',');
  out += detail::format_optional(report.delta, "inf");
  out.push_back('\n');
  return out;
}

template <class Row>
nlohmann::ordered_json to_json(const std::vector<Row>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) arr.push_back(to_json(row));
  return arr;
}

}  // namespace report
}  // namespace skirent
