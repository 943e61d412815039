#pragma once

// CSV and SVG emission. Numbers are printed with std::to_chars (shortest
// round-trip form, '.' decimal point whatever the locale); lines end in '\n'.

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "skirental/experiments.hpp"

namespace skirental {

std::string format_double(double v);

inline constexpr const char* kCompareHeader = "sigma,algorithm,lambda,mean_cr,stderr,trials";
inline constexpr const char* kRegretHeader = "config_id,t,regret,regret_x,regret_b";
inline constexpr const char* kRegretConfigsHeader =
    "config_id,lambda,ski_experts,buy_experts,seeds,fingerprint,final_regret,final_regret_stderr,"
    "max_round_loss,min_robustness_radius";

void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows);
/// One row per (config, round); t is 1-based.
void write_regret_csv(std::ostream& out, std::span<const RegretCurve> curves);
void write_regret_configs_csv(std::ostream& out, std::span<const RegretScenario> scenarios,
                              std::span<const RegretCurve> curves);

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// A plain static line chart.
void write_line_chart_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                          const std::string& y_label, std::span<const ChartSeries> series);

std::vector<ChartSeries> compare_chart_series(std::span<const CompareRow> rows);
/// At most max_points samples per curve.
std::vector<ChartSeries> regret_chart_series(std::span<const RegretCurve> curves,
                                             std::size_t max_points = 500);

/// Writes `contents` to `path` in binary mode; throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace skirental
