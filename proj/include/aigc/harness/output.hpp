#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "aigc/harness/runner.hpp"

namespace aigc::harness {

/// Aggregates over the final min(10, H) episodes of a run.
struct RunSummary {
  std::string algo;
  std::uint64_t seed = 0;
  int users = 0;
  double capacity_gb = 0.0;
  int episodes = 0;
  double episodic_reward = 0.0;
  double utility = 0.0;
  double hit_ratio = 0.0;
  double violation_rate = 0.0;
  double wall_ms = 0.0;
};

RunSummary summarize(const RunResult& result, const SimConfig& cfg, int tail = 10);

void write_metrics_csv(std::ostream& out, const RunResult& result);
void write_episodes_csv(std::ostream& out, const RunResult& result);
void write_summary_csv(std::ostream& out, const std::vector<RunSummary>& rows);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line chart with axes, ticks and a legend.
std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series);

/// metrics.csv, episodes.csv, summary.csv and config.echo.json in dir, plus
/// reward.svg when plot is set.
void write_run_outputs(const std::filesystem::path& dir, const RunResult& result, const SimConfig& cfg, bool plot);

}  // namespace aigc::harness
