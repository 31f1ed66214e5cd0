#include "aigc/harness/sweep.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <stdexcept>

namespace aigc::harness {

std::string SweepJob::name() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s_u%d_c%g_s%llu", to_string(algo).c_str(), users, capacity_gb,
                static_cast<unsigned long long>(seed));
  return buf;
}

std::vector<SweepJob> expand_sweep(const std::vector<Algorithm>& algos, const std::vector<int>& users,
                                   const std::vector<double>& capacities, const std::vector<std::uint64_t>& seeds) {
  std::vector<SweepJob> jobs;
  for (auto a : algos)
    for (int u : users)
      for (double c : capacities)
        for (auto s : seeds) jobs.push_back({a, u, c, s});
  return jobs;
}

namespace {

void write_sweep_plots(const std::filesystem::path& dir, const std::vector<SweepJob>& jobs,
                       const std::vector<RunSummary>& rows) {
  bool by_users = false;
  for (const auto& j : jobs) by_users = by_users || j.users != jobs.front().users;
  // Seed-averaged value per (algo, axis value).
  std::map<std::string, std::map<double, std::pair<double, double>>> util, hit;
  std::map<std::string, std::map<double, int>> count;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const double x = by_users ? jobs[i].users : jobs[i].capacity_gb;
    util[rows[i].algo][x].first += rows[i].utility;
    hit[rows[i].algo][x].first += rows[i].hit_ratio;
    ++count[rows[i].algo][x];
  }
  auto to_series = [&](auto& table) {
    std::vector<Series> out;
    for (auto& [algo, points] : table) {
      Series s{algo, {}, {}};
      for (auto& [x, v] : points) {
        s.x.push_back(x);
        s.y.push_back(v.first / count[algo][x]);
      }
      out.push_back(std::move(s));
    }
    return out;
  };
  const std::string axis = by_users ? "users" : "cache capacity (GB)";
  std::ofstream(dir / "utility.svg") << svg_line_chart("Total utility", axis, "mean utility", to_series(util));
  std::ofstream(dir / "hit_ratio.svg") << svg_line_chart("Model hit ratio", axis, "hit ratio", to_series(hit));
}

}  // namespace

std::vector<RunSummary> run_sweep(const SimConfig& base, const std::vector<SweepJob>& jobs,
                                  const std::optional<std::filesystem::path>& out_dir, bool plot) {
  std::vector<RunSummary> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto& job = jobs[static_cast<std::size_t>(i)];
    try {
      SimConfig cfg = base;
      cfg.env.users = job.users;
      cfg.env.capacity_gb = job.capacity_gb;
      cfg.run.seed = job.seed;
      RunOptions opts;
      opts.keep_slots = out_dir.has_value();
      const RunResult r = run_algorithm(job.algo, cfg, opts);
      rows[static_cast<std::size_t>(i)] = summarize(r, cfg);
      if (out_dir) write_run_outputs(*out_dir / job.name(), r, cfg, plot);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    std::ofstream out(*out_dir / "summary.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (*out_dir / "summary.csv").string());
    write_summary_csv(out, rows);
    if (plot && !jobs.empty()) write_sweep_plots(*out_dir, jobs, rows);
  }
  return rows;
}

}  // namespace aigc::harness
