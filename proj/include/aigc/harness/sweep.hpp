#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aigc/harness/output.hpp"

namespace aigc::harness {

struct SweepJob {
  Algorithm algo = Algorithm::rcars;
  int users = 10;
  double capacity_gb = 20.0;
  std::uint64_t seed = 1;

  std::string name() const;
};

/// Cartesian product in the order algos x users x capacities x seeds.
std::vector<SweepJob> expand_sweep(const std::vector<Algorithm>& algos, const std::vector<int>& users,
                                   const std::vector<double>& capacities, const std::vector<std::uint64_t>& seeds);

/// Runs every job on the OpenMP worker pool (each run stays single-threaded)
/// and returns summaries in job order. With out_dir set, each run writes its
/// outputs to out_dir/<job name>, and out_dir/summary.csv collects the rows.
std::vector<RunSummary> run_sweep(const SimConfig& base, const std::vector<SweepJob>& jobs,
                                  const std::optional<std::filesystem::path>& out_dir, bool plot);

}  // namespace aigc::harness
