#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "aigc/config.hpp"
#include "aigc/env/environment.hpp"
#include "aigc/harness/controller.hpp"

namespace aigc::harness {

struct SlotRecord {
  int episode = 0;
  int frame = 0;
  int slot = 0;
  double reward = 0.0;
  double utility = 0.0;  // mean per-user utility of the slot
  double hit_ratio = 0.0;
  int violations = 0;  // deadline misses in the slot
  int hits = 0;
  int requests = 0;
  double wall_ms = 0.0;  // decision time; the frame's cache decision is charged to slot 0
};

struct EpisodeRecord {
  int episode = 0;
  double episodic_reward = 0.0;  // sum of frame rewards, capacity penalties included
  double mean_utility = 0.0;     // (1/TKU) sum of G
  double hit_ratio = 0.0;
  double violation_rate = 0.0;  // deadline misses per request
  int capacity_violations = 0;  // frames whose cache exceeded capacity
  double mean_wall_ms = 0.0;
};

struct RunResult {
  Algorithm algo = Algorithm::rcars;
  std::uint64_t seed = 0;
  std::vector<SlotRecord> slots;
  std::vector<EpisodeRecord> episodes;
};

struct RunOptions {
  bool learning = true;
  bool keep_slots = true;
  /// Loaded into the controller before the first episode.
  std::optional<std::filesystem::path> load_checkpoint;
  /// Written after the last episode.
  std::optional<std::filesystem::path> save_checkpoint;
};

/// One pass of the two-timescale loop: T frames of K slots, then the
/// terminal observation. Appends per-slot rows to slots when non-null.
EpisodeRecord run_episode(Controller& controller, EdgeEnvironment& env, const SimConfig& cfg, int episode,
                          int total_episodes, bool learning, std::vector<SlotRecord>* slots);

/// Builds the environment and controller from cfg and runs cfg.run.episodes.
RunResult run_algorithm(Algorithm algo, const SimConfig& cfg, const RunOptions& options = {});

/// Fraction of requests served from cache over the trace.
double model_hit_ratio(const std::vector<SlotRecord>& trace);

}  // namespace aigc::harness
