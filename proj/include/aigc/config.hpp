#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aigc/env/types.hpp"

namespace aigc {

using MatrixRows = std::vector<std::vector<double>>;

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sampling ranges for per-model constants, drawn once per run.
struct ModelRanges {
  Range a1{50.0, 100.0};
  Range a2{100.0, 150.0};
  Range a3{150.0, 200.0};
  Range a4{0.0, 50.0};
  Range b1{0.0, 0.5};
  Range b2{0.0, 10.0};
  Range storage_gb{2.0, 10.0};
};

struct EnvConfig {
  int frames = 10;  // T
  int slots = 10;   // K
  double slot_duration_s = 20.0;
  int users = 10;
  int models = 10;
  double area_side_m = 250.0;
  double min_distance_m = 1.0;
  double uplink_bandwidth_hz = 20e6;
  double downlink_bandwidth_hz = 40e6;
  double user_power_dbm = 23.0;
  double bs_power_dbm = 43.0;
  double noise_psd_dbm_hz = -176.0;
  double bs_to_cloud_bps = 100e6;
  double cloud_to_bs_bps = 100e6;
  double edge_denoising_steps = 1000.0;
  double capacity_gb = 20.0;
  double alpha = 0.7;
  double deadline_penalty = 10.0;
  double capacity_penalty = 100.0;
  Range input_mb{5.0, 10.0};
  Range output_mb{5.0, 10.0};
  std::vector<double> popularity_states{0.2, 0.5, 0.7};
  MatrixRows popularity_transition{{0.6, 0.2, 0.2}, {0.1, 0.7, 0.2}, {0.2, 0.3, 0.5}};
  MatrixRows mobility_transition{{0.6, 0.1, 0.3}, {0.3, 0.6, 0.1}, {0.1, 0.3, 0.6}};
  double concentrated_sigma_m = 31.25;
  double boundary_band_m = 25.0;
  ModelRanges model_ranges;
  /// When non-empty, used verbatim instead of drawing from model_ranges.
  std::vector<GenAiModelSpec> model_overrides;
};

struct OptimizerConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Shared by the diffusion actor (D3PG) and the MLP actor (DDPG baseline).
struct ActorCriticConfig {
  int denoise_steps = 5;
  double beta_min = 0.1;
  double beta_max = 10.0;
  /// Clip bound of the per-step clean-action estimate; 0 disables.
  double x0_clip = 1.0;
  std::vector<int> actor_hidden{128, 128, 128};
  std::vector<int> critic_hidden{256, 256};
  double actor_lr = 1e-3;
  double critic_lr = 1e-3;
  double discount = 0.95;
  double target_rate = 0.005;
  int batch_size = 64;
  int replay_capacity = 100000;
  int warmup_batches = 10;
  double explore_sigma_start = 0.1;
  double explore_sigma_end = 0.01;
  /// Explored raw actions are clipped to [explore_floor, 1 - explore_floor].
  double explore_floor = 0.2689414213699951;  // logistic(-1), matching x0_clip
  double reward_scale = 0.01;
  /// Learner-side lower clip of the slot reward; keeps the zero-bandwidth
  /// delay sentinel from dominating the critic. Metrics keep the raw reward.
  double reward_floor = -200.0;
};

enum class FrameRewardSign {
  consistent,  // mean slot reward minus the capacity penalty
  printed,     // negated mean slot reward minus the capacity penalty
};

struct DdqnConfig {
  std::vector<int> hidden{128, 128};
  double lr = 1e-3;
  double discount = 0.95;
  double target_rate = 0.005;
  int batch_size = 64;
  int replay_capacity = 10000;
  int warmup_batches = 1;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.6;
  double reward_scale = 0.01;
  /// Learner-side lower clip of the frame reward, as for the slot learner.
  double reward_floor = -300.0;
  FrameRewardSign frame_reward_sign = FrameRewardSign::consistent;
};

struct GaConfig {
  int population = 40;
  int generations = 60;
  double crossover_prob = 0.9;
  double crossover_eta = 15.0;
  /// Per-gene mutation probability; negative selects 1/(2U).
  double mutation_prob = -1.0;
  double mutation_eta = 20.0;
  bool parallel_fitness = false;
};

struct RunConfig {
  std::uint64_t seed = 1;
  int episodes = 500;
  bool record_timing = false;
};

struct SimConfig {
  EnvConfig env;
  ActorCriticConfig d3pg;
  DdqnConfig ddqn;
  GaConfig ga;
  OptimizerConfig adam;
  RunConfig run;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

std::string config_to_json(const SimConfig& cfg);
/// Missing keys keep their defaults.
SimConfig config_from_json(const std::string& text);
SimConfig load_config(const std::filesystem::path& path);

}  // namespace aigc
