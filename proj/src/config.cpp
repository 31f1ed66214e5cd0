#include "aigc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace aigc {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(Range, lo, hi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ModelRanges, a1, a2, a3, a4, b1, b2, storage_gb)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GenAiModelSpec, model_id, storage_gb, a1, a2, a3,
                                                a4, b1, b2, d_out_bits)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    EnvConfig, frames, slots, slot_duration_s, users, models, area_side_m, min_distance_m,
    uplink_bandwidth_hz, downlink_bandwidth_hz, user_power_dbm, bs_power_dbm, noise_psd_dbm_hz,
    bs_to_cloud_bps, cloud_to_bs_bps, edge_denoising_steps, capacity_gb, alpha, deadline_penalty,
    capacity_penalty, input_mb, output_mb, popularity_states, popularity_transition,
    mobility_transition, concentrated_sigma_m, boundary_band_m, model_ranges, model_overrides)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(OptimizerConfig, beta1, beta2, epsilon)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ActorCriticConfig, denoise_steps, beta_min,
                                                beta_max, x0_clip, actor_hidden, critic_hidden, actor_lr,
                                                critic_lr, discount, target_rate, batch_size,
                                                replay_capacity, warmup_batches,
                                                explore_sigma_start, explore_sigma_end, explore_floor,
                                                reward_scale, reward_floor)
NLOHMANN_JSON_SERIALIZE_ENUM(FrameRewardSign, {{FrameRewardSign::consistent, "consistent"},
                                               {FrameRewardSign::printed, "printed"}})
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(DdqnConfig, hidden, lr, discount, target_rate,
                                                batch_size, replay_capacity, warmup_batches,
                                                epsilon_start, epsilon_end,
                                                epsilon_decay_fraction, reward_scale, reward_floor,
                                                frame_reward_sign)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GaConfig, population, generations, crossover_prob,
                                                crossover_eta, mutation_prob, mutation_eta,
                                                parallel_fitness)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, seed, episodes, record_timing)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SimConfig, env, d3pg, ddqn, ga, adam, run)

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid config: " + what);
}

void require_stochastic(const MatrixRows& rows, std::size_t n, const std::string& name) {
  require(rows.size() == n, name + " must have one row per state");
  for (const auto& row : rows) {
    require(row.size() == n, name + " must be square");
    double sum = 0.0;
    for (double p : row) {
      require(p >= 0.0 && std::isfinite(p), name + " entries must be non-negative");
      sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-12, name + " rows must sum to 1");
  }
}

void require_range(const Range& r, const std::string& name) {
  require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi, name + " must satisfy lo <= hi");
}

}  // namespace

void SimConfig::validate() const {
  const EnvConfig& e = env;
  require(e.frames >= 1, "env.frames >= 1");
  require(e.slots >= 1, "env.slots >= 1");
  require(e.users >= 1, "env.users >= 1");
  require(e.models >= 1 && e.models <= 20, "env.models in [1, 20]");
  require(e.slot_duration_s > 0, "env.slot_duration_s > 0");
  require(e.area_side_m > 0, "env.area_side_m > 0");
  require(e.min_distance_m > 0, "env.min_distance_m > 0");
  require(e.uplink_bandwidth_hz > 0 && e.downlink_bandwidth_hz > 0, "bandwidths > 0");
  require(e.bs_to_cloud_bps > 0 && e.cloud_to_bs_bps > 0, "backhaul rates > 0");
  require(e.edge_denoising_steps > 0, "env.edge_denoising_steps > 0");
  require(e.capacity_gb >= 0, "env.capacity_gb >= 0");
  require(e.alpha >= 0 && e.alpha <= 1, "env.alpha in [0, 1]");
  require(e.deadline_penalty >= 0 && e.capacity_penalty >= 0, "penalties >= 0");
  require_range(e.input_mb, "env.input_mb");
  require_range(e.output_mb, "env.output_mb");
  require(e.input_mb.lo > 0 && e.output_mb.lo > 0, "data sizes > 0");
  require(!e.popularity_states.empty(), "env.popularity_states non-empty");
  for (double g : e.popularity_states) require(g >= 0, "skewness values >= 0");
  require_stochastic(e.popularity_transition, e.popularity_states.size(),
                     "env.popularity_transition");
  require_stochastic(e.mobility_transition, 3, "env.mobility_transition");
  require(e.concentrated_sigma_m > 0, "env.concentrated_sigma_m > 0");
  require(e.boundary_band_m > 0 && 2 * e.boundary_band_m <= e.area_side_m,
          "env.boundary_band_m in (0, side/2]");
  const ModelRanges& m = e.model_ranges;
  for (const auto* r : {&m.a1, &m.a2, &m.a3, &m.a4, &m.b1, &m.b2, &m.storage_gb})
    require_range(*r, "env.model_ranges");
  require(m.a1.lo < m.a3.hi && m.a4.lo < m.a2.hi, "model ranges admit a1 < a3 and a4 < a2");
  require(m.b1.hi > 0 && m.b2.hi > 0 && m.storage_gb.hi > 0, "model delay/storage ranges > 0");
  if (!e.model_overrides.empty()) {
    require(static_cast<int>(e.model_overrides.size()) == e.models,
            "env.model_overrides must list env.models entries");
    for (const auto& spec : e.model_overrides) validate_model(spec);
  }

  for (const ActorCriticConfig* ac : {&d3pg}) {
    require(ac->denoise_steps >= 1, "d3pg.denoise_steps >= 1");
    require(ac->beta_min > 0 && ac->beta_min < ac->beta_max, "0 < d3pg.beta_min < d3pg.beta_max");
    require(ac->x0_clip >= 0, "d3pg.x0_clip >= 0");
    require(ac->explore_floor >= 0 && ac->explore_floor < 0.5, "0 <= d3pg.explore_floor < 0.5");
    require(ac->actor_lr > 0 && ac->critic_lr > 0, "d3pg learning rates > 0");
    require(ac->discount >= 0 && ac->discount <= 1, "d3pg.discount in [0, 1]");
    require(ac->target_rate > 0 && ac->target_rate <= 1, "d3pg.target_rate in (0, 1]");
    require(ac->batch_size >= 1 && ac->replay_capacity >= ac->batch_size,
            "d3pg replay_capacity >= batch_size >= 1");
    require(ac->warmup_batches >= 1, "d3pg.warmup_batches >= 1");
    require(ac->explore_sigma_start >= 0 && ac->explore_sigma_end >= 0, "exploration sigmas >= 0");
    require(ac->reward_scale > 0, "d3pg.reward_scale > 0");
  }
  require(ddqn.lr > 0, "ddqn.lr > 0");
  require(ddqn.discount >= 0 && ddqn.discount <= 1, "ddqn.discount in [0, 1]");
  require(ddqn.target_rate > 0 && ddqn.target_rate <= 1, "ddqn.target_rate in (0, 1]");
  require(ddqn.batch_size >= 1 && ddqn.replay_capacity >= ddqn.batch_size,
          "ddqn replay_capacity >= batch_size >= 1");
  require(ddqn.warmup_batches >= 1, "ddqn.warmup_batches >= 1");
  require(ddqn.epsilon_start >= 0 && ddqn.epsilon_start <= 1 && ddqn.epsilon_end >= 0 &&
              ddqn.epsilon_end <= 1,
          "ddqn epsilons in [0, 1]");
  require(ddqn.epsilon_decay_fraction > 0 && ddqn.epsilon_decay_fraction <= 1,
          "ddqn.epsilon_decay_fraction in (0, 1]");
  require(ddqn.reward_scale > 0, "ddqn.reward_scale > 0");
  require(ga.population >= 2, "ga.population >= 2");
  require(ga.generations >= 0, "ga.generations >= 0");
  require(ga.crossover_prob >= 0 && ga.crossover_prob <= 1, "ga.crossover_prob in [0, 1]");
  require(ga.mutation_prob <= 1, "ga.mutation_prob <= 1 (negative selects 1/(2U))");
  require(ga.crossover_eta >= 0 && ga.mutation_eta >= 0, "ga distribution indices >= 0");
  require(adam.beta1 >= 0 && adam.beta1 < 1 && adam.beta2 >= 0 && adam.beta2 < 1 &&
              adam.epsilon > 0,
          "adam constants");
  require(run.episodes >= 1, "run.episodes >= 1");
}

std::string config_to_json(const SimConfig& cfg) {
  const nlohmann::json j = cfg;
  return j.dump(2) + "\n";
}

SimConfig config_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SimConfig cfg = j.get<SimConfig>();
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return config_from_json(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed config " + path.string() + ": " + e.what());
  }
}

}  // namespace aigc
