#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "aigc/agents/replay.hpp"
#include "aigc/config.hpp"
#include "aigc/nn/adam.hpp"

namespace aigc::agents {

/// Index of the largest entry; ties go to the lowest index.
std::uint64_t greedy_action(std::span<const double> q);

/// r + discount * q_target_next[argmax q_online_next].
double double_q_target(double reward, double discount, std::span<const double> q_online_next,
                       std::span<const double> q_target_next);

/// Frame reward from the K slot rewards, minus the capacity penalty when the
/// cache exceeds capacity.
double frame_reward(std::span<const double> slot_rewards, const CacheVector& cache,
                    std::span<const GenAiModelSpec> models, const EnvConfig& cfg,
                    FrameRewardSign sign = FrameRewardSign::consistent);

struct DdqnStats {
  bool trained = false;
  double loss = 0.0;
};

/// Double DQN over the 2^M caching actions. The Q-network scores one
/// (state, action) pair: input [one-hot popularity state (J); cache bits (M)].
class DdqnAgent {
 public:
  DdqnAgent(int states, int models, const DdqnConfig& cfg, const OptimizerConfig& adam, std::uint64_t seed);
  DdqnAgent(nn::DenseNet online, int states, int models, const DdqnConfig& cfg, const OptimizerConfig& adam,
            std::uint64_t seed);

  int state_count() const { return states_; }
  int model_count() const { return models_; }
  std::uint64_t action_count() const { return std::uint64_t{1} << models_; }

  /// Q(s, a) for every action a, in action order.
  std::vector<double> q_values(std::size_t state) const;
  std::vector<double> target_q_values(std::size_t state) const;

  /// Uniform action with probability epsilon, otherwise greedy.
  std::uint64_t act(std::size_t state, double epsilon);

  void remember(FrameTransition t);
  const ReplayBuffer<FrameTransition>& replay() const { return replay_; }
  std::size_t warmup_size() const;

  DdqnStats train_step();
  DdqnStats train_on(std::span<const FrameTransition* const> batch);

  /// Linear decay from epsilon_start to epsilon_end over the configured
  /// fraction of episodes, then constant.
  double epsilon_for_episode(int episode, int total_episodes) const;

  const nn::DenseNet& online() const { return online_; }
  nn::DenseNet& online() { return online_; }
  const nn::DenseNet& target() const { return target_; }
  nn::DenseNet& target() { return target_; }

  void save(const std::filesystem::path& dir) const;
  void load(const std::filesystem::path& dir);

 private:
  nn::Matrix pair_inputs(std::span<const std::size_t> states, std::span<const std::uint64_t> actions) const;
  std::vector<double> all_actions(const nn::DenseNet& net, std::size_t state) const;

  nn::DenseNet online_;
  nn::DenseNet target_;
  nn::Adam opt_;
  ReplayBuffer<FrameTransition> replay_;
  DdqnConfig cfg_;
  int states_;
  int models_;
  nn::Matrix action_bits_;  // M x 2^M, column a holds the cache vector of a
  Rng act_rng_;
  Rng train_rng_;
};

}  // namespace aigc::agents
