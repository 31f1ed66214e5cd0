#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "aigc/agents/actor.hpp"
#include "aigc/agents/replay.hpp"
#include "aigc/config.hpp"
#include "aigc/nn/adam.hpp"

namespace aigc::agents {

struct ActorCriticStats {
  bool trained = false;
  double critic_loss = 0.0;
  double actor_objective = 0.0;
};

/// Returns dQ/da for a batch of amended actions and writes the batch-mean Q.
using ActionGradientFn = std::function<nn::Matrix(const nn::Matrix& amended, double* mean_q)>;

/// Deterministic actor-critic learner for slot-level allocation. The actor is
/// pluggable (diffusion sampler or plain MLP); critic, targets, replay and
/// the amender are shared. The critic scores the amended action.
class ActorCriticAgent {
 public:
  ActorCriticAgent(std::unique_ptr<Actor> actor, int users, int models, const ActorCriticConfig& cfg,
                   const OptimizerConfig& adam, std::uint64_t seed);
  ActorCriticAgent(std::unique_ptr<Actor> actor, nn::DenseNet critic, int users, int models,
                   const ActorCriticConfig& cfg, const OptimizerConfig& adam, std::uint64_t seed);

  int users() const { return users_; }
  int models() const { return models_; }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return 2 * users_; }

  /// Raw action in [0,1]^{2U}. With explore set the stochastic policy is used
  /// and N(0, sigma^2) is added before clipping; otherwise deterministic.
  std::vector<double> act(std::span<const double> state, bool explore, double sigma);

  void remember(SlotTransition t);
  const ReplayBuffer<SlotTransition>& replay() const { return replay_; }
  /// Replay size at which train_step starts updating.
  std::size_t warmup_size() const;

  /// Samples a batch and updates; a no-op with trained == false before warm-up.
  ActorCriticStats train_step();
  ActorCriticStats train_on(std::span<const SlotTransition* const> batch);

  /// Half mean squared TD error of the batch against the current targets.
  double critic_loss(std::span<const SlotTransition* const> batch);

  /// One policy ascent step on Q as described by dq_da. Returns the mean Q.
  double actor_step(const nn::Matrix& states, const ActionGradientFn& dq_da);

  /// Amends each raw column, taking cache membership from the state column.
  nn::Matrix amend_columns(const nn::Matrix& raw, const nn::Matrix& states) const;

  const Actor& actor() const { return *actor_; }
  Actor& actor() { return *actor_; }
  const Actor& target_actor() const { return *target_actor_; }
  const nn::DenseNet& critic() const { return critic_; }
  nn::DenseNet& critic() { return critic_; }
  const nn::DenseNet& target_critic() const { return target_critic_; }
  nn::DenseNet& target_critic() { return target_critic_; }
  const ActorCriticConfig& config() const { return cfg_; }

  void save(const std::filesystem::path& dir) const;
  void load(const std::filesystem::path& dir);

 private:
  nn::Matrix td_targets(std::span<const SlotTransition* const> batch);

  std::unique_ptr<Actor> actor_;
  std::unique_ptr<Actor> target_actor_;
  nn::DenseNet critic_;
  nn::DenseNet target_critic_;
  nn::Adam actor_opt_;
  nn::Adam critic_opt_;
  ReplayBuffer<SlotTransition> replay_;
  ActorCriticConfig cfg_;
  int users_;
  int models_;
  int state_dim_;
  Rng act_rng_;
  Rng train_rng_;
};

/// Critic Q(s, a) with input [s; a] and a scalar output.
nn::DenseNet make_critic(int state_dim, int action_dim, const std::vector<int>& hidden, Rng& rng);

/// Diffusion actor sized by cfg.
std::unique_ptr<Actor> make_diffusion_actor(int users, int models, const ActorCriticConfig& cfg, Rng& rng);

}  // namespace aigc::agents
