#pragma once

#include <memory>
#include <span>
#include <vector>

#include "aigc/agents/actor.hpp"
#include "aigc/config.hpp"

namespace aigc::baselines {

/// Plain MLP actor with a logistic output layer.
class MlpActor final : public agents::Actor {
 public:
  explicit MlpActor(nn::DenseNet net);

  std::string kind() const override { return "mlp"; }
  int state_dim() const override { return net_.input_dim(); }
  int action_dim() const override { return net_.output_dim(); }
  nn::Matrix act(const nn::Matrix& states, Rng& rng, bool deterministic) const override;
  nn::Matrix act_for_update(const nn::Matrix& states, Rng& rng) override;
  nn::Gradients gradient(const nn::Matrix& grad_action) const override;
  const nn::DenseNet& net() const override { return net_; }
  nn::DenseNet& net() override { return net_; }
  void set_net(nn::DenseNet net) override;
  std::unique_ptr<agents::Actor> clone() const override;

 private:
  nn::DenseNet net_;
  nn::ForwardCache cache_;
};

std::unique_ptr<agents::Actor> make_mlp_actor(int users, int models, const ActorCriticConfig& cfg, Rng& rng);

/// Raw action of the MLP actor for one state.
std::vector<double> ddpg_actor_forward(const nn::DenseNet& net, std::span<const double> state);

}  // namespace aigc::baselines
