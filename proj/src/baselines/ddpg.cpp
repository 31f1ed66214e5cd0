#include "aigc/baselines/ddpg.hpp"

#include <stdexcept>

#include "aigc/agents/state.hpp"

namespace aigc::baselines {

MlpActor::MlpActor(nn::DenseNet net) : net_(std::move(net)) {
  if (net_.layer_count() == 0 || net_.layers().back().activation != nn::Activation::logistic)
    throw std::invalid_argument("MLP actor needs a logistic output layer");
}

nn::Matrix MlpActor::act(const nn::Matrix& states, Rng& /*rng*/, bool /*deterministic*/) const {
  return net_.forward(states);
}

nn::Matrix MlpActor::act_for_update(const nn::Matrix& states, Rng& /*rng*/) {
  return net_.forward(states, cache_);
}

nn::Gradients MlpActor::gradient(const nn::Matrix& grad_action) const {
  nn::Gradients g = net_.zero_gradients();
  net_.backward(cache_, grad_action, &g);
  return g;
}

void MlpActor::set_net(nn::DenseNet net) {
  agents::require_same_architecture(net_, net);
  net_ = std::move(net);
  cache_ = {};
}

std::unique_ptr<agents::Actor> MlpActor::clone() const { return std::make_unique<MlpActor>(net_); }

std::unique_ptr<agents::Actor> make_mlp_actor(int users, int models, const ActorCriticConfig& cfg, Rng& rng) {
  return std::make_unique<MlpActor>(nn::DenseNet(agents::slot_state_dim(users, models), cfg.actor_hidden,
                                                 agents::slot_action_dim(users), nn::Activation::relu,
                                                 nn::Activation::logistic, rng));
}

std::vector<double> ddpg_actor_forward(const nn::DenseNet& net, std::span<const double> state) {
  return net.forward(state);
}

}  // namespace aigc::baselines
