#include "aigc/agents/actor.hpp"

#include <stdexcept>

namespace aigc::agents {

void require_same_architecture(const nn::DenseNet& a, const nn::DenseNet& b) {
  bool same = a.layer_count() == b.layer_count();
  for (std::size_t i = 0; same && i < a.layer_count(); ++i) {
    const auto& x = a.layers()[i];
    const auto& y = b.layers()[i];
    same = x.weight.rows() == y.weight.rows() && x.weight.cols() == y.weight.cols() &&
           x.activation == y.activation;
  }
  if (!same) throw std::invalid_argument("network architecture mismatch");
}

DiffusionActor::DiffusionActor(diffusion::Denoiser denoiser, diffusion::NoiseSchedule schedule)
    : denoiser_(std::move(denoiser)), schedule_(std::move(schedule)) {
  if (schedule_.steps != denoiser_.steps())
    throw std::invalid_argument("schedule and denoiser step counts differ");
}

nn::Matrix DiffusionActor::act(const nn::Matrix& states, Rng& rng, bool deterministic) const {
  return diffusion::sample_action(denoiser_, states, schedule_, rng, deterministic);
}

nn::Matrix DiffusionActor::act_for_update(const nn::Matrix& states, Rng& rng) {
  trace_ = diffusion::sample_chain(denoiser_, schedule_, states, rng, false);
  return trace_.action;
}

nn::Gradients DiffusionActor::gradient(const nn::Matrix& grad_action) const {
  if (trace_.caches.empty()) throw std::logic_error("gradient requested before act_for_update");
  return diffusion::chain_gradient(denoiser_, schedule_, trace_, grad_action);
}

void DiffusionActor::set_net(nn::DenseNet net) {
  require_same_architecture(denoiser_.net(), net);
  denoiser_ = diffusion::Denoiser(std::move(net), denoiser_.action_dim(), denoiser_.state_dim(),
                                  denoiser_.steps());
  trace_ = {};
}

std::unique_ptr<Actor> DiffusionActor::clone() const {
  return std::make_unique<DiffusionActor>(denoiser_, schedule_);
}

}  // namespace aigc::agents
