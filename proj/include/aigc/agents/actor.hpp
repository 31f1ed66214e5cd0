#pragma once

#include <memory>
#include <string>

#include "aigc/diffusion/denoiser.hpp"
#include "aigc/nn/dense_net.hpp"
#include "aigc/random.hpp"

namespace aigc::agents {

/// Deterministic-policy actor producing raw actions in [0,1]. Columns of
/// every matrix are samples.
class Actor {
 public:
  virtual ~Actor() = default;

  virtual std::string kind() const = 0;
  virtual int state_dim() const = 0;
  virtual int action_dim() const = 0;

  virtual nn::Matrix act(const nn::Matrix& states, Rng& rng, bool deterministic) const = 0;
  /// Like act, but records what gradient() needs.
  virtual nn::Matrix act_for_update(const nn::Matrix& states, Rng& rng) = 0;
  /// Parameter gradient of sum(grad_action .* action) for the last act_for_update.
  virtual nn::Gradients gradient(const nn::Matrix& grad_action) const = 0;

  virtual const nn::DenseNet& net() const = 0;
  virtual nn::DenseNet& net() = 0;
  /// Replaces the parameters; the architecture must match.
  virtual void set_net(nn::DenseNet net) = 0;
  virtual std::unique_ptr<Actor> clone() const = 0;
};

/// Reverse-diffusion sampler used as the actor.
class DiffusionActor final : public Actor {
 public:
  DiffusionActor(diffusion::Denoiser denoiser, diffusion::NoiseSchedule schedule);

  std::string kind() const override { return "diffusion"; }
  int state_dim() const override { return denoiser_.state_dim(); }
  int action_dim() const override { return denoiser_.action_dim(); }
  nn::Matrix act(const nn::Matrix& states, Rng& rng, bool deterministic) const override;
  nn::Matrix act_for_update(const nn::Matrix& states, Rng& rng) override;
  nn::Gradients gradient(const nn::Matrix& grad_action) const override;
  const nn::DenseNet& net() const override { return denoiser_.net(); }
  nn::DenseNet& net() override { return denoiser_.net(); }
  void set_net(nn::DenseNet net) override;
  std::unique_ptr<Actor> clone() const override;

  const diffusion::Denoiser& denoiser() const { return denoiser_; }
  const diffusion::NoiseSchedule& schedule() const { return schedule_; }

 private:
  diffusion::Denoiser denoiser_;
  diffusion::NoiseSchedule schedule_;
  diffusion::ChainTrace trace_;
};

/// Checks that a replacement network has the same layer shapes and activations.
void require_same_architecture(const nn::DenseNet& a, const nn::DenseNet& b);

}  // namespace aigc::agents
