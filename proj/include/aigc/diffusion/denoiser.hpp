#pragma once

#include <vector>

#include "aigc/diffusion/schedule.hpp"
#include "aigc/nn/dense_net.hpp"
#include "aigc/random.hpp"

namespace aigc::diffusion {

/// Noise predictor eps_theta(x_l, l, s). Network input rows are
/// [x (action_dim); one-hot l (steps); state (state_dim)].
class Denoiser {
 public:
  Denoiser(int action_dim, int state_dim, int steps, const std::vector<int>& hidden, Rng& rng);
  Denoiser(nn::DenseNet net, int action_dim, int state_dim, int steps);

  int action_dim() const { return action_dim_; }
  int state_dim() const { return state_dim_; }
  int steps() const { return steps_; }
  const nn::DenseNet& net() const { return net_; }
  nn::DenseNet& net() { return net_; }

  nn::Matrix network_input(const nn::Matrix& x, int l, const nn::Matrix& states) const;
  nn::Matrix predict_noise(const nn::Matrix& x, int l, const nn::Matrix& states) const;

 private:
  nn::DenseNet net_;
  int action_dim_;
  int state_dim_;
  int steps_;
};

/// (1/sqrt(alpha_l)) * (x_l - (1 - alpha_l)/sqrt(1 - alpha_bar_l) * eps_hat),
/// subject to the schedule's x0_clip.
nn::Matrix reverse_mean(const Denoiser& denoiser, const nn::Matrix& x, int l, const nn::Matrix& states,
                        const NoiseSchedule& schedule);

/// The reverse mean given a noise prediction. When clipped is non-null it
/// receives 1 where the clean-action estimate was clipped, else 0.
nn::Matrix reverse_mean_from_noise(const NoiseSchedule& schedule, int l, const nn::Matrix& x, const nn::Matrix& eps,
                                   nn::Matrix* clipped);

/// Everything a pathwise gradient through the reverse chain needs.
struct ChainTrace {
  nn::Matrix states;
  std::vector<nn::Matrix> x;             // x[l] for l = 0..L; x[L] is the starting noise
  std::vector<nn::Matrix> noise;         // injected draw of step l at index l - 1
  std::vector<nn::ForwardCache> caches;  // denoiser cache of step l at index l - 1
  std::vector<nn::Matrix> clipped;       // clip mask of step l at index l - 1
  nn::Matrix action;                     // logistic(x[0])
};

/// Runs l = L..1 from x_start with the given per-step draws. An empty
/// step_noise runs the deterministic chain.
ChainTrace run_chain(const Denoiser& denoiser, const NoiseSchedule& schedule, const nn::Matrix& states,
                     const nn::Matrix& x_start, const std::vector<nn::Matrix>& step_noise);

/// Draws x^L and, unless deterministic, the per-step noise, then runs the chain.
ChainTrace sample_chain(const Denoiser& denoiser, const NoiseSchedule& schedule, const nn::Matrix& states,
                        Rng& rng, bool deterministic);

/// Raw action in (0,1)^{action_dim}, one column per state column.
nn::Matrix sample_action(const Denoiser& denoiser, const nn::Matrix& states, const NoiseSchedule& schedule,
                         Rng& rng, bool deterministic);

/// Gradient with respect to the denoiser parameters of sum(grad_action .* action),
/// holding the trace's injected noise fixed.
nn::Gradients chain_gradient(const Denoiser& denoiser, const NoiseSchedule& schedule, const ChainTrace& trace,
                             const nn::Matrix& grad_action);

}  // namespace aigc::diffusion
