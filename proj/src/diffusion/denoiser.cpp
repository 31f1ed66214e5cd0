#include "aigc/diffusion/denoiser.hpp"

#include <cmath>
#include <stdexcept>

namespace aigc::diffusion {

Denoiser::Denoiser(int action_dim, int state_dim, int steps, const std::vector<int>& hidden, Rng& rng)
    : net_(action_dim + steps + state_dim, hidden, action_dim, nn::Activation::relu,
           nn::Activation::identity, rng),
      action_dim_(action_dim),
      state_dim_(state_dim),
      steps_(steps) {}

Denoiser::Denoiser(nn::DenseNet net, int action_dim, int state_dim, int steps)
    : net_(std::move(net)), action_dim_(action_dim), state_dim_(state_dim), steps_(steps) {
  if (net_.input_dim() != action_dim + steps + state_dim || net_.output_dim() != action_dim)
    throw std::invalid_argument("denoiser network has the wrong shape");
}

nn::Matrix Denoiser::network_input(const nn::Matrix& x, int l, const nn::Matrix& states) const {
  if (l < 1 || l > steps_) throw std::invalid_argument("denoiser step out of range");
  if (x.rows() != action_dim_ || states.rows() != state_dim_ || x.cols() != states.cols())
    throw std::invalid_argument("denoiser input shape mismatch");
  nn::Matrix in = nn::Matrix::Zero(action_dim_ + steps_ + state_dim_, x.cols());
  in.topRows(action_dim_) = x;
  in.row(action_dim_ + l - 1).setOnes();
  in.bottomRows(state_dim_) = states;
  return in;
}

nn::Matrix Denoiser::predict_noise(const nn::Matrix& x, int l, const nn::Matrix& states) const {
  return net_.forward(network_input(x, l, states));
}

namespace {

double noise_coefficient(const NoiseSchedule& s, int l) {
  return (1.0 - s.alpha_at(l)) / std::sqrt(1.0 - s.alpha_bar_at(l));
}

void check_schedule(const Denoiser& d, const NoiseSchedule& s) {
  if (s.steps != d.steps()) throw std::invalid_argument("schedule and denoiser step counts differ");
}

}  // namespace

nn::Matrix reverse_mean_from_noise(const NoiseSchedule& schedule, int l, const nn::Matrix& x, const nn::Matrix& eps,
                                   nn::Matrix* clipped) {
  nn::Matrix mean = (x - noise_coefficient(schedule, l) * eps) / std::sqrt(schedule.alpha_at(l));
  if (clipped != nullptr) *clipped = nn::Matrix::Zero(x.rows(), x.cols());
  const double c = schedule.x0_clip;
  if (c <= 0.0) return mean;
  // Posterior mean k1 * x0_hat + k2 * x_l, which equals the line above
  // whenever x0_hat is left unclipped.
  const double bar = schedule.alpha_bar_at(l);
  const double bar_prev = schedule.alpha_bar_before(l);
  const double k1 = std::sqrt(bar_prev) * schedule.beta_at(l) / (1.0 - bar);
  const double k2 = std::sqrt(schedule.alpha_at(l)) * (1.0 - bar_prev) / (1.0 - bar);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double x0_hat = (x(i, j) - std::sqrt(1.0 - bar) * eps(i, j)) / std::sqrt(bar);
      if (std::fabs(x0_hat) <= c) continue;
      mean(i, j) = k1 * std::copysign(c, x0_hat) + k2 * x(i, j);
      if (clipped != nullptr) (*clipped)(i, j) = 1.0;
    }
  }
  return mean;
}

nn::Matrix reverse_mean(const Denoiser& denoiser, const nn::Matrix& x, int l, const nn::Matrix& states,
                        const NoiseSchedule& schedule) {
  check_schedule(denoiser, schedule);
  return reverse_mean_from_noise(schedule, l, x, denoiser.predict_noise(x, l, states), nullptr);
}

ChainTrace run_chain(const Denoiser& denoiser, const NoiseSchedule& schedule, const nn::Matrix& states,
                     const nn::Matrix& x_start, const std::vector<nn::Matrix>& step_noise) {
  check_schedule(denoiser, schedule);
  const int L = schedule.steps;
  if (!step_noise.empty() && step_noise.size() != static_cast<std::size_t>(L))
    throw std::invalid_argument("run_chain: need one noise matrix per step");
  ChainTrace t;
  t.states = states;
  t.x.resize(static_cast<std::size_t>(L) + 1);
  t.noise.resize(static_cast<std::size_t>(L));
  t.caches.resize(static_cast<std::size_t>(L));
  t.clipped.resize(static_cast<std::size_t>(L));
  t.x[static_cast<std::size_t>(L)] = x_start;
  for (int l = L; l >= 1; --l) {
    const auto li = static_cast<std::size_t>(l);
    const nn::Matrix& xl = t.x[li];
    const nn::Matrix& eps =
        denoiser.net().forward(denoiser.network_input(xl, l, states), t.caches[li - 1]);
    nn::Matrix next = reverse_mean_from_noise(schedule, l, xl, eps, &t.clipped[li - 1]);
    if (step_noise.empty()) {
      t.noise[li - 1] = nn::Matrix::Zero(xl.rows(), xl.cols());
    } else {
      t.noise[li - 1] = step_noise[li - 1];
      if (t.noise[li - 1].rows() != xl.rows() || t.noise[li - 1].cols() != xl.cols())
        throw std::invalid_argument("run_chain: noise shape mismatch");
      next += std::sqrt(schedule.beta_bar_at(l)) * t.noise[li - 1];
    }
    t.x[li - 1] = std::move(next);
  }
  t.action = nn::logistic(t.x[0]);
  return t;
}

namespace {

nn::Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  nn::Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.normal();
  return m;
}

}  // namespace

ChainTrace sample_chain(const Denoiser& denoiser, const NoiseSchedule& schedule, const nn::Matrix& states,
                        Rng& rng, bool deterministic) {
  const Eigen::Index a = denoiser.action_dim();
  const Eigen::Index n = states.cols();
  nn::Matrix start = normal_matrix(a, n, rng);
  std::vector<nn::Matrix> noise;
  if (!deterministic) {
    noise.resize(static_cast<std::size_t>(schedule.steps));
    for (int l = schedule.steps; l >= 1; --l)
      noise[static_cast<std::size_t>(l - 1)] =
          l == 1 ? nn::Matrix::Zero(a, n) : normal_matrix(a, n, rng);  // beta_bar_1 == 0
  }
  return run_chain(denoiser, schedule, states, start, noise);
}

nn::Matrix sample_action(const Denoiser& denoiser, const nn::Matrix& states, const NoiseSchedule& schedule,
                         Rng& rng, bool deterministic) {
  return sample_chain(denoiser, schedule, states, rng, deterministic).action;
}

nn::Gradients chain_gradient(const Denoiser& denoiser, const NoiseSchedule& schedule, const ChainTrace& trace,
                             const nn::Matrix& grad_action) {
  check_schedule(denoiser, schedule);
  const int L = schedule.steps;
  if (trace.caches.size() != static_cast<std::size_t>(L) || trace.x.size() != static_cast<std::size_t>(L) + 1)
    throw std::logic_error("chain_gradient: trace does not match the schedule");
  if (grad_action.rows() != trace.action.rows() || grad_action.cols() != trace.action.cols())
    throw std::invalid_argument("chain_gradient: gradient shape mismatch");

  nn::Gradients grads = denoiser.net().zero_gradients();
  const int a = denoiser.action_dim();
  // d action / d x0 of the logistic squash.
  nn::Matrix g = grad_action.array() * trace.action.array() * (1.0 - trace.action.array());
  for (int l = 1; l <= L; ++l) {
    const double inv_sqrt_alpha = 1.0 / std::sqrt(schedule.alpha_at(l));
    const nn::Matrix& clipped = trace.clipped[static_cast<std::size_t>(l - 1)];
    const nn::Matrix open = 1.0 - clipped.array();
    const nn::Matrix grad_eps = (-noise_coefficient(schedule, l) * inv_sqrt_alpha) * g.cwiseProduct(open);
    const nn::Matrix grad_in =
        denoiser.net().backward(trace.caches[static_cast<std::size_t>(l - 1)], grad_eps, &grads);
    nn::Matrix direct = inv_sqrt_alpha * g.cwiseProduct(open);
    if (schedule.x0_clip > 0.0) {
      const double bar_prev = schedule.alpha_bar_before(l);
      const double k2 = std::sqrt(schedule.alpha_at(l)) * (1.0 - bar_prev) / (1.0 - schedule.alpha_bar_at(l));
      direct += k2 * g.cwiseProduct(clipped);
    }
    g = direct + grad_in.topRows(a);
  }
  return grads;
}

}  // namespace aigc::diffusion
