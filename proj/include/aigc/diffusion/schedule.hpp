#pragma once

#include <span>
#include <vector>

namespace aigc::diffusion {

/// Tables indexed by l - 1 for steps l = 1..L.
struct NoiseSchedule {
  int steps = 0;
  std::vector<double> beta;
  std::vector<double> alpha;
  std::vector<double> alpha_bar;
  std::vector<double> beta_bar;  // posterior variance; beta_bar[0] == 0
  /// When positive, each reverse step clips its implied clean-action
  /// estimate to [-x0_clip, x0_clip]. Entries that do not clip follow the
  /// plain noise-prediction mean.
  double x0_clip = 0.0;

  double beta_at(int l) const { return beta[static_cast<std::size_t>(l - 1)]; }
  double alpha_at(int l) const { return alpha[static_cast<std::size_t>(l - 1)]; }
  double alpha_bar_at(int l) const { return alpha_bar[static_cast<std::size_t>(l - 1)]; }
  double beta_bar_at(int l) const { return beta_bar[static_cast<std::size_t>(l - 1)]; }
  /// alpha_bar_{l-1}, with alpha_bar_0 = 1.
  double alpha_bar_before(int l) const { return l == 1 ? 1.0 : alpha_bar_at(l - 1); }
};

NoiseSchedule build_schedule(int steps, double beta_min, double beta_max, double x0_clip = 0.0);

/// sqrt(alpha_bar_l) * x0 + sqrt(1 - alpha_bar_l) * noise.
std::vector<double> forward_marginal(std::span<const double> x0, int l, const NoiseSchedule& schedule,
                                     std::span<const double> noise);

/// One noising step: sqrt(alpha_l) * x + sqrt(beta_l) * noise.
std::vector<double> forward_step(std::span<const double> x, int l, const NoiseSchedule& schedule,
                                 std::span<const double> noise);

}  // namespace aigc::diffusion
