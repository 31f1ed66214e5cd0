#include "aigc/diffusion/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace aigc::diffusion {

NoiseSchedule build_schedule(int steps, double beta_min, double beta_max, double x0_clip) {
  if (steps < 1) throw std::invalid_argument("schedule needs at least one step");
  if (!(beta_min > 0.0) || !(beta_min < beta_max))
    throw std::invalid_argument("schedule needs 0 < beta_min < beta_max");
  const double L = steps;
  if (!(x0_clip >= 0.0)) throw std::invalid_argument("x0_clip must be non-negative");
  NoiseSchedule s;
  s.steps = steps;
  s.x0_clip = x0_clip;
  double prev_bar = 1.0;
  for (int l = 1; l <= steps; ++l) {
    const double exponent = -beta_min / L - (2.0 * l - 1.0) / (2.0 * L * L) * (beta_max - beta_min);
    const double beta = -std::expm1(exponent);
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("schedule produced beta outside (0,1)");
    const double alpha = 1.0 - beta;
    const double bar = prev_bar * alpha;
    s.beta.push_back(beta);
    s.alpha.push_back(alpha);
    s.alpha_bar.push_back(bar);
    s.beta_bar.push_back((1.0 - prev_bar) / (1.0 - bar) * beta);
    prev_bar = bar;
  }
  return s;
}

namespace {

void check_step(int l, const NoiseSchedule& s, std::size_t a, std::size_t b) {
  if (l < 1 || l > s.steps) throw std::invalid_argument("diffusion step out of range");
  if (a != b) throw std::invalid_argument("noise dimension mismatch");
}

}  // namespace

std::vector<double> forward_marginal(std::span<const double> x0, int l, const NoiseSchedule& schedule,
                                     std::span<const double> noise) {
  check_step(l, schedule, x0.size(), noise.size());
  const double keep = std::sqrt(schedule.alpha_bar_at(l));
  const double spread = std::sqrt(1.0 - schedule.alpha_bar_at(l));
  std::vector<double> out(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) out[i] = keep * x0[i] + spread * noise[i];
  return out;
}

std::vector<double> forward_step(std::span<const double> x, int l, const NoiseSchedule& schedule,
                                 std::span<const double> noise) {
  check_step(l, schedule, x.size(), noise.size());
  const double keep = std::sqrt(schedule.alpha_at(l));
  const double spread = std::sqrt(schedule.beta_at(l));
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = keep * x[i] + spread * noise[i];
  return out;
}

}  // namespace aigc::diffusion
