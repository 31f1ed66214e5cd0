#pragma once

#include <span>

#include "aigc/config.hpp"
#include "aigc/env/types.hpp"

namespace aigc {

/// Stand-in for an infinite delay (zero bandwidth or a dead link); large
/// enough to always miss the deadline, small enough to keep sums finite.
inline constexpr double kDelaySentinel = 1e6;

inline constexpr double kBitsPerMegabyte = 8e6;

struct ServiceDelays {
  double up = 0.0;
  double dw = 0.0;
  double gt = 0.0;

  double total() const { return up + dw + gt; }
};

ServiceDelays service_delays(const ServiceRequest& request, bool cached, double b_u, double xi_u,
                             double gain, const GenAiModelSpec& spec, const EnvConfig& cfg);

/// Total-variation value of the generated image; lower is better.
double gen_quality(double xi_u, bool cached, const GenAiModelSpec& spec, const EnvConfig& cfg);

inline double weighted_utility(double d_tl, double b_gt, double alpha) {
  return alpha * d_tl + (1.0 - alpha) * b_gt;
}

struct SlotReward {
  double mean_utility = 0.0;
  double slot_reward = 0.0;
};

/// Mean utility and -(1/U) * sum(G_u + chi * [d_tl > tau]).
SlotReward slot_utility_and_reward(std::span<const double> utilities,
                                   std::span<const double> total_delays, const EnvConfig& cfg);

/// Full per-user evaluation of one slot under a cache and an allocation.
SlotOutcome evaluate_slot(const SlotSnapshot& snapshot, const CacheVector& cache,
                          const Allocation& alloc, std::span<const GenAiModelSpec> models,
                          const EnvConfig& cfg);

}  // namespace aigc
