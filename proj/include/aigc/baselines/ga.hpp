#pragma once

#include <span>
#include <vector>

#include "aigc/config.hpp"
#include "aigc/env/types.hpp"
#include "aigc/random.hpp"

namespace aigc::baselines {

/// What the GA needs to score an allocation for one slot.
struct SlotContext {
  const SlotSnapshot* snapshot = nullptr;
  const CacheVector* cache = nullptr;
  std::span<const GenAiModelSpec> models;
  const EnvConfig* env = nullptr;
};

/// Mean of G_u + chi * [d_tl > tau] for the amended genes [b~; xi~]; lower is better.
double slot_objective(const SlotContext& ctx, std::span<const double> genes);

/// Bounded simulated binary crossover of one gene pair on [0, 1].
void sbx_crossover(double& a, double& b, double eta, Rng& rng);

/// Bounded polynomial mutation of one gene on [0, 1].
double polynomial_mutation(double x, double eta, Rng& rng);

using Population = std::vector<std::vector<double>>;

void evaluate_population_serial(const SlotContext& ctx, const Population& pop, std::vector<double>& fitness);
/// OpenMP version; bit-identical to the serial one.
void evaluate_population_parallel(const SlotContext& ctx, const Population& pop, std::vector<double>& fitness);

struct GaResult {
  Allocation allocation;
  std::vector<double> genes;
  double fitness = 0.0;
  /// Best fitness after initialisation and after each generation.
  std::vector<double> history;
};

GaResult ga_optimize(const SlotContext& ctx, const GaConfig& cfg, Rng& rng);

}  // namespace aigc::baselines
