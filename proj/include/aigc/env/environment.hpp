#pragma once

#include <cstdint>
#include <vector>

#include "aigc/config.hpp"
#include "aigc/env/mobility.hpp"
#include "aigc/env/popularity.hpp"
#include "aigc/env/types.hpp"
#include "aigc/random.hpp"

namespace aigc {

/// Draws per-model constants uniformly over the configured ranges.
std::vector<GenAiModelSpec> draw_models(const EnvConfig& cfg, Rng& rng);

/// The stochastic edge network: popularity and mobility chains, fading and
/// request generation. Nothing here depends on the decisions taken, so two
/// controllers run on the same seed see identical request sequences.
class EdgeEnvironment {
 public:
  EdgeEnvironment(const EnvConfig& cfg, std::uint64_t seed);

  const EnvConfig& config() const { return cfg_; }
  const std::vector<GenAiModelSpec>& models() const { return models_; }
  int user_count() const { return cfg_.users; }
  int model_count() const { return cfg_.models; }

  /// Restores the initial chain states and reseeds the per-episode stream.
  void reset(std::uint64_t episode);

  std::size_t popularity_state() const { return popularity_.chain.current; }
  double skewness() const { return popularity_.current_skewness(); }
  std::size_t mobility_state() const { return mobility_.chain.current; }
  const std::vector<double>& request_pmf() const { return pmfs_[popularity_state()]; }

  /// Moves the popularity chain to the next frame.
  void advance_frame();

  /// Samples users under the current mobility state, then steps mobility.
  SlotSnapshot next_slot();

  SlotOutcome evaluate(const SlotSnapshot& snapshot, const CacheVector& cache,
                       const Allocation& alloc) const;

 private:
  EnvConfig cfg_;
  Rng master_;
  Rng episode_rng_;
  std::vector<GenAiModelSpec> models_;
  std::vector<std::vector<double>> pmfs_;
  PopularityChain popularity_;
  MobilityChain mobility_;
  std::size_t initial_popularity_ = 0;
  std::size_t initial_mobility_ = 0;
};

}  // namespace aigc
