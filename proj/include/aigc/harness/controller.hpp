#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "aigc/config.hpp"
#include "aigc/env/types.hpp"

namespace aigc::harness {

enum class Algorithm { t2drl, ddpg, schrs, rcars };

std::string to_string(Algorithm algo);
/// Throws std::invalid_argument for an unknown name.
Algorithm parse_algorithm(std::string_view name);

/// One decision maker for both timescales. The runner calls, per frame:
/// observe_frame_state, choose_cache; per slot: observe_slot_state,
/// choose_allocation, observe_slot_reward; then end_frame. Only the two
/// choose_* calls are timed, so learning work belongs in the observe_* hooks.
class Controller {
 public:
  virtual ~Controller() = default;

  virtual Algorithm algorithm() const = 0;

  /// learning enables exploration, replay and training.
  virtual void begin_episode(int /*episode*/, int /*total_episodes*/, bool /*learning*/) {}

  virtual void observe_frame_state(std::size_t /*popularity_state*/) {}
  virtual CacheVector choose_cache(std::size_t popularity_state) = 0;

  virtual void observe_slot_state(const SlotSnapshot& /*snapshot*/, const CacheVector& /*cache*/) {}
  virtual Allocation choose_allocation(const SlotSnapshot& snapshot, const CacheVector& cache) = 0;
  virtual void observe_slot_reward(double /*reward*/) {}

  virtual void end_frame(double /*frame_reward*/) {}
  /// Called after the terminal states were observed; drops pending transitions.
  virtual void end_episode() {}

  virtual void save(const std::filesystem::path& /*dir*/) const {}
  virtual void load(const std::filesystem::path& /*dir*/) {}
};

/// Builds the controller for algo against a fixed set of models.
std::unique_ptr<Controller> make_controller(Algorithm algo, const SimConfig& cfg,
                                            std::span<const GenAiModelSpec> models, std::uint64_t seed);

}  // namespace aigc::harness
