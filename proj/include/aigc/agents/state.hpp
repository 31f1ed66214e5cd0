#pragma once

#include <span>
#include <vector>

#include "aigc/config.hpp"
#include "aigc/env/types.hpp"

namespace aigc::agents {

/// Channel gains are observed as log10(h / kGainReference).
inline constexpr double kGainReference = 1e-9;

inline int slot_state_dim(int users, int models) { return 4 * users + models; }
inline int slot_action_dim(int users) { return 2 * users; }

/// [h (U), phi (U), rho (M), d_in (U), d_out (U)], each block normalised:
/// log-compressed gains, requested model (m+1)/M, cache flags, min-max sizes.
std::vector<double> build_slot_state(const SlotSnapshot& snapshot, const CacheVector& cache,
                                     std::span<const GenAiModelSpec> models, const EnvConfig& cfg);

/// Per-user flag: is the requested model cached. Recovered from a state
/// vector produced by build_slot_state.
std::vector<std::uint8_t> cached_mask_from_state(std::span<const double> state, int users, int models);

std::vector<std::uint8_t> cached_mask(const CacheVector& cache, std::span<const ServiceRequest> requests);

}  // namespace aigc::agents
