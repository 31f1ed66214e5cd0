#pragma once

#include <span>
#include <utility>

#include "aigc/env/types.hpp"
#include "aigc/random.hpp"

namespace aigc::baselines {

/// Static popularity cache: walks models from most to least popular (index
/// order) and keeps each one that still fits.
CacheVector schrs_cache(std::span<const GenAiModelSpec> models, double capacity_gb);

/// Random cache: shuffles the models, then keeps each one that still fits.
CacheVector rcars_cache(std::span<const GenAiModelSpec> models, double capacity_gb, Rng& rng);

/// Equal bandwidth for everyone, equal compute over users whose model is cached.
Allocation rcars_allocation(const CacheVector& cache, std::span<const ServiceRequest> requests);

std::pair<CacheVector, Allocation> rcars_decide(std::span<const GenAiModelSpec> models, double capacity_gb,
                                                std::span<const ServiceRequest> requests, Rng& rng);

}  // namespace aigc::baselines
