#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aigc/env/types.hpp"

namespace aigc::agents {

/// Projects a raw action [b~ (U); xi~ (U)] onto the feasible allocations.
/// b = b~ / sum(b~), or the uniform split when sum(b~) == 0.
/// xi = mask .* xi~ / sum(mask .* xi~), or all zeros when that sum is 0.
Allocation amend_continuous(std::span<const double> raw, std::span<const std::uint8_t> cached);

/// Vector-Jacobian product of amend_continuous at raw: maps the gradient with
/// respect to [b; xi] to the gradient with respect to [b~; xi~].
std::vector<double> amend_backward(std::span<const double> raw, std::span<const std::uint8_t> cached,
                                   std::span<const double> grad_allocation);

/// Concatenates [b; xi].
std::vector<double> flatten(const Allocation& alloc);

/// rho_m = floor(action / 2^(M-1-m)) mod 2 for zero-based m; model 0 is the
/// most significant bit.
CacheVector decode_caching_action(std::uint64_t action, int models);
std::uint64_t encode_caching_action(const CacheVector& cache);

}  // namespace aigc::agents
