#pragma once

#include <span>

#include "aigc/env/types.hpp"

namespace aigc {

inline constexpr double kFeasibilityTolerance = 1e-9;

/// margin is the signed excess over the constraint bound: positive means
/// violated, zero or negative means slack.
struct ConstraintCheck {
  bool satisfied = true;
  double margin = 0.0;
};

struct FeasibilityReport {
  ConstraintCheck binary_cache;     // every rho_m is 0 or 1
  ConstraintCheck bandwidth_box;    // 0 <= b_u <= 1
  ConstraintCheck compute_box;      // 0 <= xi_u <= 1
  ConstraintCheck storage;          // cached storage <= C
  ConstraintCheck bandwidth_total;  // sum b_u <= 1
  ConstraintCheck compute_total;    // sum xi_u <= 1
  ConstraintCheck compute_cached;   // xi_u = 0 when the requested model is not cached

  /// The box and sum constraints on b and xi plus the cached-only compute
  /// rule: what an allocation amender guarantees.
  bool allocation_feasible() const {
    return bandwidth_box.satisfied && compute_box.satisfied && bandwidth_total.satisfied &&
           compute_total.satisfied && compute_cached.satisfied;
  }
  bool all_satisfied() const {
    return allocation_feasible() && binary_cache.satisfied && storage.satisfied;
  }
};

FeasibilityReport check_feasibility(const CacheVector& cache, const Allocation& alloc,
                                    std::span<const int> requested_models,
                                    std::span<const GenAiModelSpec> models, double capacity_gb);

double cache_storage_gb(const CacheVector& cache, std::span<const GenAiModelSpec> models);

}  // namespace aigc
