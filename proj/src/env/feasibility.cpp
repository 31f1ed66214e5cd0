#include "aigc/env/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aigc {

namespace {

ConstraintCheck upper_bound(double value, double bound) {
  const double margin = value - bound;
  return {margin <= kFeasibilityTolerance, margin};
}

ConstraintCheck unit_box(std::span<const double> values) {
  double margin = -std::numeric_limits<double>::infinity();
  for (double v : values) margin = std::max({margin, v - 1.0, -v});
  if (values.empty()) margin = 0.0;
  return {margin <= kFeasibilityTolerance && !std::isnan(margin), margin};
}

}  // namespace

double cache_storage_gb(const CacheVector& cache, std::span<const GenAiModelSpec> models) {
  double total = 0.0;
  for (std::size_t m = 0; m < cache.size(); ++m)
    if (cache.rho[m] != 0) total += models[m].storage_gb;
  return total;
}

FeasibilityReport check_feasibility(const CacheVector& cache, const Allocation& alloc,
                                    std::span<const int> requested_models,
                                    std::span<const GenAiModelSpec> models, double capacity_gb) {
  if (cache.size() != models.size())
    throw std::invalid_argument("check_feasibility: cache size does not match model count");
  if (alloc.b.size() != requested_models.size() || alloc.xi.size() != requested_models.size())
    throw std::invalid_argument("check_feasibility: allocation size does not match user count");

  FeasibilityReport r;
  double binary_margin = 0.0;
  for (std::uint8_t flag : cache.rho) {
    if (flag > 1) binary_margin = std::max(binary_margin, static_cast<double>(flag) - 1.0);
  }
  r.binary_cache = {binary_margin == 0.0, binary_margin};
  r.bandwidth_box = unit_box(alloc.b);
  r.compute_box = unit_box(alloc.xi);
  r.storage = upper_bound(cache_storage_gb(cache, models), capacity_gb);

  double b_sum = 0.0;
  double xi_sum = 0.0;
  double cached_margin = -std::numeric_limits<double>::infinity();
  bool uncached_clear = true;
  for (std::size_t u = 0; u < requested_models.size(); ++u) {
    b_sum += alloc.b[u];
    xi_sum += alloc.xi[u];
    const double rho = cache.rho[static_cast<std::size_t>(requested_models[u])] != 0 ? 1.0 : 0.0;
    cached_margin = std::max(cached_margin, alloc.xi[u] - rho);
    // Uncached requests must receive exactly zero compute.
    if (rho == 0.0 && alloc.xi[u] != 0.0) uncached_clear = false;
  }
  if (requested_models.empty()) cached_margin = 0.0;
  r.bandwidth_total = upper_bound(b_sum, 1.0);
  r.compute_total = upper_bound(xi_sum, 1.0);
  r.compute_cached = {
      uncached_clear && cached_margin <= kFeasibilityTolerance && !std::isnan(cached_margin),
      cached_margin};
  return r;
}

}  // namespace aigc
