#include "aigc/baselines/caching.hpp"

#include <numeric>
#include <vector>

namespace aigc::baselines {

namespace {

CacheVector fill_in_order(std::span<const GenAiModelSpec> models, double capacity_gb,
                          const std::vector<std::size_t>& order) {
  CacheVector c;
  c.rho.assign(models.size(), 0);
  double used = 0.0;
  for (auto m : order) {
    if (used + models[m].storage_gb <= capacity_gb) {
      c.rho[m] = 1;
      used += models[m].storage_gb;
    }
  }
  return c;
}

}  // namespace

CacheVector schrs_cache(std::span<const GenAiModelSpec> models, double capacity_gb) {
  std::vector<std::size_t> order(models.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return fill_in_order(models, capacity_gb, order);
}

CacheVector rcars_cache(std::span<const GenAiModelSpec> models, double capacity_gb, Rng& rng) {
  std::vector<std::size_t> order(models.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  return fill_in_order(models, capacity_gb, order);
}

Allocation rcars_allocation(const CacheVector& cache, std::span<const ServiceRequest> requests) {
  const auto u = requests.size();
  Allocation a;
  a.b.assign(u, u > 0 ? 1.0 / static_cast<double>(u) : 0.0);
  a.xi.assign(u, 0.0);
  std::size_t hits = 0;
  for (const auto& r : requests) hits += cache.cached(r.model) ? 1 : 0;
  for (std::size_t i = 0; i < u; ++i)
    if (cache.cached(requests[i].model)) a.xi[i] = 1.0 / static_cast<double>(hits);
  return a;
}

std::pair<CacheVector, Allocation> rcars_decide(std::span<const GenAiModelSpec> models, double capacity_gb,
                                                std::span<const ServiceRequest> requests, Rng& rng) {
  CacheVector c = rcars_cache(models, capacity_gb, rng);
  Allocation a = rcars_allocation(c, requests);
  return {std::move(c), std::move(a)};
}

}  // namespace aigc::baselines
