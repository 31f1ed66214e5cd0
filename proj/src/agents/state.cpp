#include "aigc/agents/state.hpp"

#include <cmath>
#include <stdexcept>

#include "aigc/env/service.hpp"

namespace aigc::agents {

namespace {

double min_max(double v, const Range& r) { return r.hi > r.lo ? (v - r.lo) / (r.hi - r.lo) : 0.0; }

}  // namespace

std::vector<double> build_slot_state(const SlotSnapshot& snapshot, const CacheVector& cache,
                                     std::span<const GenAiModelSpec> models, const EnvConfig& cfg) {
  const auto u = snapshot.users.size();
  const auto m = models.size();
  if (cache.size() != m) throw std::invalid_argument("cache size differs from model count");
  std::vector<double> s(4 * u + m);
  for (std::size_t i = 0; i < u; ++i) {
    const auto& user = snapshot.users[i];
    const auto model = static_cast<std::size_t>(user.request.model);
    s[i] = std::log10(user.channel_gain / kGainReference);
    s[u + i] = static_cast<double>(model + 1) / static_cast<double>(m);
    s[2 * u + m + i] = min_max(user.request.d_in_bits / kBitsPerMegabyte, cfg.input_mb);
    s[3 * u + m + i] = min_max(models[model].d_out_bits / kBitsPerMegabyte, cfg.output_mb);
  }
  for (std::size_t j = 0; j < m; ++j) s[2 * u + j] = cache.rho[j] != 0 ? 1.0 : 0.0;
  return s;
}

std::vector<std::uint8_t> cached_mask_from_state(std::span<const double> state, int users, int models) {
  const auto u = static_cast<std::size_t>(users);
  const auto m = static_cast<std::size_t>(models);
  if (state.size() != 4 * u + m) throw std::invalid_argument("state has the wrong dimension");
  std::vector<std::uint8_t> mask(u);
  for (std::size_t i = 0; i < u; ++i) {
    const auto model = static_cast<long>(std::lround(state[u + i] * static_cast<double>(m))) - 1;
    if (model < 0 || static_cast<std::size_t>(model) >= m) throw std::invalid_argument("state has no valid model index");
    mask[i] = state[2 * u + static_cast<std::size_t>(model)] > 0.5 ? 1 : 0;
  }
  return mask;
}

std::vector<std::uint8_t> cached_mask(const CacheVector& cache, std::span<const ServiceRequest> requests) {
  std::vector<std::uint8_t> mask(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) mask[i] = cache.cached(requests[i].model) ? 1 : 0;
  return mask;
}

}  // namespace aigc::agents
