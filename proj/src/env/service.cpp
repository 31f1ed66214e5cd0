#include "aigc/env/service.hpp"

#include <algorithm>
#include <stdexcept>

#include "aigc/env/channel.hpp"

namespace aigc {

void validate_model(const GenAiModelSpec& spec) {
  if (!(spec.a1 < spec.a3)) throw std::invalid_argument("model constants need a1 < a3");
  if (!(spec.a4 < spec.a2)) throw std::invalid_argument("model constants need a4 < a2");
  if (!(spec.b1 > 0.0 && spec.b2 > 0.0)) throw std::invalid_argument("model delays must be positive");
  if (!(spec.storage_gb > 0.0)) throw std::invalid_argument("model storage must be positive");
  if (!(spec.d_out_bits > 0.0)) throw std::invalid_argument("model output size must be positive");
}

namespace {

double transfer_time(double bits, double rate) {
  if (!(rate > 0.0)) return kDelaySentinel;
  return std::min(bits / rate, kDelaySentinel);
}

}  // namespace

ServiceDelays service_delays(const ServiceRequest& request, bool cached, double b_u, double xi_u,
                             double gain, const GenAiModelSpec& spec, const EnvConfig& cfg) {
  ServiceDelays d;
  d.up = transfer_time(request.d_in_bits, uplink_rate(b_u, gain, cfg));
  d.dw = transfer_time(spec.d_out_bits, downlink_rate(gain, cfg));
  if (cached) {
    d.gt = spec.b1 * xi_u * cfg.edge_denoising_steps + spec.b2;
  } else {
    d.up += request.d_in_bits / cfg.bs_to_cloud_bps;
    d.dw += spec.d_out_bits / cfg.cloud_to_bs_bps;
    d.gt = spec.b1 * spec.a3 + spec.b2;
  }
  return d;
}

double gen_quality(double xi_u, bool cached, const GenAiModelSpec& spec, const EnvConfig& cfg) {
  if (!cached) return spec.a4;
  const double steps = xi_u * cfg.edge_denoising_steps;
  if (steps <= spec.a1) return spec.a2;
  if (steps >= spec.a3) return spec.a4;
  return (spec.a4 - spec.a2) / (spec.a3 - spec.a1) * (steps - spec.a1) + spec.a2;
}

SlotReward slot_utility_and_reward(std::span<const double> utilities,
                                   std::span<const double> total_delays, const EnvConfig& cfg) {
  if (utilities.size() != total_delays.size() || utilities.empty())
    throw std::invalid_argument("slot_utility_and_reward: mismatched or empty inputs");
  double utility_sum = 0.0;
  double penalised_sum = 0.0;
  for (std::size_t u = 0; u < utilities.size(); ++u) {
    utility_sum += utilities[u];
    penalised_sum += utilities[u];
    if (total_delays[u] > cfg.slot_duration_s) penalised_sum += cfg.deadline_penalty;
  }
  const double n = static_cast<double>(utilities.size());
  return {utility_sum / n, -penalised_sum / n};
}

SlotOutcome evaluate_slot(const SlotSnapshot& snapshot, const CacheVector& cache,
                          const Allocation& alloc, std::span<const GenAiModelSpec> models,
                          const EnvConfig& cfg) {
  const std::size_t n = snapshot.users.size();
  if (alloc.b.size() != n || alloc.xi.size() != n)
    throw std::invalid_argument("evaluate_slot: allocation size does not match user count");
  if (cache.size() != models.size())
    throw std::invalid_argument("evaluate_slot: cache size does not match model count");
  SlotOutcome out;
  out.d_up.resize(n);
  out.d_dw.resize(n);
  out.d_gt.resize(n);
  out.d_tl.resize(n);
  out.b_gt.resize(n);
  out.utility.resize(n);
  out.cache_hit.resize(n);
  out.deadline_violated.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    const UserSnapshot& user = snapshot.users[u];
    const GenAiModelSpec& spec = models[static_cast<std::size_t>(user.request.model)];
    const bool hit = cache.cached(user.request.model);
    const ServiceDelays d =
        service_delays(user.request, hit, alloc.b[u], alloc.xi[u], user.channel_gain, spec, cfg);
    out.d_up[u] = d.up;
    out.d_dw[u] = d.dw;
    out.d_gt[u] = d.gt;
    out.d_tl[u] = d.up + d.dw + d.gt;
    out.b_gt[u] = gen_quality(alloc.xi[u], hit, spec, cfg);
    out.utility[u] = weighted_utility(out.d_tl[u], out.b_gt[u], cfg.alpha);
    out.cache_hit[u] = hit ? 1 : 0;
    out.deadline_violated[u] = out.d_tl[u] > cfg.slot_duration_s ? 1 : 0;
    out.hit_count += hit ? 1 : 0;
    out.violation_count += out.deadline_violated[u];
  }
  const SlotReward r = slot_utility_and_reward(out.utility, out.d_tl, cfg);
  out.mean_utility = r.mean_utility;
  out.slot_reward = r.slot_reward;
  return out;
}

}  // namespace aigc
