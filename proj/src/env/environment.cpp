#include "aigc/env/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aigc/env/channel.hpp"
#include "aigc/env/service.hpp"

namespace aigc {

namespace {

constexpr std::uint64_t kModelStream = 1;
constexpr std::uint64_t kInitialStateStream = 2;
constexpr std::uint64_t kEpisodeStreamBase = 1000;

double draw_open(const Range& r, Rng& rng) { return r.lo + (r.hi - r.lo) * rng.uniform_open(); }

}  // namespace

std::vector<GenAiModelSpec> draw_models(const EnvConfig& cfg, Rng& rng) {
  const ModelRanges& r = cfg.model_ranges;
  std::vector<GenAiModelSpec> models;
  models.reserve(static_cast<std::size_t>(cfg.models));
  for (int m = 0; m < cfg.models; ++m) {
    GenAiModelSpec spec;
    spec.model_id = m;
    do {
      spec.a1 = draw_open(r.a1, rng);
      spec.a2 = draw_open(r.a2, rng);
      spec.a3 = draw_open(r.a3, rng);
      spec.a4 = draw_open(r.a4, rng);
    } while (!(spec.a1 < spec.a3 && spec.a4 < spec.a2));
    spec.b1 = draw_open(r.b1, rng);
    spec.b2 = draw_open(r.b2, rng);
    spec.storage_gb = draw_open(r.storage_gb, rng);
    spec.d_out_bits = draw_open(cfg.output_mb, rng) * kBitsPerMegabyte;
    models.push_back(spec);
  }
  return models;
}

EdgeEnvironment::EdgeEnvironment(const EnvConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), master_(seed), episode_rng_(seed) {
  if (cfg_.model_overrides.empty()) {
    Rng model_rng = master_.stream(kModelStream);
    models_ = draw_models(cfg_, model_rng);
  } else {
    models_ = cfg_.model_overrides;
    for (int m = 0; m < cfg_.models; ++m) models_[static_cast<std::size_t>(m)].model_id = m;
  }
  for (const auto& spec : models_) validate_model(spec);

  for (double gamma : cfg_.popularity_states) pmfs_.push_back(zipf_pmf(gamma, cfg_.models));

  popularity_.skewness = cfg_.popularity_states;
  popularity_.chain.transition = cfg_.popularity_transition;
  mobility_.chain.transition = cfg_.mobility_transition;

  Rng init = master_.stream(kInitialStateStream);
  initial_popularity_ = init.index(popularity_.skewness.size());
  initial_mobility_ = init.index(mobility_.laws.size());
  popularity_.chain.current = initial_popularity_;
  mobility_.chain.current = initial_mobility_;
  validate_chain(popularity_.chain);
  validate_chain(mobility_.chain);
  reset(0);
}

void EdgeEnvironment::reset(std::uint64_t episode) {
  popularity_.chain.current = initial_popularity_;
  mobility_.chain.current = initial_mobility_;
  episode_rng_ = master_.stream(kEpisodeStreamBase + episode);
}

void EdgeEnvironment::advance_frame() { step_markov(popularity_.chain, episode_rng_); }

SlotSnapshot EdgeEnvironment::next_slot() {
  SlotSnapshot snap;
  snap.popularity_state = popularity_.chain.current;
  snap.mobility_state = mobility_.chain.current;
  const std::vector<Position> positions =
      sample_positions(mobility_.current_law(), cfg_.users, cfg_, episode_rng_);
  const Position bs = base_station_position(cfg_);
  const std::vector<double>& pmf = request_pmf();
  snap.users.resize(static_cast<std::size_t>(cfg_.users));
  for (int u = 0; u < cfg_.users; ++u) {
    UserSnapshot& user = snap.users[static_cast<std::size_t>(u)];
    user.position = positions[static_cast<std::size_t>(u)];
    const double distance = std::max(
        std::hypot(user.position.x - bs.x, user.position.y - bs.y), cfg_.min_distance_m);
    user.fading_power = episode_rng_.exponential();
    user.channel_gain = channel_gain(path_loss_db(distance), user.fading_power);
    user.request.user_id = u;
    user.request.model = sample_discrete(pmf, episode_rng_);
    user.request.d_in_bits =
        episode_rng_.uniform(cfg_.input_mb.lo, cfg_.input_mb.hi) * kBitsPerMegabyte;
  }
  step_markov(mobility_.chain, episode_rng_);
  return snap;
}

SlotOutcome EdgeEnvironment::evaluate(const SlotSnapshot& snapshot, const CacheVector& cache,
                                      const Allocation& alloc) const {
  return evaluate_slot(snapshot, cache, alloc, models_, cfg_);
}

}  // namespace aigc
