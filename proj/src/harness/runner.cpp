#include "aigc/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aigc/agents/ddqn.hpp"
#include "aigc/env/feasibility.hpp"

namespace aigc::harness {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled) {
    if (enabled_) start_ = std::chrono::steady_clock::now();
  }
  double elapsed_ms() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

void require_finite(double v, const char* what, int episode, int frame, int slot) {
  if (!std::isfinite(v))
    throw std::runtime_error(std::string(what) + " is not finite at episode " + std::to_string(episode) +
                             ", frame " + std::to_string(frame) + ", slot " + std::to_string(slot));
}

}  // namespace

EpisodeRecord run_episode(Controller& controller, EdgeEnvironment& env, const SimConfig& cfg, int episode,
                          int total_episodes, bool learning, std::vector<SlotRecord>* slots) {
  const auto& e = cfg.env;
  const bool timing = cfg.run.record_timing;
  env.reset(static_cast<std::uint64_t>(episode));
  controller.begin_episode(episode, total_episodes, learning);

  EpisodeRecord rec;
  rec.episode = episode;
  double utility_sum = 0.0;
  double wall_sum = 0.0;
  long hits = 0;
  long requests = 0;
  long misses = 0;
  CacheVector cache;
  std::vector<double> slot_rewards(static_cast<std::size_t>(e.slots));

  for (int t = 0; t < e.frames; ++t) {
    controller.observe_frame_state(env.popularity_state());
    const Stopwatch cache_clock(timing);
    cache = controller.choose_cache(env.popularity_state());
    const double cache_ms = cache_clock.elapsed_ms();
    if (cache.size() != static_cast<std::size_t>(e.models)) throw std::logic_error("controller returned a bad cache");
    if (cache_storage_gb(cache, env.models()) > e.capacity_gb) ++rec.capacity_violations;

    for (int k = 0; k < e.slots; ++k) {
      const SlotSnapshot snap = env.next_slot();
      controller.observe_slot_state(snap, cache);
      const Stopwatch slot_clock(timing);
      const Allocation alloc = controller.choose_allocation(snap, cache);
      const double slot_ms = slot_clock.elapsed_ms() + (k == 0 ? cache_ms : 0.0);
      const SlotOutcome out = env.evaluate(snap, cache, alloc);
      require_finite(out.slot_reward, "slot reward", episode, t, k);
      controller.observe_slot_reward(out.slot_reward);
      slot_rewards[static_cast<std::size_t>(k)] = out.slot_reward;

      const int u = static_cast<int>(snap.users.size());
      utility_sum += out.mean_utility;
      wall_sum += slot_ms;
      hits += out.hit_count;
      requests += u;
      misses += out.violation_count;
      if (slots != nullptr)
        slots->push_back(SlotRecord{episode, t, k, out.slot_reward, out.mean_utility,
                                    static_cast<double>(out.hit_count) / u, out.violation_count, out.hit_count, u,
                                    slot_ms});
    }
    const double fr = agents::frame_reward(slot_rewards, cache, env.models(), e, cfg.ddqn.frame_reward_sign);
    require_finite(fr, "frame reward", episode, t, e.slots - 1);
    controller.end_frame(fr);
    rec.episodic_reward += fr;
    env.advance_frame();
  }

  // Terminal observation completes the last pending transitions.
  controller.observe_frame_state(env.popularity_state());
  controller.observe_slot_state(env.next_slot(), cache);
  controller.end_episode();

  const double n_slots = static_cast<double>(e.frames) * e.slots;
  rec.mean_utility = utility_sum / n_slots;
  rec.hit_ratio = requests > 0 ? static_cast<double>(hits) / static_cast<double>(requests) : 0.0;
  rec.violation_rate = requests > 0 ? static_cast<double>(misses) / static_cast<double>(requests) : 0.0;
  rec.mean_wall_ms = wall_sum / n_slots;
  return rec;
}

RunResult run_algorithm(Algorithm algo, const SimConfig& cfg, const RunOptions& options) {
  cfg.validate();
  EdgeEnvironment env(cfg.env, cfg.run.seed);
  auto controller = make_controller(algo, cfg, env.models(), cfg.run.seed);
  if (options.load_checkpoint) controller->load(*options.load_checkpoint);
  RunResult result;
  result.algo = algo;
  result.seed = cfg.run.seed;
  const int episodes = cfg.run.episodes;
  if (options.keep_slots)
    result.slots.reserve(static_cast<std::size_t>(episodes) * static_cast<std::size_t>(cfg.env.frames) *
                         static_cast<std::size_t>(cfg.env.slots));
  for (int h = 0; h < episodes; ++h)
    result.episodes.push_back(run_episode(*controller, env, cfg, h, episodes, options.learning,
                                          options.keep_slots ? &result.slots : nullptr));
  if (options.save_checkpoint) controller->save(*options.save_checkpoint);
  return result;
}

double model_hit_ratio(const std::vector<SlotRecord>& trace) {
  long hits = 0;
  long requests = 0;
  for (const auto& r : trace) {
    hits += r.hits;
    requests += r.requests;
  }
  if (requests == 0) throw std::invalid_argument("model_hit_ratio: trace holds no requests");
  return static_cast<double>(hits) / static_cast<double>(requests);
}

}  // namespace aigc::harness
