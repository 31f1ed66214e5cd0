#include "aigc/harness/controller.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "aigc/agents/actor_critic.hpp"
#include "aigc/agents/amender.hpp"
#include "aigc/agents/ddqn.hpp"
#include "aigc/agents/state.hpp"
#include "aigc/baselines/caching.hpp"
#include "aigc/baselines/ddpg.hpp"
#include "aigc/baselines/ga.hpp"

namespace aigc::harness {

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::t2drl:
      return "t2drl";
    case Algorithm::ddpg:
      return "ddpg";
    case Algorithm::schrs:
      return "schrs";
    case Algorithm::rcars:
      return "rcars";
  }
  throw std::invalid_argument("unknown algorithm");
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::t2drl, Algorithm::ddpg, Algorithm::schrs, Algorithm::rcars})
    if (name == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

namespace {

std::vector<ServiceRequest> requests_of(const SlotSnapshot& s) {
  std::vector<ServiceRequest> r;
  r.reserve(s.users.size());
  for (const auto& u : s.users) r.push_back(u.request);
  return r;
}

/// DDQN caching on frames plus an actor-critic allocator on slots.
class LearningController final : public Controller {
 public:
  LearningController(Algorithm algo, const SimConfig& cfg, std::span<const GenAiModelSpec> models,
                     std::uint64_t seed)
      : algo_(algo),
        cfg_(cfg),
        models_(models.begin(), models.end()),
        ddqn_(static_cast<int>(cfg.env.popularity_states.size()), cfg.env.models, cfg.ddqn, cfg.adam,
              mix_seed(seed, 101)),
        ac_(make_actor(algo, cfg, mix_seed(seed, 103)), cfg.env.users, cfg.env.models, cfg.d3pg, cfg.adam,
            mix_seed(seed, 102)) {}

  Algorithm algorithm() const override { return algo_; }

  void begin_episode(int episode, int total_episodes, bool learning) override {
    learning_ = learning;
    episode_ = episode;
    total_episodes_ = total_episodes;
    slot_in_episode_ = 0;
    epsilon_ = learning ? ddqn_.epsilon_for_episode(episode, total_episodes) : 0.0;
  }

  void observe_frame_state(std::size_t popularity_state) override {
    if (!learning_ || !pending_frame_) return;
    pending_frame_->next_state = popularity_state;
    ddqn_.remember(*pending_frame_);
    pending_frame_.reset();
    ddqn_.train_step();
  }

  CacheVector choose_cache(std::size_t popularity_state) override {
    const auto action = ddqn_.act(popularity_state, epsilon_);
    if (learning_) pending_frame_ = agents::FrameTransition{popularity_state, action, 0.0, 0};
    return agents::decode_caching_action(action, cfg_.env.models);
  }

  void end_frame(double frame_reward) override {
    if (pending_frame_) pending_frame_->reward = frame_reward;
  }

  void observe_slot_state(const SlotSnapshot& snapshot, const CacheVector& cache) override {
    if (!learning_ || !pending_slot_) return;
    pending_slot_->next_state = agents::build_slot_state(snapshot, cache, models_, cfg_.env);
    ac_.remember(std::move(*pending_slot_));
    pending_slot_.reset();
    ac_.train_step();
  }

  Allocation choose_allocation(const SlotSnapshot& snapshot, const CacheVector& cache) override {
    auto state = agents::build_slot_state(snapshot, cache, models_, cfg_.env);
    const auto raw = ac_.act(state, learning_, exploration_sigma());
    Allocation alloc = agents::amend_continuous(raw, agents::cached_mask(cache, requests_of(snapshot)));
    if (learning_) pending_slot_ = agents::SlotTransition{std::move(state), agents::flatten(alloc), 0.0, {}};
    ++slot_in_episode_;
    return alloc;
  }

  void observe_slot_reward(double reward) override {
    if (pending_slot_) pending_slot_->reward = reward;
  }

  void end_episode() override {
    pending_slot_.reset();
    pending_frame_.reset();
  }

  void save(const std::filesystem::path& dir) const override {
    ddqn_.save(dir / "ddqn");
    ac_.save(dir / "actor_critic");
  }

  void load(const std::filesystem::path& dir) override {
    ddqn_.load(dir / "ddqn");
    ac_.load(dir / "actor_critic");
  }

 private:
  static std::unique_ptr<agents::Actor> make_actor(Algorithm algo, const SimConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    if (algo == Algorithm::t2drl) return agents::make_diffusion_actor(cfg.env.users, cfg.env.models, cfg.d3pg, rng);
    return baselines::make_mlp_actor(cfg.env.users, cfg.env.models, cfg.d3pg, rng);
  }

  double exploration_sigma() const {
    const double per_episode = static_cast<double>(cfg_.env.frames) * cfg_.env.slots;
    const double total = per_episode * std::max(total_episodes_, 1);
    const double progress = std::min(1.0, (episode_ * per_episode + slot_in_episode_) / total);
    const auto& c = cfg_.d3pg;
    return c.explore_sigma_start + (c.explore_sigma_end - c.explore_sigma_start) * progress;
  }

  Algorithm algo_;
  SimConfig cfg_;
  std::vector<GenAiModelSpec> models_;
  agents::DdqnAgent ddqn_;
  agents::ActorCriticAgent ac_;
  bool learning_ = false;
  int episode_ = 0;
  int total_episodes_ = 1;
  int slot_in_episode_ = 0;
  double epsilon_ = 0.0;
  std::optional<agents::FrameTransition> pending_frame_;
  std::optional<agents::SlotTransition> pending_slot_;
};

/// Popularity-ordered static cache plus a per-slot GA allocation search.
class SchrsController final : public Controller {
 public:
  SchrsController(const SimConfig& cfg, std::span<const GenAiModelSpec> models, std::uint64_t seed)
      : cfg_(cfg),
        models_(models.begin(), models.end()),
        cache_(baselines::schrs_cache(models_, cfg.env.capacity_gb)),
        rng_(mix_seed(seed, 201)) {}

  Algorithm algorithm() const override { return Algorithm::schrs; }
  CacheVector choose_cache(std::size_t /*popularity_state*/) override { return cache_; }

  Allocation choose_allocation(const SlotSnapshot& snapshot, const CacheVector& cache) override {
    const baselines::SlotContext ctx{&snapshot, &cache, models_, &cfg_.env};
    return baselines::ga_optimize(ctx, cfg_.ga, rng_).allocation;
  }

 private:
  SimConfig cfg_;
  std::vector<GenAiModelSpec> models_;
  CacheVector cache_;
  Rng rng_;
};

/// Random cache per frame, equal resource split per slot.
class RcarsController final : public Controller {
 public:
  RcarsController(const SimConfig& cfg, std::span<const GenAiModelSpec> models, std::uint64_t seed)
      : capacity_gb_(cfg.env.capacity_gb), models_(models.begin(), models.end()), rng_(mix_seed(seed, 301)) {}

  Algorithm algorithm() const override { return Algorithm::rcars; }

  CacheVector choose_cache(std::size_t /*popularity_state*/) override {
    return baselines::rcars_cache(models_, capacity_gb_, rng_);
  }

  Allocation choose_allocation(const SlotSnapshot& snapshot, const CacheVector& cache) override {
    return baselines::rcars_allocation(cache, requests_of(snapshot));
  }

 private:
  double capacity_gb_;
  std::vector<GenAiModelSpec> models_;
  Rng rng_;
};

}  // namespace

std::unique_ptr<Controller> make_controller(Algorithm algo, const SimConfig& cfg,
                                            std::span<const GenAiModelSpec> models, std::uint64_t seed) {
  if (models.size() != static_cast<std::size_t>(cfg.env.models))
    throw std::invalid_argument("model list does not match the configured model count");
  switch (algo) {
    case Algorithm::t2drl:
    case Algorithm::ddpg:
      return std::make_unique<LearningController>(algo, cfg, models, seed);
    case Algorithm::schrs:
      return std::make_unique<SchrsController>(cfg, models, seed);
    case Algorithm::rcars:
      return std::make_unique<RcarsController>(cfg, models, seed);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace aigc::harness
