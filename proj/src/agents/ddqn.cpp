#include "aigc/agents/ddqn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"

#include "aigc/agents/amender.hpp"
#include "aigc/env/feasibility.hpp"

namespace aigc::agents {

namespace {

constexpr std::uint64_t kInitStream = 21;
constexpr std::uint64_t kActStream = 22;
constexpr std::uint64_t kTrainStream = 23;
constexpr int kMaxModels = 20;

nn::DenseNet make_q_net(int states, int models, const std::vector<int>& hidden, std::uint64_t seed) {
  Rng rng = Rng(seed).stream(kInitStream);
  return nn::DenseNet(states + models, hidden, 1, nn::Activation::relu, nn::Activation::identity, rng);
}

}  // namespace

std::uint64_t greedy_action(std::span<const double> q) {
  if (q.empty()) throw std::invalid_argument("greedy_action: no actions");
  std::size_t best = 0;
  for (std::size_t a = 1; a < q.size(); ++a)
    if (q[a] > q[best]) best = a;
  return best;
}

double double_q_target(double reward, double discount, std::span<const double> q_online_next,
                       std::span<const double> q_target_next) {
  if (q_online_next.size() != q_target_next.size())
    throw std::invalid_argument("double_q_target: action counts differ");
  return reward + discount * q_target_next[greedy_action(q_online_next)];
}

double frame_reward(std::span<const double> slot_rewards, const CacheVector& cache,
                    std::span<const GenAiModelSpec> models, const EnvConfig& cfg, FrameRewardSign sign) {
  if (slot_rewards.empty()) throw std::invalid_argument("frame_reward: no slot rewards");
  double mean = 0.0;
  for (double r : slot_rewards) mean += r;
  mean /= static_cast<double>(slot_rewards.size());
  const double base = sign == FrameRewardSign::consistent ? mean : -mean;
  const bool over = cache_storage_gb(cache, models) > cfg.capacity_gb;
  return base - (over ? cfg.capacity_penalty : 0.0);
}

DdqnAgent::DdqnAgent(int states, int models, const DdqnConfig& cfg, const OptimizerConfig& adam,
                     std::uint64_t seed)
    : DdqnAgent(make_q_net(states, models, cfg.hidden, seed), states, models, cfg, adam, seed) {}

DdqnAgent::DdqnAgent(nn::DenseNet online, int states, int models, const DdqnConfig& cfg,
                     const OptimizerConfig& adam, std::uint64_t seed)
    : online_(std::move(online)),
      target_(online_),
      opt_(online_, cfg.lr, adam),
      replay_(static_cast<std::size_t>(cfg.replay_capacity)),
      cfg_(cfg),
      states_(states),
      models_(models),
      act_rng_(Rng(seed).stream(kActStream)),
      train_rng_(Rng(seed).stream(kTrainStream)) {
  if (states < 1 || models < 1 || models > kMaxModels) throw std::invalid_argument("DDQN dimensions out of range");
  if (online_.input_dim() != states + models || online_.output_dim() != 1)
    throw std::invalid_argument("Q-network must map [state one-hot; cache bits] to a scalar");
  const auto n = static_cast<Eigen::Index>(action_count());
  action_bits_.resize(models, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto c = decode_caching_action(static_cast<std::uint64_t>(a), models);
    for (int m = 0; m < models; ++m) action_bits_(m, a) = c.rho[static_cast<std::size_t>(m)];
  }
}

std::vector<double> DdqnAgent::all_actions(const nn::DenseNet& net, std::size_t state) const {
  if (state >= static_cast<std::size_t>(states_)) throw std::invalid_argument("popularity state out of range");
  nn::Matrix in = nn::Matrix::Zero(states_ + models_, action_bits_.cols());
  in.row(static_cast<Eigen::Index>(state)).setOnes();
  in.bottomRows(models_) = action_bits_;
  const nn::Matrix q = net.forward(in);
  return {q.data(), q.data() + q.size()};
}

std::vector<double> DdqnAgent::q_values(std::size_t state) const { return all_actions(online_, state); }

std::vector<double> DdqnAgent::target_q_values(std::size_t state) const { return all_actions(target_, state); }

std::uint64_t DdqnAgent::act(std::size_t state, double epsilon) {
  if (epsilon > 0.0 && act_rng_.uniform() < epsilon) return act_rng_.index(action_count());
  const auto q = q_values(state);
  return greedy_action(q);
}

void DdqnAgent::remember(FrameTransition t) {
  if (t.state >= static_cast<std::size_t>(states_) || t.next_state >= static_cast<std::size_t>(states_) ||
      t.action >= action_count())
    throw std::invalid_argument("frame transition out of range");
  replay_.push(t);
}

std::size_t DdqnAgent::warmup_size() const {
  const auto batch = static_cast<std::size_t>(cfg_.batch_size);
  return std::max(batch, batch * static_cast<std::size_t>(std::max(cfg_.warmup_batches, 1)));
}

DdqnStats DdqnAgent::train_step() {
  if (replay_.size() < warmup_size()) return {};
  const auto batch = replay_.sample(static_cast<std::size_t>(cfg_.batch_size), train_rng_);
  return train_on(batch);
}

nn::Matrix DdqnAgent::pair_inputs(std::span<const std::size_t> states, std::span<const std::uint64_t> actions) const {
  nn::Matrix in = nn::Matrix::Zero(states_ + models_, static_cast<Eigen::Index>(states.size()));
  for (std::size_t j = 0; j < states.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    in(static_cast<Eigen::Index>(states[j]), c) = 1.0;
    in.col(c).tail(models_) = action_bits_.col(static_cast<Eigen::Index>(actions[j]));
  }
  return in;
}

DdqnStats DdqnAgent::train_on(std::span<const FrameTransition* const> batch) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const auto n = batch.size();
  // Next states repeat heavily (J is small), so evaluate each once.
  std::map<std::size_t, double> bootstrap;
  for (const auto* t : batch) {
    if (bootstrap.contains(t->next_state)) continue;
    const auto online_next = q_values(t->next_state);
    const auto a_star = greedy_action(online_next);
    const std::size_t s[] = {t->next_state};
    const std::uint64_t a[] = {a_star};
    bootstrap[t->next_state] = target_.forward(pair_inputs(s, a))(0, 0);
  }
  std::vector<std::size_t> states(n);
  std::vector<std::uint64_t> actions(n);
  nn::Matrix y(1, static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    states[j] = batch[j]->state;
    actions[j] = batch[j]->action;
    y(0, static_cast<Eigen::Index>(j)) =
        cfg_.reward_scale * std::max(batch[j]->reward, cfg_.reward_floor) + cfg_.discount * bootstrap.at(batch[j]->next_state);
  }
  nn::ForwardCache cache;
  const nn::Matrix q = online_.forward(pair_inputs(states, actions), cache);
  const nn::Matrix diff = q - y;
  DdqnStats stats;
  stats.trained = true;
  stats.loss = 0.5 * diff.squaredNorm() / static_cast<double>(n);
  if (!std::isfinite(stats.loss)) throw std::runtime_error("DDQN loss is not finite");
  nn::Gradients g = online_.zero_gradients();
  online_.backward(cache, diff / static_cast<double>(n), &g);
  opt_.step(online_, g);
  nn::soft_update(target_, online_, cfg_.target_rate);
  return stats;
}

double DdqnAgent::epsilon_for_episode(int episode, int total_episodes) const {
  const double horizon = cfg_.epsilon_decay_fraction * static_cast<double>(std::max(total_episodes, 1));
  if (horizon <= 0.0) return cfg_.epsilon_end;
  const double f = std::min(1.0, static_cast<double>(episode) / horizon);
  return cfg_.epsilon_start + (cfg_.epsilon_end - cfg_.epsilon_start) * f;
}

void DdqnAgent::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest = {{"format", 1},          {"states", states_},
                             {"models", models_},     {"hidden", cfg_.hidden},
                             {"discount", cfg_.discount}, {"target_rate", cfg_.target_rate}};
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  online_.save(dir / "online.bin");
  target_.save(dir / "target.bin");
}

void DdqnAgent::load(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("missing manifest in " + dir.string());
  const auto manifest = nlohmann::json::parse(in);
  if (manifest.at("states").get<int>() != states_ || manifest.at("models").get<int>() != models_)
    throw std::runtime_error("checkpoint does not match this agent");
  auto online = nn::DenseNet::load(dir / "online.bin");
  auto target = nn::DenseNet::load(dir / "target.bin");
  if (online.input_dim() != online_.input_dim() || target.input_dim() != target_.input_dim())
    throw std::runtime_error("checkpoint network shape mismatch");
  online_ = std::move(online);
  target_ = std::move(target);
}

}  // namespace aigc::agents
