#include "aigc/agents/actor_critic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "aigc/agents/amender.hpp"
#include "aigc/agents/state.hpp"

namespace aigc::agents {

namespace {

constexpr std::uint64_t kCriticInitStream = 11;
constexpr std::uint64_t kActStream = 12;
constexpr std::uint64_t kTrainStream = 13;

nn::Matrix stack_rows(const nn::Matrix& top, const nn::Matrix& bottom) {
  nn::Matrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

nn::Matrix column_matrix(std::span<const SlotTransition* const> batch,
                         const std::vector<double> SlotTransition::*field) {
  const auto rows = static_cast<Eigen::Index>((batch.front()->*field).size());
  nn::Matrix m(rows, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto& v = batch[j]->*field;
    if (static_cast<Eigen::Index>(v.size()) != rows) throw std::invalid_argument("ragged transition batch");
    m.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const nn::Vector>(v.data(), rows);
  }
  return m;
}

}  // namespace

nn::DenseNet make_critic(int state_dim, int action_dim, const std::vector<int>& hidden, Rng& rng) {
  return nn::DenseNet(state_dim + action_dim, hidden, 1, nn::Activation::relu, nn::Activation::identity, rng);
}

std::unique_ptr<Actor> make_diffusion_actor(int users, int models, const ActorCriticConfig& cfg, Rng& rng) {
  diffusion::Denoiser d(slot_action_dim(users), slot_state_dim(users, models), cfg.denoise_steps,
                        cfg.actor_hidden, rng);
  return std::make_unique<DiffusionActor>(std::move(d),
                                          diffusion::build_schedule(cfg.denoise_steps, cfg.beta_min, cfg.beta_max, cfg.x0_clip));
}

ActorCriticAgent::ActorCriticAgent(std::unique_ptr<Actor> actor, int users, int models,
                                   const ActorCriticConfig& cfg, const OptimizerConfig& adam,
                                   std::uint64_t seed)
    : ActorCriticAgent(std::move(actor),
                       [&] {
                         Rng r = Rng(seed).stream(kCriticInitStream);
                         return make_critic(slot_state_dim(users, models), slot_action_dim(users),
                                            cfg.critic_hidden, r);
                       }(),
                       users, models, cfg, adam, seed) {}

ActorCriticAgent::ActorCriticAgent(std::unique_ptr<Actor> actor, nn::DenseNet critic, int users, int models,
                                   const ActorCriticConfig& cfg, const OptimizerConfig& adam,
                                   std::uint64_t seed)
    : actor_(std::move(actor)),
      target_actor_(actor_ ? actor_->clone() : nullptr),
      critic_(std::move(critic)),
      target_critic_(critic_),
      actor_opt_(actor_->net(), cfg.actor_lr, adam),
      critic_opt_(critic_, cfg.critic_lr, adam),
      replay_(static_cast<std::size_t>(cfg.replay_capacity)),
      cfg_(cfg),
      users_(users),
      models_(models),
      state_dim_(slot_state_dim(users, models)),
      act_rng_(Rng(seed).stream(kActStream)),
      train_rng_(Rng(seed).stream(kTrainStream)) {
  if (actor_->state_dim() != state_dim_ || actor_->action_dim() != 2 * users)
    throw std::invalid_argument("actor dimensions do not match the slot MDP");
  if (critic_.input_dim() != state_dim_ + 2 * users || critic_.output_dim() != 1)
    throw std::invalid_argument("critic dimensions do not match the slot MDP");
  if (cfg.batch_size < 1) throw std::invalid_argument("batch size must be positive");
}

std::vector<double> ActorCriticAgent::act(std::span<const double> state, bool explore, double sigma) {
  if (static_cast<int>(state.size()) != state_dim_) throw std::invalid_argument("state dimension mismatch");
  const nn::Matrix s = Eigen::Map<const nn::Vector>(state.data(), state_dim_);
  nn::Matrix a = actor_->act(s, act_rng_, !explore);
  std::vector<double> out(a.data(), a.data() + a.size());
  if (explore && sigma > 0.0) {
    // Keep explored actions inside the range the actor itself can emit, so a
    // noise draw never hands a user exactly zero bandwidth.
    const double lo = cfg_.explore_floor;
    for (double& v : out) v = std::clamp(v + sigma * act_rng_.normal(), lo, 1.0 - lo);
  }
  return out;
}

void ActorCriticAgent::remember(SlotTransition t) {
  if (static_cast<int>(t.state.size()) != state_dim_ || static_cast<int>(t.next_state.size()) != state_dim_ ||
      static_cast<int>(t.action.size()) != 2 * users_)
    throw std::invalid_argument("slot transition has the wrong dimensions");
  replay_.push(std::move(t));
}

std::size_t ActorCriticAgent::warmup_size() const {
  const auto batch = static_cast<std::size_t>(cfg_.batch_size);
  return std::max(batch, batch * static_cast<std::size_t>(std::max(cfg_.warmup_batches, 1)));
}

ActorCriticStats ActorCriticAgent::train_step() {
  if (replay_.size() < warmup_size()) return {};
  const auto batch = replay_.sample(static_cast<std::size_t>(cfg_.batch_size), train_rng_);
  return train_on(batch);
}

nn::Matrix ActorCriticAgent::amend_columns(const nn::Matrix& raw, const nn::Matrix& states) const {
  nn::Matrix out(raw.rows(), raw.cols());
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    const auto mask = cached_mask_from_state({states.col(j).data(), static_cast<std::size_t>(states.rows())},
                                             users_, models_);
    const auto alloc = amend_continuous({raw.col(j).data(), static_cast<std::size_t>(raw.rows())}, mask);
    const auto flat = flatten(alloc);
    out.col(j) = Eigen::Map<const nn::Vector>(flat.data(), raw.rows());
  }
  return out;
}

nn::Matrix ActorCriticAgent::td_targets(std::span<const SlotTransition* const> batch) {
  const nn::Matrix next = column_matrix(batch, &SlotTransition::next_state);
  const nn::Matrix raw = target_actor_->act(next, train_rng_, true);
  const nn::Matrix q_next = target_critic_.forward(stack_rows(next, amend_columns(raw, next)));
  nn::Matrix y(1, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    y(0, c) = cfg_.reward_scale * std::max(batch[j]->reward, cfg_.reward_floor) + cfg_.discount * q_next(0, c);
  }
  return y;
}

double ActorCriticAgent::critic_loss(std::span<const SlotTransition* const> batch) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const nn::Matrix y = td_targets(batch);
  const nn::Matrix q = critic_.forward(
      stack_rows(column_matrix(batch, &SlotTransition::state), column_matrix(batch, &SlotTransition::action)));
  return 0.5 * (q - y).squaredNorm() / static_cast<double>(batch.size());
}

double ActorCriticAgent::actor_step(const nn::Matrix& states, const ActionGradientFn& dq_da) {
  const auto n = static_cast<double>(states.cols());
  const nn::Matrix raw = actor_->act_for_update(states, train_rng_);
  const nn::Matrix amended = amend_columns(raw, states);
  double mean_q = 0.0;
  const nn::Matrix g_amended = dq_da(amended, &mean_q);
  // Descend on -mean(Q).
  nn::Matrix g_raw(raw.rows(), raw.cols());
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    const auto mask = cached_mask_from_state({states.col(j).data(), static_cast<std::size_t>(states.rows())},
                                             users_, models_);
    const nn::Vector neg = -g_amended.col(j) / n;
    const auto back = amend_backward({raw.col(j).data(), static_cast<std::size_t>(raw.rows())}, mask,
                                     {neg.data(), static_cast<std::size_t>(neg.size())});
    g_raw.col(j) = Eigen::Map<const nn::Vector>(back.data(), raw.rows());
  }
  actor_opt_.step(actor_->net(), actor_->gradient(g_raw));
  return mean_q;
}

ActorCriticStats ActorCriticAgent::train_on(std::span<const SlotTransition* const> batch) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  ActorCriticStats stats;
  stats.trained = true;
  const auto n = static_cast<double>(batch.size());

  const nn::Matrix y = td_targets(batch);
  const nn::Matrix states = column_matrix(batch, &SlotTransition::state);
  nn::ForwardCache cache;
  const nn::Matrix q = critic_.forward(stack_rows(states, column_matrix(batch, &SlotTransition::action)), cache);
  const nn::Matrix diff = q - y;
  stats.critic_loss = 0.5 * diff.squaredNorm() / n;
  if (!std::isfinite(stats.critic_loss)) throw std::runtime_error("critic loss is not finite");
  nn::Gradients cg = critic_.zero_gradients();
  critic_.backward(cache, diff / n, &cg);
  critic_opt_.step(critic_, cg);

  stats.actor_objective = actor_step(states, [&](const nn::Matrix& amended, double* mean_q) {
    nn::ForwardCache qc;
    const nn::Matrix qa = critic_.forward(stack_rows(states, amended), qc);
    *mean_q = qa.mean();
    const nn::Matrix grad_in = critic_.backward(qc, nn::Matrix::Ones(1, qa.cols()), nullptr);
    return nn::Matrix(grad_in.bottomRows(amended.rows()));
  });

  nn::soft_update(target_critic_, critic_, cfg_.target_rate);
  nn::soft_update(target_actor_->net(), actor_->net(), cfg_.target_rate);
  return stats;
}

void ActorCriticAgent::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest = {
      {"format", 1},
      {"actor", actor_->kind()},
      {"users", users_},
      {"models", models_},
      {"state_dim", state_dim_},
      {"action_dim", 2 * users_},
      {"denoise_steps", cfg_.denoise_steps},
      {"beta_min", cfg_.beta_min},
      {"beta_max", cfg_.beta_max},
      {"x0_clip", cfg_.x0_clip},
      {"actor_hidden", cfg_.actor_hidden},
      {"critic_hidden", cfg_.critic_hidden},
      {"discount", cfg_.discount},
      {"target_rate", cfg_.target_rate},
  };
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  actor_->net().save(dir / "actor.bin");
  target_actor_->net().save(dir / "target_actor.bin");
  critic_.save(dir / "critic.bin");
  target_critic_.save(dir / "target_critic.bin");
}

void ActorCriticAgent::load(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("missing manifest in " + dir.string());
  const auto manifest = nlohmann::json::parse(in);
  if (manifest.at("actor").get<std::string>() != actor_->kind() || manifest.at("users").get<int>() != users_ ||
      manifest.at("models").get<int>() != models_)
    throw std::runtime_error("checkpoint does not match this agent");
  auto critic = nn::DenseNet::load(dir / "critic.bin");
  auto target_critic = nn::DenseNet::load(dir / "target_critic.bin");
  require_same_architecture(critic_, critic);
  require_same_architecture(critic_, target_critic);
  actor_->set_net(nn::DenseNet::load(dir / "actor.bin"));
  target_actor_->set_net(nn::DenseNet::load(dir / "target_actor.bin"));
  critic_ = std::move(critic);
  target_critic_ = std::move(target_critic);
}

}  // namespace aigc::agents
