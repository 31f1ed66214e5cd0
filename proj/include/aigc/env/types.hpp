#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace aigc {

/// One generative model the edge server may cache. Indices are zero-based
/// throughout the code; index 0 is the most popular model under Zipf.
struct GenAiModelSpec {
  int model_id = 0;
  double storage_gb = 0.0;
  double a1 = 60.0;   // denoising steps where quality starts improving
  double a2 = 110.0;  // worst total-variation value
  double a3 = 170.0;  // steps where quality saturates
  double a4 = 28.0;   // best total-variation value
  double b1 = 0.18;   // seconds per denoising step
  double b2 = 5.74;   // fixed generation overhead, seconds
  double d_out_bits = 0.0;
};

/// Throws std::invalid_argument when a1 >= a3, a4 >= a2 or a non-positive
/// delay/storage constant is present.
void validate_model(const GenAiModelSpec& spec);

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct ServiceRequest {
  int user_id = 0;
  int model = 0;
  double d_in_bits = 0.0;
};

struct UserSnapshot {
  Position position;
  double fading_power = 1.0;
  double channel_gain = 0.0;
  ServiceRequest request;
};

/// Everything the environment reveals at the start of a slot.
struct SlotSnapshot {
  std::size_t popularity_state = 0;
  std::size_t mobility_state = 0;
  std::vector<UserSnapshot> users;
};

/// Binary caching decision, one flag per model.
struct CacheVector {
  std::vector<std::uint8_t> rho;

  std::size_t size() const { return rho.size(); }
  bool cached(int model) const { return rho[static_cast<std::size_t>(model)] != 0; }
};

/// Per-user bandwidth ratios and denoising-step ratios.
struct Allocation {
  std::vector<double> b;
  std::vector<double> xi;
};

struct SlotOutcome {
  std::vector<double> d_up;
  std::vector<double> d_dw;
  std::vector<double> d_gt;
  std::vector<double> d_tl;
  std::vector<double> b_gt;
  std::vector<double> utility;
  std::vector<std::uint8_t> cache_hit;
  std::vector<std::uint8_t> deadline_violated;
  double mean_utility = 0.0;
  double slot_reward = 0.0;
  int hit_count = 0;
  int violation_count = 0;
};

}  // namespace aigc
