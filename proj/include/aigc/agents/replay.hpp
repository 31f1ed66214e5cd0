#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aigc/random.hpp"

namespace aigc::agents {

struct SlotTransition {
  std::vector<double> state;
  std::vector<double> action;  // amended [b; xi]
  double reward = 0.0;
  std::vector<double> next_state;
};

struct FrameTransition {
  std::size_t state = 0;
  std::uint64_t action = 0;
  double reward = 0.0;
  std::size_t next_state = 0;
};

/// Fixed-capacity ring; once full, each push overwrites the oldest item.
template <typename T>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
    items_.reserve(capacity < 4096 ? capacity : 4096);
  }

  void push(T item) {
    if (items_.size() < capacity_) {
      items_.push_back(std::move(item));
    } else {
      items_[cursor_] = std::move(item);
    }
    cursor_ = (cursor_ + 1) % capacity_;
  }

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool can_sample(std::size_t batch) const { return batch > 0 && items_.size() >= batch; }

  /// Uniform draws with replacement.
  std::vector<const T*> sample(std::size_t batch, Rng& rng) const {
    if (!can_sample(batch)) throw std::logic_error("replay buffer holds fewer items than the batch");
    std::vector<const T*> out(batch);
    for (auto& p : out) p = &items_[rng.index(items_.size())];
    return out;
  }

  /// Items from oldest to newest.
  std::vector<T> ordered() const {
    std::vector<T> out;
    out.reserve(items_.size());
    const std::size_t start = items_.size() < capacity_ ? 0 : cursor_;
    for (std::size_t i = 0; i < items_.size(); ++i) out.push_back(items_[(start + i) % items_.size()]);
    return out;
  }

 private:
  std::vector<T> items_;
  std::size_t capacity_;
  std::size_t cursor_ = 0;
};

}  // namespace aigc::agents
