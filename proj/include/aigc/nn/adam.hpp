#pragma once

#include <cstdint>

#include "aigc/config.hpp"
#include "aigc/nn/dense_net.hpp"

namespace aigc::nn {

/// Adam with bias correction. One instance per optimised network.
class Adam {
 public:
  Adam(const DenseNet& net, double learning_rate, const OptimizerConfig& constants = {});

  /// Throws std::runtime_error on a non-finite gradient, leaving net untouched.
  void step(DenseNet& net, const Gradients& grads);

  std::int64_t steps() const { return step_count_; }
  double learning_rate() const { return learning_rate_; }

 private:
  Gradients first_;
  Gradients second_;
  std::int64_t step_count_ = 0;
  double learning_rate_;
  OptimizerConfig constants_;
};

}  // namespace aigc::nn
