#include "aigc/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace aigc::nn {

Adam::Adam(const DenseNet& net, double learning_rate, const OptimizerConfig& constants)
    : first_(net.zero_gradients()),
      second_(net.zero_gradients()),
      learning_rate_(learning_rate),
      constants_(constants) {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("Adam: learning rate must be positive");
}

void Adam::step(DenseNet& net, const Gradients& grads) {
  if (grads.weight.size() != first_.weight.size())
    throw std::invalid_argument("Adam: gradient shape mismatch");
  for (std::size_t i = 0; i < grads.weight.size(); ++i)
    if (grads.weight[i].rows() != first_.weight[i].rows() ||
        grads.weight[i].cols() != first_.weight[i].cols() ||
        grads.bias[i].size() != first_.bias[i].size())
      throw std::invalid_argument("Adam: gradient shape mismatch");
  if (!grads.all_finite()) throw std::runtime_error("Adam: non-finite gradient");

  ++step_count_;
  const double b1 = constants_.beta1;
  const double b2 = constants_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_count_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_count_));
  const double eps = constants_.epsilon;
  const double lr = learning_rate_;

  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
  };

  auto& layers = net.mutable_layers();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    update(layers[i].weight, first_.weight[i], second_.weight[i], grads.weight[i]);
    update(layers[i].bias, first_.bias[i], second_.bias[i], grads.bias[i]);
  }
}

}  // namespace aigc::nn
