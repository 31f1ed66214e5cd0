#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "aigc/random.hpp"

namespace aigc::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation : std::uint8_t { identity = 0, relu = 1, logistic = 2 };

struct DenseLayer {
  Matrix weight;  // out x in
  Vector bias;    // out
  Activation activation = Activation::identity;
};

/// Activations recorded by a forward pass; activations[0] is the input batch
/// and activations[i + 1] the output of layer i. Columns are samples.
struct ForwardCache {
  std::vector<Matrix> activations;
  const void* owner = nullptr;
  std::uint64_t version = 0;

  const Matrix& output() const { return activations.back(); }
};

/// Parameter gradients with the same shapes as the network.
struct Gradients {
  std::vector<Matrix> weight;
  std::vector<Vector> bias;

  void set_zero();
  void scale(double factor);
  Gradients& operator+=(const Gradients& other);
  bool all_finite() const;
  std::size_t size() const;
  /// Flat view in checkpoint order (layer by layer, weights row-major, then bias).
  double at(std::size_t flat_index) const;
};

/// Fully connected network sized for small actor/critic/Q models.
class DenseNet {
 public:
  DenseNet() = default;
  /// Glorot-uniform weights, zero biases.
  DenseNet(int input_dim, const std::vector<int>& hidden, int output_dim, Activation hidden_act,
           Activation output_act, Rng& rng);
  explicit DenseNet(std::vector<DenseLayer> layers);

  int input_dim() const;
  int output_dim() const;
  std::size_t layer_count() const { return layers_.size(); }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  /// Mutable access invalidates every forward cache taken so far.
  std::vector<DenseLayer>& mutable_layers() {
    ++version_;
    return layers_;
  }
  std::uint64_t version() const { return version_; }

  Matrix forward(const Matrix& input) const;
  const Matrix& forward(const Matrix& input, ForwardCache& cache) const;
  std::vector<double> forward(std::span<const double> input) const;

  /// Reverse pass for the scalar whose output-gradient is grad_output.
  /// Accumulates into grads when non-null and returns the input gradient.
  Matrix backward(const ForwardCache& cache, const Matrix& grad_output, Gradients* grads) const;

  Gradients zero_gradients() const;
  std::size_t parameter_count() const;
  double parameter(std::size_t flat_index) const;
  void set_parameter(std::size_t flat_index, double value);
  bool all_finite() const;

  void save(std::ostream& out) const;
  static DenseNet load(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static DenseNet load(const std::filesystem::path& path);

 private:
  double* locate(std::size_t flat_index);

  std::vector<DenseLayer> layers_;
  std::uint64_t version_ = 0;
};

/// target <- rate * online + (1 - rate) * target, parameter by parameter.
void soft_update(DenseNet& target, const DenseNet& online, double rate);

/// Elementwise logistic function.
Matrix logistic(const Matrix& x);

}  // namespace aigc::nn
