#include "aigc/nn/dense_net.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace aigc::nn {

static_assert(std::endian::native == std::endian::little,
              "checkpoint layout assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'A', 'I', 'G', 'C', 'N', 'E', 'T', '1'};

void apply_activation(Matrix& z, Activation act) {
  switch (act) {
    case Activation::identity:
      return;
    case Activation::relu:
      z = z.cwiseMax(0.0);
      return;
    case Activation::logistic:
      z = logistic(z);
      return;
  }
  throw std::invalid_argument("unknown activation");
}

// Turns an output-side gradient into a pre-activation gradient in place.
void activation_backward(Matrix& grad, const Matrix& out, Activation act) {
  switch (act) {
    case Activation::identity:
      return;
    case Activation::relu:
      grad = (out.array() > 0.0).select(grad, 0.0);
      return;
    case Activation::logistic:
      grad.array() *= out.array() * (1.0 - out.array());
      return;
  }
}

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated network checkpoint");
  return v;
}

}  // namespace

Matrix logistic(const Matrix& x) {
  // Split by sign so neither branch overflows exp().
  return x.unaryExpr([](double v) {
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
  });
}

void Gradients::set_zero() {
  for (auto& w : weight) w.setZero();
  for (auto& b : bias) b.setZero();
}

void Gradients::scale(double factor) {
  for (auto& w : weight) w *= factor;
  for (auto& b : bias) b *= factor;
}

Gradients& Gradients::operator+=(const Gradients& other) {
  if (other.weight.size() != weight.size()) throw std::invalid_argument("gradient shape mismatch");
  for (std::size_t i = 0; i < weight.size(); ++i) {
    weight[i] += other.weight[i];
    bias[i] += other.bias[i];
  }
  return *this;
}

bool Gradients::all_finite() const {
  for (const auto& w : weight)
    if (!w.allFinite()) return false;
  for (const auto& b : bias)
    if (!b.allFinite()) return false;
  return true;
}

std::size_t Gradients::size() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < weight.size(); ++i)
    n += static_cast<std::size_t>(weight[i].size() + bias[i].size());
  return n;
}

double Gradients::at(std::size_t flat_index) const {
  for (std::size_t i = 0; i < weight.size(); ++i) {
    const auto& w = weight[i];
    const auto wn = static_cast<std::size_t>(w.size());
    if (flat_index < wn) {
      const auto cols = static_cast<std::size_t>(w.cols());
      return w(static_cast<Eigen::Index>(flat_index / cols),
               static_cast<Eigen::Index>(flat_index % cols));
    }
    flat_index -= wn;
    const auto bn = static_cast<std::size_t>(bias[i].size());
    if (flat_index < bn) return bias[i](static_cast<Eigen::Index>(flat_index));
    flat_index -= bn;
  }
  throw std::out_of_range("gradient index out of range");
}

DenseNet::DenseNet(int input_dim, const std::vector<int>& hidden, int output_dim,
                   Activation hidden_act, Activation output_act, Rng& rng) {
  if (input_dim < 1 || output_dim < 1) throw std::invalid_argument("network dimensions must be positive");
  int fan_in = input_dim;
  for (std::size_t i = 0; i <= hidden.size(); ++i) {
    const bool last = i == hidden.size();
    const int fan_out = last ? output_dim : hidden[i];
    if (fan_out < 1) throw std::invalid_argument("hidden width must be positive");
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    DenseLayer layer;
    layer.weight.resize(fan_out, fan_in);
    // Row-major draw order so the weights do not depend on Eigen's storage order.
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c) layer.weight(r, c) = rng.uniform(-limit, limit);
    layer.bias = Vector::Zero(fan_out);
    layer.activation = last ? output_act : hidden_act;
    layers_.push_back(std::move(layer));
    fan_in = fan_out;
  }
}

DenseNet::DenseNet(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("network needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    if (l.weight.rows() < 1 || l.weight.cols() < 1 || l.bias.size() != l.weight.rows())
      throw std::invalid_argument("layer " + std::to_string(i) + " has inconsistent shape");
    if (i > 0 && l.weight.cols() != layers_[i - 1].weight.rows())
      throw std::invalid_argument("layer " + std::to_string(i) + " does not chain");
  }
  if (!all_finite()) throw std::invalid_argument("network parameters must be finite");
}

int DenseNet::input_dim() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.front().weight.cols());
}

int DenseNet::output_dim() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.back().weight.rows());
}

Matrix DenseNet::forward(const Matrix& input) const {
  if (input.rows() != input_dim())
    throw std::invalid_argument("forward: input has " + std::to_string(input.rows()) +
                                " rows, expected " + std::to_string(input_dim()));
  Matrix a = input;
  for (const auto& l : layers_) {
    Matrix z = l.weight * a;
    z.colwise() += l.bias;
    apply_activation(z, l.activation);
    a = std::move(z);
  }
  return a;
}

const Matrix& DenseNet::forward(const Matrix& input, ForwardCache& cache) const {
  if (input.rows() != input_dim())
    throw std::invalid_argument("forward: input has " + std::to_string(input.rows()) +
                                " rows, expected " + std::to_string(input_dim()));
  cache.activations.resize(layers_.size() + 1);
  cache.activations[0] = input;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    Matrix& z = cache.activations[i + 1];
    z.noalias() = l.weight * cache.activations[i];
    z.colwise() += l.bias;
    apply_activation(z, l.activation);
  }
  cache.owner = this;
  cache.version = version_;
  return cache.activations.back();
}

std::vector<double> DenseNet::forward(std::span<const double> input) const {
  const Matrix x = Eigen::Map<const Vector>(input.data(), static_cast<Eigen::Index>(input.size()));
  const Matrix y = forward(x);
  return {y.data(), y.data() + y.size()};
}

Matrix DenseNet::backward(const ForwardCache& cache, const Matrix& grad_output,
                          Gradients* grads) const {
  if (cache.owner != this || cache.version != version_ ||
      cache.activations.size() != layers_.size() + 1)
    throw std::logic_error("backward: forward cache is stale or belongs to another network");
  const Eigen::Index batch = cache.activations[0].cols();
  if (grad_output.rows() != output_dim() || grad_output.cols() != batch)
    throw std::invalid_argument("backward: output gradient shape mismatch");
  if (grads != nullptr && grads->weight.size() != layers_.size())
    throw std::invalid_argument("backward: gradient buffer shape mismatch");

  Matrix delta = grad_output;
  for (std::size_t i = layers_.size(); i-- > 0;) {
    const auto& l = layers_[i];
    activation_backward(delta, cache.activations[i + 1], l.activation);
    if (grads != nullptr) {
      grads->weight[i].noalias() += delta * cache.activations[i].transpose();
      grads->bias[i] += delta.rowwise().sum();
    }
    Matrix next = l.weight.transpose() * delta;
    delta = std::move(next);
  }
  return delta;
}

Gradients DenseNet::zero_gradients() const {
  Gradients g;
  for (const auto& l : layers_) {
    g.weight.push_back(Matrix::Zero(l.weight.rows(), l.weight.cols()));
    g.bias.push_back(Vector::Zero(l.bias.size()));
  }
  return g;
}

std::size_t DenseNet::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

double* DenseNet::locate(std::size_t flat_index) {
  for (auto& l : layers_) {
    const auto wn = static_cast<std::size_t>(l.weight.size());
    if (flat_index < wn) {
      const auto cols = static_cast<std::size_t>(l.weight.cols());
      return &l.weight(static_cast<Eigen::Index>(flat_index / cols),
                       static_cast<Eigen::Index>(flat_index % cols));
    }
    flat_index -= wn;
    const auto bn = static_cast<std::size_t>(l.bias.size());
    if (flat_index < bn) return &l.bias(static_cast<Eigen::Index>(flat_index));
    flat_index -= bn;
  }
  throw std::out_of_range("parameter index out of range");
}

double DenseNet::parameter(std::size_t flat_index) const {
  return *const_cast<DenseNet*>(this)->locate(flat_index);
}

void DenseNet::set_parameter(std::size_t flat_index, double value) {
  *locate(flat_index) = value;
  ++version_;
}

bool DenseNet::all_finite() const {
  for (const auto& l : layers_)
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  return true;
}

void DenseNet::save(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(layers_.size()));
  for (const auto& l : layers_) {
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(l.weight.rows()));
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(l.weight.cols()));
    write_pod<std::uint8_t>(out, static_cast<std::uint8_t>(l.activation));
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) write_pod<double>(out, l.weight(r, c));
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) write_pod<double>(out, l.bias(r));
  }
  if (!out) throw std::runtime_error("failed to write network checkpoint");
}

DenseNet DenseNet::load(std::istream& in) {
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a network checkpoint");
  const auto count = read_pod<std::uint32_t>(in);
  std::vector<DenseLayer> layers(count);
  for (auto& l : layers) {
    const auto rows = read_pod<std::uint32_t>(in);
    const auto cols = read_pod<std::uint32_t>(in);
    const auto act = read_pod<std::uint8_t>(in);
    if (act > static_cast<std::uint8_t>(Activation::logistic))
      throw std::runtime_error("unknown activation in checkpoint");
    l.activation = static_cast<Activation>(act);
    l.weight.resize(rows, cols);
    l.bias.resize(rows);
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) l.weight(r, c) = read_pod<double>(in);
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias(r) = read_pod<double>(in);
  }
  return DenseNet(std::move(layers));
}

void DenseNet::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  save(out);
}

DenseNet DenseNet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load(in);
}

void soft_update(DenseNet& target, const DenseNet& online, double rate) {
  const auto& src = online.layers();
  if (target.layers().size() != src.size())
    throw std::invalid_argument("soft_update: architectures differ");
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto& t = target.layers()[i];
    if (t.weight.rows() != src[i].weight.rows() || t.weight.cols() != src[i].weight.cols() ||
        t.activation != src[i].activation)
      throw std::invalid_argument("soft_update: architectures differ");
  }
  auto& dst = target.mutable_layers();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i].weight = rate * src[i].weight + (1.0 - rate) * dst[i].weight;
    dst[i].bias = rate * src[i].bias + (1.0 - rate) * dst[i].bias;
  }
}

}  // namespace aigc::nn
