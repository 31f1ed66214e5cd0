#include "aigc/kernels/dense_reference.hpp"

#include <cmath>
#include <stdexcept>

#ifdef AIGC_HAVE_OPENMP
#include <omp.h>
#endif

namespace aigc::kernels {

namespace {

double activate(double z, nn::Activation act) {
  switch (act) {
    case nn::Activation::identity:
      return z;
    case nn::Activation::relu:
      return z > 0.0 ? z : 0.0;
    case nn::Activation::logistic:
      if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
      return std::exp(z) / (1.0 + std::exp(z));
  }
  throw std::invalid_argument("unknown activation");
}

void forward_column(const nn::DenseNet& net, const double* in, double* out) {
  std::vector<double> a(in, in + net.input_dim());
  std::vector<double> next;
  for (const auto& layer : net.layers()) {
    const auto rows = layer.weight.rows();
    const auto cols = layer.weight.cols();
    next.assign(static_cast<std::size_t>(rows), 0.0);
    for (Eigen::Index r = 0; r < rows; ++r) {
      double z = layer.bias(r);
      for (Eigen::Index c = 0; c < cols; ++c) z += layer.weight(r, c) * a[static_cast<std::size_t>(c)];
      next[static_cast<std::size_t>(r)] = activate(z, layer.activation);
    }
    a.swap(next);
  }
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
}

void check_input(const nn::DenseNet& net, Eigen::Index rows) {
  if (rows != net.input_dim()) throw std::invalid_argument("reference forward: input dimension mismatch");
}

}  // namespace

std::vector<double> dense_forward_reference(const nn::DenseNet& net, std::span<const double> input) {
  check_input(net, static_cast<Eigen::Index>(input.size()));
  std::vector<double> out(static_cast<std::size_t>(net.output_dim()));
  forward_column(net, input.data(), out.data());
  return out;
}

nn::Matrix dense_forward_batch_serial(const nn::DenseNet& net, const nn::Matrix& inputs) {
  check_input(net, inputs.rows());
  nn::Matrix out(net.output_dim(), inputs.cols());
  for (Eigen::Index j = 0; j < inputs.cols(); ++j) forward_column(net, inputs.col(j).data(), out.col(j).data());
  return out;
}

nn::Matrix dense_forward_batch_parallel(const nn::DenseNet& net, const nn::Matrix& inputs) {
  check_input(net, inputs.rows());
  nn::Matrix out(net.output_dim(), inputs.cols());
  const auto n = static_cast<long>(inputs.cols());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < n; ++j) forward_column(net, inputs.col(j).data(), out.col(j).data());
  return out;
}

int parallel_threads() {
#ifdef AIGC_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace aigc::kernels
