#pragma once

#include <span>
#include <vector>

#include "aigc/nn/dense_net.hpp"

namespace aigc::kernels {

/// Straight loop-nest forward pass for one sample; the oracle for DenseNet.
std::vector<double> dense_forward_reference(const nn::DenseNet& net, std::span<const double> input);

/// Column-per-sample batch through the loop-nest kernel on one thread.
nn::Matrix dense_forward_batch_serial(const nn::DenseNet& net, const nn::Matrix& inputs);

/// Same as the serial batch with samples split across OpenMP threads.
/// Bit-identical to dense_forward_batch_serial.
nn::Matrix dense_forward_batch_parallel(const nn::DenseNet& net, const nn::Matrix& inputs);

/// Threads OpenMP would use for a parallel region; 1 without OpenMP.
int parallel_threads();

}  // namespace aigc::kernels
