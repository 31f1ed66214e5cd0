#pragma once

// Check suites shared by the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "aigc/env/types.hpp"

namespace aigc::testing {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

bool all_passed(const std::vector<Check>& checks);

/// Every worked example with a closed-form or statistical oracle.
std::vector<Check> worked_examples();

/// Finite-difference checks for dense networks (5 architectures x 10 probes)
/// and the frozen-noise diffusion chain at L = 1 and L = 5.
std::vector<Check> gradient_suite();

/// Iterated single noising steps against the closed-form marginal at every l.
std::vector<Check> schedule_identity(int samples = 100000);

/// Random raw actions through both amenders, scored by check_feasibility.
/// Returns the continuous-amender check, the decoder binary-cache check and
/// the decoder storage-capacity check, in that order.
std::vector<Check> feasibility_fuzz(int cases = 10000);

/// The fitted constants quoted for the reference model.
GenAiModelSpec reference_model(double storage_gb = 5.0);

}  // namespace aigc::testing
