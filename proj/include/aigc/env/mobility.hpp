#pragma once

#include <string_view>
#include <vector>

#include "aigc/env/markov.hpp"
#include "aigc/env/types.hpp"

namespace aigc {

/// User placement regimes. The chain index matches this order.
enum class LocationLaw { uniform = 0, concentrated = 1, boundary = 2 };

std::string_view to_string(LocationLaw law);

struct MobilityChain {
  std::vector<LocationLaw> laws{LocationLaw::uniform, LocationLaw::concentrated,
                                LocationLaw::boundary};
  MarkovChain chain;

  LocationLaw current_law() const { return laws[chain.current]; }
};

/// uniform: i.i.d. over the square. concentrated: isotropic Gaussian around the
/// centre, rejected outside the square. boundary: uniform over the band of
/// width boundary_band_m along the perimeter.
std::vector<Position> sample_positions(LocationLaw law, int user_count, const EnvConfig& cfg,
                                       Rng& rng);

/// The base station sits at the centre of the service area.
Position base_station_position(const EnvConfig& cfg);

}  // namespace aigc
