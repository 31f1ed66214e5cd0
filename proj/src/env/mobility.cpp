#include "aigc/env/mobility.hpp"

#include <stdexcept>

namespace aigc {

std::string_view to_string(LocationLaw law) {
  switch (law) {
    case LocationLaw::uniform:
      return "uniform";
    case LocationLaw::concentrated:
      return "concentrated";
    case LocationLaw::boundary:
      return "boundary";
  }
  return "unknown";
}

Position base_station_position(const EnvConfig& cfg) {
  return {cfg.area_side_m / 2.0, cfg.area_side_m / 2.0};
}

namespace {

bool in_boundary_band(const Position& p, double side, double band) {
  return p.x <= band || p.y <= band || p.x >= side - band || p.y >= side - band;
}

}  // namespace

std::vector<Position> sample_positions(LocationLaw law, int user_count, const EnvConfig& cfg,
                                       Rng& rng) {
  if (user_count < 1) throw std::invalid_argument("sample_positions: need at least one user");
  const double side = cfg.area_side_m;
  const Position centre = base_station_position(cfg);
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(user_count));
  while (static_cast<int>(out.size()) < user_count) {
    Position p;
    switch (law) {
      case LocationLaw::uniform:
        p = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
        break;
      case LocationLaw::concentrated:
        p = {centre.x + cfg.concentrated_sigma_m * rng.normal(),
             centre.y + cfg.concentrated_sigma_m * rng.normal()};
        if (p.x < 0.0 || p.x > side || p.y < 0.0 || p.y > side) continue;
        break;
      case LocationLaw::boundary:
        p = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
        if (!in_boundary_band(p, side, cfg.boundary_band_m)) continue;
        break;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace aigc
