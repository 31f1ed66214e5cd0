#include "aigc/env/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace aigc {

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

double path_loss_db(double distance_m) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("path_loss_db: distance must be positive");
  return -128.1 - 37.6 * std::log10(distance_m / 1000.0);
}

double channel_gain(double loss_db, double fading_power) {
  return std::pow(10.0, loss_db / 10.0) * fading_power;
}

double uplink_rate(double b_u, double gain, const EnvConfig& cfg) {
  if (b_u < 0.0 || gain < 0.0) throw std::invalid_argument("uplink_rate: negative input");
  if (b_u == 0.0 || gain == 0.0) return 0.0;
  const double bandwidth = b_u * cfg.uplink_bandwidth_hz;
  const double noise = dbm_to_watts(cfg.noise_psd_dbm_hz) * bandwidth;
  return bandwidth * std::log2(1.0 + dbm_to_watts(cfg.user_power_dbm) * gain / noise);
}

double downlink_rate(double gain, const EnvConfig& cfg) {
  if (gain < 0.0) throw std::invalid_argument("downlink_rate: negative gain");
  const double bandwidth = cfg.downlink_bandwidth_hz;
  const double noise = dbm_to_watts(cfg.noise_psd_dbm_hz) * bandwidth;
  return bandwidth * std::log2(1.0 + dbm_to_watts(cfg.bs_power_dbm) * gain / noise);
}

}  // namespace aigc
