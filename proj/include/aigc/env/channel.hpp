#pragma once

#include "aigc/config.hpp"

namespace aigc {

double dbm_to_watts(double dbm);

/// Macro-cell path loss in dB; distance in meters, evaluated in kilometers.
double path_loss_db(double distance_m);

/// Linear gain h = 10^(g/10) * |delta|^2.
double channel_gain(double loss_db, double fading_power);

/// Uplink Shannon rate (bit/s) for bandwidth ratio b_u. Returns 0 at b_u = 0,
/// the limit of the expression.
double uplink_rate(double b_u, double gain, const EnvConfig& cfg);

/// Downlink rate (bit/s) over the fixed per-user bandwidth.
double downlink_rate(double gain, const EnvConfig& cfg);

}  // namespace aigc
