#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "vrsim/rng.hpp"

namespace vrsim {

// Multi-antenna uplink between the headsets and the base station at the
// center of a square service area.
struct ChannelConfig {
  int antennas = 30;                    // M at the base station
  double path_loss_exp = 3.0;           // alpha
  double noise_dbm = -110.0;
  double tx_power_dbm = 23.0;
  double bandwidth_hz = 1.0e7;
  double rate_threshold_bps = 1.6e7;    // 2 megabytes per second
  double side_m = 100.0;
  double min_distance_m = 1.0;          // keeps the path loss finite

  double noise_w() const;
  double tx_power_w() const;
  // Throws ConfigError on non-positive sizes, powers or rates.
  void validate() const;
};

double dbm_to_watts(double dbm);

struct UserPlacement {
  double x_m = 0.0;
  double y_m = 0.0;
  double distance_m = 0.0;  // to the base station, floored at min_distance_m
};

// Positions i.i.d. uniform over the square, base station at the origin.
std::vector<UserPlacement> place_users(int k_vr, const ChannelConfig& cfg,
                                       Rng& stream);

// Small-scale Rayleigh fading scaled by distance path loss: each antenna entry
// is sqrt(d^-alpha) times a unit-variance circular complex gaussian.
Eigen::VectorXcd draw_channel(double distance_m, const ChannelConfig& cfg,
                              Rng& stream);

// SINR after maximum ratio combining towards `desired`; the other users
// transmit simultaneously at the same power. Throws std::invalid_argument on
// a zero desired vector or mismatched antenna counts.
double mrc_sinr(const Eigen::VectorXcd& desired,
                std::span<const Eigen::VectorXcd> interferers,
                const ChannelConfig& cfg);

double uplink_rate_bps(double sinr, const ChannelConfig& cfg);

// A transmission goes through iff the achievable rate reaches the threshold.
bool attempt_success(double rate_bps, const ChannelConfig& cfg);

// One repetition for user 0 of `placements` with fresh fading on every
// vector: desired channel first, then each interferer in order.
bool draw_attempt(std::span<const UserPlacement> placements,
                  const ChannelConfig& cfg, Rng& fading);

}  // namespace vrsim
