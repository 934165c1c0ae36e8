#include "vrsim/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "vrsim/errors.hpp"

namespace vrsim {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double ChannelConfig::noise_w() const { return dbm_to_watts(noise_dbm); }
double ChannelConfig::tx_power_w() const { return dbm_to_watts(tx_power_dbm); }

void ChannelConfig::validate() const {
  if (antennas < 1) throw ConfigError("antenna count must be positive");
  if (path_loss_exp <= 0.0) throw ConfigError("path loss exponent must be positive");
  if (bandwidth_hz <= 0.0) throw ConfigError("bandwidth must be positive");
  if (rate_threshold_bps <= 0.0) throw ConfigError("rate threshold must be positive");
  if (side_m <= 0.0) throw ConfigError("service area side must be positive");
  if (min_distance_m <= 0.0) throw ConfigError("minimum distance must be positive");
}

std::vector<UserPlacement> place_users(int k_vr, const ChannelConfig& cfg,
                                       Rng& stream) {
  if (k_vr < 1) throw std::invalid_argument("place_users: k_vr < 1");
  std::vector<UserPlacement> out;
  out.reserve(static_cast<std::size_t>(k_vr));
  const double half = cfg.side_m / 2.0;
  for (int i = 0; i < k_vr; ++i) {
    UserPlacement p;
    p.x_m = stream.uniform(-half, half);
    p.y_m = stream.uniform(-half, half);
    p.distance_m = std::max(std::hypot(p.x_m, p.y_m), cfg.min_distance_m);
    out.push_back(p);
  }
  return out;
}

Eigen::VectorXcd draw_channel(double distance_m, const ChannelConfig& cfg,
                              Rng& stream) {
  if (distance_m <= 0.0)
    throw std::invalid_argument("draw_channel: non-positive distance");
  const double gain = std::sqrt(std::pow(distance_m, -cfg.path_loss_exp));
  Eigen::VectorXcd h(cfg.antennas);
  for (int a = 0; a < cfg.antennas; ++a) h[a] = gain * stream.cnormal();
  return h;
}

double mrc_sinr(const Eigen::VectorXcd& desired,
                std::span<const Eigen::VectorXcd> interferers,
                const ChannelConfig& cfg) {
  const double p_tx = cfg.tx_power_w();
  const double norm2 = desired.squaredNorm();
  if (norm2 <= 0.0) throw std::invalid_argument("mrc_sinr: zero desired channel");
  // Combiner u = h/|h|; signal power P|h|^2, leakage P|u^H h_i|^2 each.
  double interference = 0.0;
  for (const auto& hi : interferers) {
    if (hi.size() != desired.size())
      throw std::invalid_argument("mrc_sinr: antenna count mismatch");
    interference += p_tx * std::norm(desired.dot(hi)) / norm2;
  }
  return p_tx * norm2 / (interference + cfg.noise_w());
}

double uplink_rate_bps(double sinr, const ChannelConfig& cfg) {
  if (sinr < 0.0) throw std::invalid_argument("uplink_rate_bps: negative SINR");
  return cfg.bandwidth_hz * std::log2(1.0 + sinr);
}

bool attempt_success(double rate_bps, const ChannelConfig& cfg) {
  return rate_bps >= cfg.rate_threshold_bps;
}

bool draw_attempt(std::span<const UserPlacement> placements,
                  const ChannelConfig& cfg, Rng& fading) {
  if (placements.empty())
    throw std::invalid_argument("draw_attempt: no users placed");
  Eigen::VectorXcd desired = draw_channel(placements[0].distance_m, cfg, fading);
  std::vector<Eigen::VectorXcd> others;
  others.reserve(placements.size() - 1);
  for (std::size_t i = 1; i < placements.size(); ++i)
    others.push_back(draw_channel(placements[i].distance_m, cfg, fading));
  double sinr = mrc_sinr(desired, others, cfg);
  return attempt_success(uplink_rate_bps(sinr, cfg), cfg);
}

}  // namespace vrsim
