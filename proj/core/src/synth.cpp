#include "vrsim/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "vrsim/errors.hpp"
#include "vrsim/rng.hpp"

namespace vrsim {

void SynthConfig::validate() const {
  if (n_videos < 1) throw ConfigError("need at least one video");
  if (users_per_video < 1) throw ConfigError("need at least one user per video");
  if (t_tot < 1) throw ConfigError("need at least one slot");
  if (shift_at_slot < 0 || shift_at_slot >= t_tot)
    throw ConfigError("shift slot must fall inside the trace");
}

namespace {

constexpr double kTau = 6.283185307179586;

struct AxisShape {
  double offset_max;                 // per-video DC offset bound
  std::array<double, 3> amp_lo, amp_hi;
  double clamp;                      // keeps values inside the axis range
  double noise_sigma;
};

// Yaw moves widest; pitch and roll stay near level.
const AxisShape kShapes[3] = {
    {15.0, {13.0, 6.0, 2.0}, {18.0, 10.0, 5.0}, 49.5, 2.0},    // X
    {45.0, {40.0, 18.0, 8.0}, {55.0, 30.0, 15.0}, 149.5, 6.0}, // Y
    {15.0, {13.0, 6.0, 2.0}, {18.0, 10.0, 5.0}, 49.5, 2.0},    // Z
};

constexpr double kNoiseRho = 0.93;
constexpr double kGlanceProb = 0.02;
constexpr double kGlanceScale = 6.0;

struct Wave {
  double offset;
  std::array<double, 3> amp, omega, phase;

  double at(int t) const {
    double v = offset;
    for (int i = 0; i < 3; ++i)
      v += amp[static_cast<std::size_t>(i)] *
           std::sin(omega[static_cast<std::size_t>(i)] * t +
                    phase[static_cast<std::size_t>(i)]);
    return v;
  }
};

Wave draw_wave(const AxisShape& shape, Rng& rng) {
  Wave w;
  w.offset = rng.uniform(-shape.offset_max, shape.offset_max);
  const std::array<double, 2> period_lo_hi[3] = {
      {60.0, 180.0}, {25.0, 60.0}, {8.0, 25.0}};
  for (std::size_t i = 0; i < 3; ++i) {
    w.amp[i] = rng.uniform(shape.amp_lo[i], shape.amp_hi[i]);
    w.omega[i] = kTau / rng.uniform(period_lo_hi[i][0], period_lo_hi[i][1]);
    w.phase[i] = rng.uniform(0.0, kTau);
  }
  return w;
}

}  // namespace

Dataset synth_traces(const SynthConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Dataset ds;
  for (int v = 0; v < cfg.n_videos; ++v) {
    Rng content = make_stream(seed, "attractor", static_cast<std::uint64_t>(v));
    std::array<Wave, 3> base, shifted;
    for (std::size_t a = 0; a < 3; ++a) base[a] = draw_wave(kShapes[a], content);
    if (cfg.shift_at_slot > 0) {
      Rng content2 =
          make_stream(seed, "attractor-shift", static_cast<std::uint64_t>(v));
      for (std::size_t a = 0; a < 3; ++a)
        shifted[a] = draw_wave(kShapes[a], content2);
    }

    for (int u = 0; u < cfg.users_per_video; ++u) {
      Rng noise = make_stream(seed, "usernoise", static_cast<std::uint64_t>(v),
                              static_cast<std::uint64_t>(u));
      std::array<double, 3> n{};
      const double stat = 1.0 / std::sqrt(1.0 - kNoiseRho * kNoiseRho);
      for (std::size_t a = 0; a < 3; ++a)
        n[a] = kShapes[a].noise_sigma * stat * noise.normal();

      Trace tr;
      tr.video_id = v;
      tr.user_id = u;
      tr.samples.reserve(static_cast<std::size_t>(cfg.t_tot));
      for (int t = 0; t < cfg.t_tot; ++t) {
        // One glance event per slot, shared by the axes.
        double burst = noise.uniform() < kGlanceProb ? kGlanceScale : 1.0;
        ViewpointSample s;
        s.slot = t;
        std::array<double, 3> vals{};
        for (std::size_t a = 0; a < 3; ++a) {
          const Wave& w =
              (cfg.shift_at_slot > 0 && t >= cfg.shift_at_slot) ? shifted[a]
                                                                : base[a];
          double raw = w.at(t) + n[a];
          vals[a] = std::clamp(raw, -kShapes[a].clamp, kShapes[a].clamp);
          n[a] = kNoiseRho * n[a] +
                 kShapes[a].noise_sigma * burst * noise.normal();
        }
        s.x_deg = vals[0];
        s.y_deg = vals[1];
        s.z_deg = vals[2];
        tr.samples.push_back(s);
      }
      ds.traces.push_back(std::move(tr));
    }
  }
  return ds;
}

}  // namespace vrsim
