#pragma once

#include <cstdint>

#include "vrsim/trace.hpp"

namespace vrsim {

// Synthetic head-orientation corpus. Users watching the same video share a
// seeded content path (sum of sinusoids around a per-video offset) and differ
// by individual mean-reverting noise with occasional rapid glances, so traces
// within a video stay positively correlated.
struct SynthConfig {
  int n_videos = 16;
  int users_per_video = 10;
  int t_tot = 300;
  // When positive, the content path switches to an independently drawn one at
  // this slot, emulating a scene change mid trace.
  int shift_at_slot = 0;

  void validate() const;  // throws ConfigError
};

Dataset synth_traces(const SynthConfig& cfg, std::uint64_t seed);

}  // namespace vrsim
