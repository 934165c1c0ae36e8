#pragma once

#include <array>
#include <vector>

namespace vrsim {

// Rotation axes of the head-mounted display.
enum class Axis { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAllAxes{Axis::X, Axis::Y, Axis::Z};

char axis_name(Axis a);

struct ViewpointSample {
  int slot = 0;
  double x_deg = 0.0;
  double y_deg = 0.0;
  double z_deg = 0.0;

  double axis(Axis a) const;
};

// One user's orientation series for one video. Slots are contiguous and start
// at 0.
struct Trace {
  int video_id = 0;
  int user_id = 0;
  std::vector<ViewpointSample> samples;

  int length() const { return static_cast<int>(samples.size()); }
};

// Throws DataError on empty traces, gaps, out-of-range angles or a nonzero
// first slot.
void validate_trace(const Trace& trace);

struct Dataset {
  std::vector<Trace> traces;

  // Distinct video ids in ascending order.
  std::vector<int> video_ids() const;
  // Indices into traces for one video, in stored order.
  std::vector<int> traces_of_video(int video_id) const;
};

void validate_dataset(const Dataset& ds);

}  // namespace vrsim
