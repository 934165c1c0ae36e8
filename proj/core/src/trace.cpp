#include "vrsim/trace.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "vrsim/angles.hpp"
#include "vrsim/errors.hpp"

namespace vrsim {

char axis_name(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

double ViewpointSample::axis(Axis a) const {
  switch (a) {
    case Axis::X: return x_deg;
    case Axis::Y: return y_deg;
    case Axis::Z: return z_deg;
  }
  return 0.0;
}

namespace {

std::string trace_tag(const Trace& t) {
  return "video " + std::to_string(t.video_id) + " user " +
         std::to_string(t.user_id);
}

}  // namespace

void validate_trace(const Trace& trace) {
  if (trace.samples.empty())
    throw DataError("empty trace for " + trace_tag(trace));
  if (trace.samples.front().slot != 0)
    throw DataError("trace for " + trace_tag(trace) + " does not start at slot 0");
  for (int i = 0; i < trace.length(); ++i) {
    const auto& s = trace.samples[static_cast<std::size_t>(i)];
    if (s.slot != i)
      throw DataError("slot gap in trace for " + trace_tag(trace) + " at slot " +
                      std::to_string(s.slot));
    for (Axis a : kAllAxes) {
      if (!angle_in_range(s.axis(a)))
        throw DataError("angle off (-180, 180] in trace for " + trace_tag(trace) +
                        " slot " + std::to_string(i) + " axis " +
                        std::string(1, axis_name(a)));
    }
  }
}

std::vector<int> Dataset::video_ids() const {
  std::set<int> ids;
  for (const auto& t : traces) ids.insert(t.video_id);
  return {ids.begin(), ids.end()};
}

std::vector<int> Dataset::traces_of_video(int video_id) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(traces.size()); ++i)
    if (traces[static_cast<std::size_t>(i)].video_id == video_id) out.push_back(i);
  return out;
}

void validate_dataset(const Dataset& ds) {
  if (ds.traces.empty()) throw DataError("dataset has no traces");
  std::set<std::pair<int, int>> keys;
  for (const auto& t : ds.traces) {
    validate_trace(t);
    if (!keys.insert({t.video_id, t.user_id}).second)
      throw DataError("duplicate trace for video " + std::to_string(t.video_id) +
                      " user " + std::to_string(t.user_id));
  }
}

}  // namespace vrsim
