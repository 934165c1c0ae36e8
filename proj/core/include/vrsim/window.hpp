#pragma once

#include <optional>
#include <vector>

#include "vrsim/trace.hpp"

namespace vrsim {

// How gaps left by lost uplink slots are filled before prediction.
enum class Imputation { Hold, Interpolate };

struct WindowConfig {
  int t_w = 10;                    // observed slots per example
  int d = 1;                       // prediction offset, slots ahead
  std::vector<Axis> dims{Axis::Y};

  // Throws ConfigError on t_w < 1, d < 1 or empty/duplicate dims.
  void validate() const;
};

// Fixed-length history of the t_w most recent slots, oldest first. Entries are
// nullopt where the uplink lost the sample.
class SlidingWindow {
 public:
  explicit SlidingWindow(int t_w);

  void push(std::optional<double> angle_deg);

  // True once t_w slots have been pushed.
  bool warm() const { return pushes_ >= static_cast<long>(buf_.size()); }
  int size() const { return static_cast<int>(buf_.size()); }
  long pushes() const { return pushes_; }

  // i = 0 is the oldest retained slot. Meaningful once warm.
  std::optional<double> at(int i) const;

  // Window contents with gaps filled. Hold repeats the most recent observed
  // value (including one that already scrolled out); Interpolate draws a line
  // between the observed neighbours and holds at the edges. A window that has
  // never seen a value falls back to 0 degrees.
  std::vector<double> imputed(Imputation policy) const;

 private:
  std::vector<std::optional<double>> buf_;
  std::size_t head_ = 0;  // index of the oldest entry
  long pushes_ = 0;
  std::optional<double> before_window_;  // last observed value scrolled out
};

struct WindowedExample {
  std::vector<double> features_deg;  // t_w * |dims| values, slot-major
  double target_deg = 0.0;
  int target_slot = 0;
};

// Examples for one target axis from a fully observed trace: the window ending
// at slot t predicts slot t + d. Features hold only target_dim.
// Throws DataError when the trace is shorter than t_w + d.
std::vector<WindowedExample> make_windowed_examples(const Trace& trace,
                                                    const WindowConfig& cfg,
                                                    Axis target_dim);

// Same, but features interleave every cfg.dims axis per slot
// (slot-major: all dims of the oldest slot first).
std::vector<WindowedExample> make_joint_examples(const Trace& trace,
                                                 const WindowConfig& cfg,
                                                 Axis target_dim);

}  // namespace vrsim
