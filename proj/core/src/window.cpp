#include "vrsim/window.hpp"

#include <set>
#include <stdexcept>
#include <string>

#include "vrsim/errors.hpp"

namespace vrsim {

void WindowConfig::validate() const {
  if (t_w < 1) throw ConfigError("window length must be at least 1");
  if (d < 1) throw ConfigError("prediction offset must be at least 1");
  if (dims.empty()) throw ConfigError("no prediction axes selected");
  std::set<Axis> seen(dims.begin(), dims.end());
  if (seen.size() != dims.size()) throw ConfigError("duplicate prediction axis");
}

SlidingWindow::SlidingWindow(int t_w) {
  if (t_w < 1) throw std::invalid_argument("SlidingWindow: t_w < 1");
  buf_.resize(static_cast<std::size_t>(t_w));
}

void SlidingWindow::push(std::optional<double> angle_deg) {
  if (warm()) {
    // The slot about to be overwritten becomes pre-window history.
    if (buf_[head_].has_value()) before_window_ = buf_[head_];
  }
  buf_[head_] = angle_deg;
  head_ = (head_ + 1) % buf_.size();
  ++pushes_;
}

std::optional<double> SlidingWindow::at(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("SlidingWindow::at");
  std::size_t filled = warm() ? buf_.size() : static_cast<std::size_t>(pushes_);
  std::size_t start = warm() ? head_ : 0;
  if (static_cast<std::size_t>(i) >= filled) return std::nullopt;
  return buf_[(start + static_cast<std::size_t>(i)) % buf_.size()];
}

std::vector<double> SlidingWindow::imputed(Imputation policy) const {
  const int n = size();
  std::vector<std::optional<double>> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = at(i);

  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (policy == Imputation::Hold) {
    std::optional<double> last = before_window_;
    for (int i = 0; i < n; ++i) {
      if (vals[static_cast<std::size_t>(i)]) last = vals[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = last.value_or(0.0);
    }
    return out;
  }

  // Interpolate: line between observed neighbours; the pre-window value, when
  // present, anchors the left edge one slot before index 0.
  int prev_idx = -1;
  std::optional<double> prev_val = before_window_;
  int i = 0;
  while (i < n) {
    if (vals[static_cast<std::size_t>(i)]) {
      prev_idx = i;
      prev_val = vals[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = *prev_val;
      ++i;
      continue;
    }
    int j = i;
    while (j < n && !vals[static_cast<std::size_t>(j)]) ++j;
    if (j < n && prev_val) {
      double a = *prev_val;
      double b = *vals[static_cast<std::size_t>(j)];
      double run = static_cast<double>(j - prev_idx);
      for (int k = i; k < j; ++k)
        out[static_cast<std::size_t>(k)] = a + (b - a) * static_cast<double>(k - prev_idx) / run;
    } else if (j < n) {
      for (int k = i; k < j; ++k)
        out[static_cast<std::size_t>(k)] = *vals[static_cast<std::size_t>(j)];
    } else {
      for (int k = i; k < n; ++k)
        out[static_cast<std::size_t>(k)] = prev_val.value_or(0.0);
    }
    i = j;
  }
  return out;
}

namespace {

std::vector<WindowedExample> build_examples(const Trace& trace,
                                            const WindowConfig& cfg,
                                            Axis target_dim,
                                            const std::vector<Axis>& feat_dims) {
  cfg.validate();
  const int T = trace.length();
  if (T < cfg.t_w + cfg.d)
    throw DataError("trace for video " + std::to_string(trace.video_id) +
                    " user " + std::to_string(trace.user_id) + " has " +
                    std::to_string(T) + " slots, needs at least " +
                    std::to_string(cfg.t_w + cfg.d));
  std::vector<WindowedExample> out;
  out.reserve(static_cast<std::size_t>(T - cfg.t_w - cfg.d + 1));
  for (int end = cfg.t_w - 1; end + cfg.d < T; ++end) {
    WindowedExample ex;
    ex.features_deg.reserve(static_cast<std::size_t>(cfg.t_w) * feat_dims.size());
    for (int s = end - cfg.t_w + 1; s <= end; ++s)
      for (Axis a : feat_dims)
        ex.features_deg.push_back(trace.samples[static_cast<std::size_t>(s)].axis(a));
    ex.target_slot = end + cfg.d;
    ex.target_deg = trace.samples[static_cast<std::size_t>(ex.target_slot)].axis(target_dim);
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace

std::vector<WindowedExample> make_windowed_examples(const Trace& trace,
                                                    const WindowConfig& cfg,
                                                    Axis target_dim) {
  return build_examples(trace, cfg, target_dim, {target_dim});
}

std::vector<WindowedExample> make_joint_examples(const Trace& trace,
                                                 const WindowConfig& cfg,
                                                 Axis target_dim) {
  return build_examples(trace, cfg, target_dim, cfg.dims);
}

}  // namespace vrsim
