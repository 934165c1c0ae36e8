#include "vrsim/session.hpp"

#include <stdexcept>

#include "vrsim/angles.hpp"
#include "vrsim/training.hpp"

namespace vrsim {

OnlineSession::OnlineSession(std::vector<PredictorModel> models,
                             SessionConfig cfg)
    : models_(std::move(models)), cfg_(std::move(cfg)) {
  cfg_.window.validate();
  if (models_.size() != cfg_.window.dims.size())
    throw std::invalid_argument("OnlineSession: one model per axis required");
  for (std::size_t i = 0; i < models_.size(); ++i)
    windows_.emplace_back(cfg_.window.t_w);
}

void OnlineSession::make_prediction(int for_slot) {
  Pending p;
  const auto n_dims = windows_.size();

  std::vector<std::vector<double>> imputed(n_dims);
  for (std::size_t j = 0; j < n_dims; ++j)
    imputed[j] = windows_[j].imputed(cfg_.imputation);

  if (cfg_.joint_input) {
    // Slot-major interleave, same layout as make_joint_examples.
    std::vector<double> feats;
    feats.reserve(static_cast<std::size_t>(cfg_.window.t_w) * n_dims);
    for (int s = 0; s < cfg_.window.t_w; ++s)
      for (std::size_t j = 0; j < n_dims; ++j)
        feats.push_back(imputed[j][static_cast<std::size_t>(s)]);
    p.features_norm.assign(n_dims, normalize_features(feats));
  } else {
    for (std::size_t j = 0; j < n_dims; ++j)
      p.features_norm.push_back(normalize_features(imputed[j]));
  }

  for (std::size_t j = 0; j < n_dims; ++j) {
    double raw = predict(models_[j], p.features_norm[j]);
    p.predicted_deg.push_back(wrap_angle(denormalize_angle(raw)));
  }
  pending_[for_slot] = std::move(p);
}

std::optional<SlotRecord> OnlineSession::step(
    int slot, const std::vector<double>& actual_deg,
    const UplinkOutcome& outcome) {
  if (slot != next_slot_)
    throw std::invalid_argument("OnlineSession::step: slots must be consecutive");
  if (actual_deg.size() != windows_.size())
    throw std::invalid_argument("OnlineSession::step: axis count mismatch");
  ++next_slot_;

  std::optional<SlotRecord> record;
  auto it = pending_.find(slot);
  if (it != pending_.end()) {
    SlotRecord r;
    r.slot = slot;
    r.predicted_deg = it->second.predicted_deg;
    r.actual_deg = actual_deg;
    for (std::size_t j = 0; j < actual_deg.size(); ++j) {
      double e = wrapped_angle_error(r.predicted_deg[j], actual_deg[j]);
      r.sq_err_deg2.push_back(e * e);
    }
    r.outcome = outcome;
    record = std::move(r);
  }

  if (outcome.success) {
    // The sample arrived: it becomes a training target for the features that
    // predicted it, and enters the window as observed.
    if (cfg_.online && it != pending_.end()) {
      for (std::size_t j = 0; j < models_.size(); ++j)
        models_[j] = sgd_update(models_[j], it->second.features_norm[j],
                                normalize_angle(actual_deg[j]));
      ++updates_;
      if (record) record->model_updated = true;
    }
    for (std::size_t j = 0; j < windows_.size(); ++j)
      windows_[j].push(actual_deg[j]);
  } else {
    for (auto& w : windows_) w.push(std::nullopt);
  }

  if (it != pending_.end()) pending_.erase(it);
  if (windows_.front().warm()) make_prediction(slot + cfg_.window.d);
  return record;
}

ErrorRecord SessionLog::error_record() const {
  ErrorRecord rec;
  rec.sq_err_deg2.reserve(records.size());
  for (const auto& r : records) rec.sq_err_deg2.push_back(r.sq_err_deg2);
  return rec;
}

double SessionLog::delivered_fraction() const {
  if (deliveries.empty()) return 0.0;
  long ok = 0;
  for (const auto& o : deliveries) ok += o.success ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(deliveries.size());
}

double SessionLog::mean_latency_ttis() const {
  if (deliveries.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& o : deliveries) acc += o.latency_ttis;
  return acc / static_cast<double>(deliveries.size());
}

std::vector<UplinkOutcome> simulate_uplink(int n_slots, int k_vr,
                                           const ChannelConfig& ch,
                                           const RetransConfig& rt,
                                           Rng& placement, Rng& fading) {
  if (n_slots < 1) throw std::invalid_argument("simulate_uplink: no slots");
  ch.validate();
  rt.validate();
  auto placements = place_users(k_vr, ch, placement);
  std::vector<UplinkOutcome> out;
  out.reserve(static_cast<std::size_t>(n_slots));
  auto attempt = [&] { return draw_attempt(placements, ch, fading); };
  for (int s = 0; s < n_slots; ++s) out.push_back(run_scheme(attempt, rt));
  return out;
}

SessionLog run_session(const Trace& trace, std::vector<PredictorModel> models,
                       const SessionConfig& cfg,
                       std::span<const UplinkOutcome> outcomes) {
  if (static_cast<int>(outcomes.size()) != trace.length())
    throw std::invalid_argument("run_session: one outcome per slot required");
  OnlineSession session(std::move(models), cfg);
  SessionLog log;
  log.deliveries.assign(outcomes.begin(), outcomes.end());
  for (int s = 0; s < trace.length(); ++s) {
    std::vector<double> actual;
    actual.reserve(cfg.window.dims.size());
    for (Axis a : cfg.window.dims)
      actual.push_back(trace.samples[static_cast<std::size_t>(s)].axis(a));
    auto rec = session.step(s, actual, outcomes[static_cast<std::size_t>(s)]);
    if (rec) log.records.push_back(std::move(*rec));
  }
  log.final_models = session.models();
  log.updates = session.updates();
  return log;
}

}  // namespace vrsim
