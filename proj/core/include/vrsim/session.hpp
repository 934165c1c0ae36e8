#pragma once

#include <map>
#include <optional>
#include <vector>

#include "vrsim/channel.hpp"
#include "vrsim/metrics.hpp"
#include "vrsim/predictor.hpp"
#include "vrsim/retransmission.hpp"
#include "vrsim/trace.hpp"
#include "vrsim/window.hpp"

namespace vrsim {

struct SessionConfig {
  WindowConfig window;
  Imputation imputation = Imputation::Hold;
  bool online = true;        // false: parameters stay frozen
  bool joint_input = false;  // feed every selected axis into each model
};

struct SlotRecord {
  int slot = 0;
  std::vector<double> predicted_deg;  // per axis, wrapped
  std::vector<double> actual_deg;
  std::vector<double> sq_err_deg2;
  UplinkOutcome outcome;  // delivery of this slot's sample
  bool model_updated = false;
};

// One user's run: predictions are scored from the first slot the warm window
// can reach; every slot's sample still rides the uplink so the window fills
// from real deliveries.
class OnlineSession {
 public:
  // One model per axis in cfg.window.dims.
  OnlineSession(std::vector<PredictorModel> models, SessionConfig cfg);

  // Feed slot `slot` (consecutive from 0) with its true sample and delivery
  // outcome. Returns the scored record when a prediction existed for it.
  std::optional<SlotRecord> step(int slot,
                                 const std::vector<double>& actual_deg,
                                 const UplinkOutcome& outcome);

  const std::vector<PredictorModel>& models() const { return models_; }
  long updates() const { return updates_; }

 private:
  struct Pending {
    std::vector<std::vector<double>> features_norm;  // per axis (shared if joint)
    std::vector<double> predicted_deg;
  };

  void make_prediction(int for_slot);

  std::vector<PredictorModel> models_;
  SessionConfig cfg_;
  std::vector<SlidingWindow> windows_;  // per axis
  std::map<int, Pending> pending_;
  int next_slot_ = 0;
  long updates_ = 0;
};

struct SessionLog {
  std::vector<SlotRecord> records;        // scored slots in order
  std::vector<UplinkOutcome> deliveries;  // every slot
  std::vector<PredictorModel> final_models;
  long updates = 0;

  ErrorRecord error_record() const;
  double delivered_fraction() const;
  double mean_latency_ttis() const;
};

// Delivery outcomes for one user's whole trace: placements are drawn once,
// fading fresh per repetition. The evaluated user is index 0; the other
// k_vr - 1 users interfere.
std::vector<UplinkOutcome> simulate_uplink(int n_slots, int k_vr,
                                           const ChannelConfig& ch,
                                           const RetransConfig& rt,
                                           Rng& placement, Rng& fading);

// Drives OnlineSession over the trace with precomputed outcomes
// (outcomes.size() must equal the trace length).
SessionLog run_session(const Trace& trace, std::vector<PredictorModel> models,
                       const SessionConfig& cfg,
                       std::span<const UplinkOutcome> outcomes);

}  // namespace vrsim
