#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vrsim/channel.hpp"
#include "vrsim/kfold.hpp"
#include "vrsim/predictor.hpp"
#include "vrsim/retransmission.hpp"
#include "vrsim/session.hpp"
#include "vrsim/synth.hpp"
#include "vrsim/window.hpp"

namespace vrsim {

// Everything one run needs; the emitted report echoes it in full so a run can
// be reproduced from its own output.
struct ExperimentConfig {
  // Data source (the CLI resolves it; the harness only sees the dataset).
  bool use_synthetic = true;
  std::string data_path;
  SynthConfig synth;

  // Predictor.
  PredictorKind predictor = PredictorKind::Gru;
  int lr_order = 15;
  std::vector<int> mlp_hidden{12, 10};
  int rnn_hidden = 12;
  double learning_rate = 1e-3;
  double grad_clip = 5.0;
  int epochs = 20;

  // Windows and axes.
  WindowConfig window;
  Imputation imputation = Imputation::Hold;
  bool joint_input = false;

  // Cross validation. PerVideo trains one model per video on its training
  // users; AllVideos trains a single model on all training videos.
  FoldPlan plan;

  // Uplink.
  ChannelConfig channel;
  RetransConfig retrans;
  int k_vr = 10;  // simultaneous headsets, evaluated user included

  std::uint64_t seed = 1;

  // Cap on training traces (per video under PerVideo, total under AllVideos);
  // 0 means all. The user-count sweep varies this cap.
  int train_user_limit = 0;

  std::vector<int> sweep_windows;
  std::vector<int> sweep_users;

  void validate() const;  // throws ConfigError
};

struct SweepPoint {
  int value = 0;
  double offline_deg2 = 0.0;
  double online_deg2 = 0.0;
};

struct RunReport {
  ExperimentConfig config;

  // Squared-error averages over users and slots (degrees squared), and the
  // same errors normalized by the 360 degree span.
  double offline_error_deg2 = 0.0;
  double online_error_deg2 = 0.0;
  double offline_error_norm = 0.0;
  double online_error_norm = 0.0;

  std::vector<double> fold_offline_deg2;
  std::vector<double> fold_online_deg2;
  std::vector<std::vector<double>> fold_epoch_loss;  // [fold][epoch]

  int first_scored_slot = 0;
  std::vector<double> per_slot_offline_deg2;  // pooled over all test sessions
  std::vector<double> per_slot_online_deg2;

  std::map<int, long> latency_hist_ttis;  // over every delivery
  long deliveries_total = 0;
  long deliveries_ok = 0;
  double delivered_fraction = 0.0;
  long online_updates = 0;

  std::vector<SweepPoint> window_sweep;
  std::vector<SweepPoint> user_sweep;
};

// Full k-fold pass: offline training per fold, then for every test trace a
// frozen-model session and an adapting session over the identical simulated
// uplink. Sweeps rerun the pass with the varied setting.
RunReport run_experiment(const Dataset& ds, const ExperimentConfig& cfg);

}  // namespace vrsim
