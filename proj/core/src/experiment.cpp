#include "vrsim/experiment.hpp"

#include <algorithm>
#include <stdexcept>

#include "vrsim/errors.hpp"
#include "vrsim/training.hpp"

namespace vrsim {

void ExperimentConfig::validate() const {
  window.validate();
  plan.validate();
  channel.validate();
  retrans.validate();
  if (use_synthetic) synth.validate();
  else if (data_path.empty()) throw ConfigError("no data source selected");
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
  if (lr_order < 1) throw ConfigError("regression order must be at least 1");
  if (rnn_hidden < 1) throw ConfigError("recurrent width must be at least 1");
  for (int h : mlp_hidden)
    if (h < 1) throw ConfigError("hidden layer sizes must be positive");
  if (k_vr < 1) throw ConfigError("need at least one headset");
  if (train_user_limit < 0) throw ConfigError("negative training cap");
  for (int w : sweep_windows)
    if (w < 1) throw ConfigError("swept window lengths must be positive");
  for (int u : sweep_users)
    if (u < 1) throw ConfigError("swept user counts must be positive");
}

namespace {

// One trained model per axis for one group (a video, or all of them).
using ModelSet = std::vector<PredictorModel>;

struct FoldModels {
  std::map<int, ModelSet> by_group;  // PerVideo: video id; AllVideos: key -1
  std::vector<double> epoch_loss;    // mean over the fold's models
};

struct PassResult {
  double offline_deg2 = 0.0, online_deg2 = 0.0;
  double offline_norm = 0.0, online_norm = 0.0;
  std::vector<double> fold_offline, fold_online;
  std::vector<std::vector<double>> fold_epoch_loss;
  int first_scored_slot = 0;
  std::vector<double> slot_off_sum, slot_on_sum;
  long slot_sessions = 0;
  std::map<int, long> latency_hist;
  long deliveries_total = 0, deliveries_ok = 0;
  long online_updates = 0;
};

PredictorHyper hyper_of(const ExperimentConfig& cfg) {
  PredictorHyper h;
  h.kind = cfg.predictor;
  h.input_len = cfg.window.t_w;
  h.input_width = cfg.joint_input ? static_cast<int>(cfg.window.dims.size()) : 1;
  h.order = cfg.lr_order;
  h.mlp_hidden = cfg.mlp_hidden;
  h.rnn_hidden = cfg.rnn_hidden;
  h.learning_rate = cfg.learning_rate;
  h.grad_clip = cfg.grad_clip;
  return h;
}

std::vector<WindowedExample> examples_for(const Trace& trace,
                                          const ExperimentConfig& cfg,
                                          Axis dim) {
  return cfg.joint_input ? make_joint_examples(trace, cfg.window, dim)
                         : make_windowed_examples(trace, cfg.window, dim);
}

// Applies the training cap to one group's member list, seeded so the subset
// is stable for a given (seed, fold, group).
void apply_user_limit(std::vector<int>& members, const ExperimentConfig& cfg,
                      int fold, int group_key) {
  if (cfg.train_user_limit <= 0 ||
      static_cast<int>(members.size()) <= cfg.train_user_limit)
    return;
  Rng rng = make_stream(cfg.seed, "subsample", static_cast<std::uint64_t>(fold),
                        static_cast<std::uint64_t>(group_key + 1));
  shuffle(members, rng);
  members.resize(static_cast<std::size_t>(cfg.train_user_limit));
  std::sort(members.begin(), members.end());
}

FoldModels train_fold(const Dataset& ds, const ExperimentConfig& cfg, int fold,
                      const FoldSplit& split) {
  FoldModels out;

  // group key -> training trace indices
  std::map<int, std::vector<int>> groups;
  if (cfg.plan.regime == Regime::PerVideo) {
    for (int idx : split.train)
      groups[ds.traces[static_cast<std::size_t>(idx)].video_id].push_back(idx);
  } else {
    groups[-1] = {split.train.begin(), split.train.end()};
  }

  std::vector<std::vector<double>> losses;
  for (auto& [key, members] : groups) {
    apply_user_limit(members, cfg, fold, key);
    ModelSet models;
    for (std::size_t dim_i = 0; dim_i < cfg.window.dims.size(); ++dim_i) {
      Axis dim = cfg.window.dims[dim_i];
      std::vector<WindowedExample> examples;
      for (int idx : members) {
        auto ex = examples_for(ds.traces[static_cast<std::size_t>(idx)], cfg, dim);
        examples.insert(examples.end(), ex.begin(), ex.end());
      }
      if (examples.empty())
        throw ConfigError("fold " + std::to_string(fold) +
                          " has no training examples");
      const auto stream_key =
          static_cast<std::uint64_t>(key + 1) * 8 +
          static_cast<std::uint64_t>(dim_i);
      Rng init = make_stream(cfg.seed, "init",
                             static_cast<std::uint64_t>(fold), stream_key);
      PredictorModel model = make_predictor(hyper_of(cfg), init);
      TrainConfig tc;
      tc.epochs = cfg.epochs;
      tc.seed = derive_seed(cfg.seed, "train",
                            static_cast<std::uint64_t>(fold), stream_key);
      OfflineResult res = train_offline(std::move(model), examples, tc);
      models.push_back(std::move(res.model));
      losses.push_back(std::move(res.epoch_loss));
    }
    out.by_group[key] = std::move(models);
  }

  out.epoch_loss.assign(static_cast<std::size_t>(cfg.epochs), 0.0);
  for (const auto& series : losses)
    for (std::size_t e = 0; e < series.size(); ++e)
      out.epoch_loss[e] += series[e] / static_cast<double>(losses.size());
  return out;
}

PassResult run_pass(const Dataset& ds, const ExperimentConfig& cfg) {
  auto folds = kfold_split(ds, cfg.plan, cfg.seed);
  PassResult res;

  SessionConfig frozen{cfg.window, cfg.imputation, false, cfg.joint_input};
  SessionConfig adapting{cfg.window, cfg.imputation, true, cfg.joint_input};

  for (int f = 0; f < static_cast<int>(folds.size()); ++f) {
    const auto& split = folds[static_cast<std::size_t>(f)];
    FoldModels trained = train_fold(ds, cfg, f, split);
    res.fold_epoch_loss.push_back(trained.epoch_loss);

    // video id -> error records of this fold's test sessions
    std::map<int, std::vector<ErrorRecord>> video_off, video_on;

    for (int idx : split.test) {
      const Trace& trace = ds.traces[static_cast<std::size_t>(idx)];
      int group = cfg.plan.regime == Regime::PerVideo ? trace.video_id : -1;
      const ModelSet& models = trained.by_group.at(group);

      Rng placement = make_stream(cfg.seed, "placement",
                                  static_cast<std::uint64_t>(trace.video_id),
                                  static_cast<std::uint64_t>(trace.user_id));
      Rng fading = make_stream(cfg.seed, "fading",
                               static_cast<std::uint64_t>(trace.video_id),
                               static_cast<std::uint64_t>(trace.user_id));
      auto outcomes = simulate_uplink(trace.length(), cfg.k_vr, cfg.channel,
                                      cfg.retrans, placement, fading);

      SessionLog off = run_session(trace, models, frozen, outcomes);
      SessionLog on = run_session(trace, models, adapting, outcomes);
      if (off.records.empty())
        throw ConfigError("test trace shorter than the window; nothing scored");

      video_off[trace.video_id].push_back(off.error_record());
      video_on[trace.video_id].push_back(on.error_record());
      res.online_updates += on.updates;

      for (const auto& o : outcomes) {
        ++res.latency_hist[o.latency_ttis];
        ++res.deliveries_total;
        res.deliveries_ok += o.success ? 1 : 0;
      }

      if (res.slot_off_sum.empty()) {
        res.first_scored_slot = off.records.front().slot;
        res.slot_off_sum.assign(off.records.size(), 0.0);
        res.slot_on_sum.assign(on.records.size(), 0.0);
      }
      if (off.records.size() != res.slot_off_sum.size())
        throw ConfigError("traces disagree in length; per-slot series undefined");
      for (std::size_t i = 0; i < off.records.size(); ++i) {
        ErrorRecord r_off{{off.records[i].sq_err_deg2}};
        ErrorRecord r_on{{on.records[i].sq_err_deg2}};
        res.slot_off_sum[i] += r_off.mean_sq_deg2();
        res.slot_on_sum[i] += r_on.mean_sq_deg2();
      }
      ++res.slot_sessions;
    }

    // Fold error: mean over its videos of the per-video average.
    double f_off = 0.0, f_on = 0.0, f_offn = 0.0, f_onn = 0.0;
    for (const auto& [vid, recs] : video_off) {
      f_off += average_prediction_error(recs);
      f_offn += normalized_error(recs);
    }
    for (const auto& [vid, recs] : video_on) {
      f_on += average_prediction_error(recs);
      f_onn += normalized_error(recs);
    }
    const auto n_vids = static_cast<double>(video_off.size());
    res.fold_offline.push_back(f_off / n_vids);
    res.fold_online.push_back(f_on / n_vids);
    res.offline_norm += f_offn / n_vids;
    res.online_norm += f_onn / n_vids;
  }

  const auto k = static_cast<double>(folds.size());
  for (double v : res.fold_offline) res.offline_deg2 += v / k;
  for (double v : res.fold_online) res.online_deg2 += v / k;
  res.offline_norm /= k;
  res.online_norm /= k;
  return res;
}

}  // namespace

RunReport run_experiment(const Dataset& ds, const ExperimentConfig& cfg) {
  cfg.validate();
  validate_dataset(ds);

  RunReport rep;
  rep.config = cfg;

  PassResult base = run_pass(ds, cfg);
  rep.offline_error_deg2 = base.offline_deg2;
  rep.online_error_deg2 = base.online_deg2;
  rep.offline_error_norm = base.offline_norm;
  rep.online_error_norm = base.online_norm;
  rep.fold_offline_deg2 = std::move(base.fold_offline);
  rep.fold_online_deg2 = std::move(base.fold_online);
  rep.fold_epoch_loss = std::move(base.fold_epoch_loss);
  rep.first_scored_slot = base.first_scored_slot;
  rep.latency_hist_ttis = std::move(base.latency_hist);
  rep.deliveries_total = base.deliveries_total;
  rep.deliveries_ok = base.deliveries_ok;
  rep.delivered_fraction =
      base.deliveries_total == 0
          ? 0.0
          : static_cast<double>(base.deliveries_ok) /
                static_cast<double>(base.deliveries_total);
  rep.online_updates = base.online_updates;
  rep.per_slot_offline_deg2.reserve(base.slot_off_sum.size());
  for (double v : base.slot_off_sum)
    rep.per_slot_offline_deg2.push_back(v / static_cast<double>(base.slot_sessions));
  for (double v : base.slot_on_sum)
    rep.per_slot_online_deg2.push_back(v / static_cast<double>(base.slot_sessions));

  for (int w : cfg.sweep_windows) {
    ExperimentConfig c = cfg;
    c.window.t_w = w;
    c.sweep_windows.clear();
    c.sweep_users.clear();
    PassResult r = run_pass(ds, c);
    rep.window_sweep.push_back({w, r.offline_deg2, r.online_deg2});
  }
  for (int u : cfg.sweep_users) {
    ExperimentConfig c = cfg;
    c.train_user_limit = u;
    c.sweep_windows.clear();
    c.sweep_users.clear();
    PassResult r = run_pass(ds, c);
    rep.user_sweep.push_back({u, r.offline_deg2, r.online_deg2});
  }
  return rep;
}

}  // namespace vrsim
