#include "vrsim/report.hpp"

#include <fstream>
#include <sstream>

#include "vrsim/errors.hpp"
#include "vrsim/serialize.hpp"

namespace vrsim {

namespace {

void kv(std::ostringstream& os, std::string_view key, const std::string& v) {
  os << key << " = " << v << '\n';
}
void kv(std::ostringstream& os, std::string_view key, double v) {
  kv(os, key, format_double(v));
}
void kv(std::ostringstream& os, std::string_view key, long v) {
  kv(os, key, std::to_string(v));
}
void kv(std::ostringstream& os, std::string_view key, int v) {
  kv(os, key, std::to_string(v));
}

std::string axes_string(const std::vector<Axis>& dims) {
  std::string s;
  for (Axis a : dims) s.push_back(axis_name(a));
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << body;
  if (!out) throw DataError("write failed on " + path.string());
}

}  // namespace

std::string report_to_text(const RunReport& rep) {
  const ExperimentConfig& c = rep.config;
  std::ostringstream os;
  os << "# vrsim run report\n";

  os << "\n[config]\n";
  kv(os, "data", c.use_synthetic ? std::string("synthetic") : c.data_path);
  if (c.use_synthetic) {
    kv(os, "synth.videos", c.synth.n_videos);
    kv(os, "synth.users_per_video", c.synth.users_per_video);
    kv(os, "synth.t_tot", c.synth.t_tot);
    kv(os, "synth.shift_at_slot", c.synth.shift_at_slot);
  }
  kv(os, "predictor", std::string(predictor_name(c.predictor)));
  if (c.predictor == PredictorKind::Lr) kv(os, "order", c.lr_order);
  if (c.predictor == PredictorKind::Mlp) {
    std::string h;
    for (int v : c.mlp_hidden) h += (h.empty() ? "" : " ") + std::to_string(v);
    kv(os, "hidden_layers", h);
  }
  if (c.predictor == PredictorKind::Lstm || c.predictor == PredictorKind::Gru) {
    kv(os, "hidden_units", c.rnn_hidden);
    kv(os, "grad_clip", c.grad_clip);
  }
  kv(os, "learning_rate", c.learning_rate);
  kv(os, "epochs", c.epochs);
  kv(os, "window", c.window.t_w);
  kv(os, "horizon", c.window.d);
  kv(os, "axes", axes_string(c.window.dims));
  kv(os, "joint_input", c.joint_input ? std::string("true") : std::string("false"));
  kv(os, "imputation", c.imputation == Imputation::Hold
                           ? std::string("hold")
                           : std::string("interpolate"));
  kv(os, "regime", std::string(regime_name(c.plan.regime)));
  kv(os, "kcross", c.plan.k_cross);
  kv(os, "train_user_limit", c.train_user_limit);
  kv(os, "scheme", std::string(scheme_name(c.retrans.scheme)));
  kv(os, "k_re", c.retrans.k_re);
  kv(os, "t_th_ttis", c.retrans.t_th_ttis);
  kv(os, "tti_s", c.retrans.tti_s);
  kv(os, "k_vr", c.k_vr);
  kv(os, "antennas", c.channel.antennas);
  kv(os, "path_loss_exp", c.channel.path_loss_exp);
  kv(os, "noise_dbm", c.channel.noise_dbm);
  kv(os, "tx_power_dbm", c.channel.tx_power_dbm);
  kv(os, "bandwidth_hz", c.channel.bandwidth_hz);
  kv(os, "rate_threshold_bps", c.channel.rate_threshold_bps);
  kv(os, "side_m", c.channel.side_m);
  kv(os, "seed", std::to_string(c.seed));

  os << "\n[results]\n";
  kv(os, "offline_error_deg2", rep.offline_error_deg2);
  kv(os, "online_error_deg2", rep.online_error_deg2);
  kv(os, "offline_error_norm", rep.offline_error_norm);
  kv(os, "online_error_norm", rep.online_error_norm);
  kv(os, "delivered_fraction", rep.delivered_fraction);
  kv(os, "deliveries_total", rep.deliveries_total);
  kv(os, "deliveries_ok", rep.deliveries_ok);
  kv(os, "online_updates", rep.online_updates);
  kv(os, "first_scored_slot", rep.first_scored_slot);

  os << "\n[folds]\n";
  for (std::size_t f = 0; f < rep.fold_offline_deg2.size(); ++f) {
    kv(os, "fold." + std::to_string(f) + ".offline_deg2",
       rep.fold_offline_deg2[f]);
    kv(os, "fold." + std::to_string(f) + ".online_deg2",
       rep.fold_online_deg2[f]);
  }
  return os.str();
}

void write_report(const RunReport& rep, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.txt", report_to_text(rep));

  {
    std::ostringstream os;
    os << "slot,offline_deg2,online_deg2\n";
    for (std::size_t i = 0; i < rep.per_slot_offline_deg2.size(); ++i)
      os << rep.first_scored_slot + static_cast<int>(i) << ','
         << format_double(rep.per_slot_offline_deg2[i]) << ','
         << format_double(rep.per_slot_online_deg2[i]) << '\n';
    write_file(dir / "per_slot_error.csv", os.str());
  }
  {
    std::ostringstream os;
    os << "latency_ttis,count\n";
    for (const auto& [lat, n] : rep.latency_hist_ttis)
      os << lat << ',' << n << '\n';
    write_file(dir / "latency_hist.csv", os.str());
  }
  {
    std::ostringstream os;
    os << "epoch";
    for (std::size_t f = 0; f < rep.fold_epoch_loss.size(); ++f)
      os << ",fold" << f;
    os << '\n';
    if (!rep.fold_epoch_loss.empty()) {
      for (std::size_t e = 0; e < rep.fold_epoch_loss.front().size(); ++e) {
        os << e;
        for (const auto& series : rep.fold_epoch_loss)
          os << ',' << format_double(series[e]);
        os << '\n';
      }
    }
    write_file(dir / "epoch_loss.csv", os.str());
  }
  if (!rep.window_sweep.empty()) {
    std::ostringstream os;
    os << "window,offline_deg2,online_deg2\n";
    for (const auto& p : rep.window_sweep)
      os << p.value << ',' << format_double(p.offline_deg2) << ','
         << format_double(p.online_deg2) << '\n';
    write_file(dir / "window_sweep.csv", os.str());
  }
  if (!rep.user_sweep.empty()) {
    std::ostringstream os;
    os << "users,offline_deg2,online_deg2\n";
    for (const auto& p : rep.user_sweep)
      os << p.value << ',' << format_double(p.offline_deg2) << ','
         << format_double(p.online_deg2) << '\n';
    write_file(dir / "user_sweep.csv", os.str());
  }
}

}  // namespace vrsim
