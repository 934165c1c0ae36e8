// Command line front end: runs k-fold uplink/prediction experiments and
// generates synthetic datasets. Every flag can also be set through an
// environment variable named VRSIM_<FLAG> (dashes as underscores).

#include <CLI11.hpp>
#include <cctype>
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "vrsim/errors.hpp"
#include "vrsim/experiment.hpp"
#include "vrsim/report.hpp"
#include "vrsim/serialize.hpp"
#include "vrsim/synth.hpp"
#include "vrsim/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

std::string env_name(std::string flag) {
  for (char& c : flag) c = c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return "VRSIM_" + flag;
}

// Adds the option with its matching VRSIM_* environment fallback.
template <typename OptFn>
auto with_env(OptFn* opt, const std::string& long_flag) {
  return opt->envname(env_name(long_flag));
}

std::vector<vrsim::Axis> parse_axes(const std::string& s) {
  std::vector<vrsim::Axis> dims;
  for (char c : s) {
    switch (std::tolower(c)) {
      case 'x': dims.push_back(vrsim::Axis::X); break;
      case 'y': dims.push_back(vrsim::Axis::Y); break;
      case 'z': dims.push_back(vrsim::Axis::Z); break;
      default:
        throw vrsim::ConfigError("unknown axis '" + std::string(1, c) + "'");
    }
  }
  return dims;
}

struct CliSettings {
  vrsim::ExperimentConfig cfg;
  std::string axes = "y";
  std::string out_dir = "out";
  int t_th_override = -1;
  bool synthetic_flag = false;
};

void add_run_options(CLI::App& app, CliSettings& s) {
  auto& cfg = s.cfg;
  with_env(app.add_option("--data", cfg.data_path,
                          "CSV dataset (video_id,user_id,slot,x_deg,y_deg,z_deg)"),
           "data");
  with_env(app.add_flag("--synthetic", s.synthetic_flag,
                        "use the built-in generator instead of --data"),
           "synthetic");

  std::map<std::string, vrsim::PredictorKind> kinds{
      {"lr", vrsim::PredictorKind::Lr},
      {"nn", vrsim::PredictorKind::Mlp},
      {"lstm", vrsim::PredictorKind::Lstm},
      {"gru", vrsim::PredictorKind::Gru}};
  with_env(app.add_option("--predictor", cfg.predictor, "prediction model")
               ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case)),
           "predictor");
  with_env(app.add_option("--order", cfg.lr_order, "polynomial order for lr"),
           "order");
  with_env(app.add_option("--mlp-hidden", cfg.mlp_hidden,
                          "hidden layer sizes for nn")
               ->delimiter(','),
           "mlp-hidden");
  with_env(app.add_option("--rnn-hidden", cfg.rnn_hidden,
                          "hidden units for lstm/gru"),
           "rnn-hidden");
  with_env(app.add_option("--learning-rate", cfg.learning_rate, "SGD step"),
           "learning-rate");
  with_env(app.add_option("--epochs", cfg.epochs, "offline training epochs"),
           "epochs");

  with_env(app.add_option("--window", cfg.window.t_w, "observed slots per example"),
           "window");
  with_env(app.add_option("--horizon", cfg.window.d, "slots predicted ahead"),
           "horizon");
  with_env(app.add_option("--axes", s.axes, "predicted axes, e.g. y or xyz"),
           "axes");
  with_env(app.add_flag("--joint", cfg.joint_input,
                        "feed all selected axes into every model"),
           "joint");
  std::map<std::string, vrsim::Imputation> imps{
      {"hold", vrsim::Imputation::Hold},
      {"interpolate", vrsim::Imputation::Interpolate}};
  with_env(app.add_option("--impute", cfg.imputation, "gap filling policy")
               ->transform(CLI::CheckedTransformer(imps, CLI::ignore_case)),
           "impute");

  std::map<std::string, vrsim::Regime> regimes{
      {"per-video", vrsim::Regime::PerVideo},
      {"all-videos", vrsim::Regime::AllVideos}};
  with_env(app.add_option("--regime", cfg.plan.regime, "cross validation regime")
               ->transform(CLI::CheckedTransformer(regimes, CLI::ignore_case)),
           "regime");
  with_env(app.add_option("--kcross", cfg.plan.k_cross, "number of folds"),
           "kcross");
  with_env(app.add_option("--train-user-limit", cfg.train_user_limit,
                          "cap on training traces (0 = all)"),
           "train-user-limit");

  std::map<std::string, vrsim::Scheme> schemes{
      {"proactive", vrsim::Scheme::Proactive},
      {"single-shot", vrsim::Scheme::SingleShot},
      {"genie", vrsim::Scheme::Genie}};
  with_env(app.add_option("--scheme", cfg.retrans.scheme, "uplink delivery scheme")
               ->transform(CLI::CheckedTransformer(schemes, CLI::ignore_case)),
           "scheme");
  with_env(app.add_option("--kre", cfg.retrans.k_re, "repetitions per round"),
           "kre");
  with_env(app.add_option("--t-th", s.t_th_override,
                          "latency budget in TTIs (default 2*(kre+3))"),
           "t-th");
  with_env(app.add_option("--tti", cfg.retrans.tti_s, "TTI length in seconds"),
           "tti");

  with_env(app.add_option("--k-vr", cfg.k_vr, "simultaneous headsets"), "k-vr");
  with_env(app.add_option("--antennas", cfg.channel.antennas,
                          "base station antennas"),
           "antennas");
  with_env(app.add_option("--alpha", cfg.channel.path_loss_exp,
                          "path loss exponent"),
           "alpha");
  with_env(app.add_option("--noise-dbm", cfg.channel.noise_dbm, "noise power"),
           "noise-dbm");
  with_env(app.add_option("--tx-dbm", cfg.channel.tx_power_dbm,
                          "headset transmit power"),
           "tx-dbm");
  with_env(app.add_option("--bandwidth-hz", cfg.channel.bandwidth_hz,
                          "uplink bandwidth"),
           "bandwidth-hz");
  with_env(app.add_option("--rth-bps", cfg.channel.rate_threshold_bps,
                          "required uplink rate"),
           "rth-bps");
  with_env(app.add_option("--side-m", cfg.channel.side_m, "service area side"),
           "side-m");

  with_env(app.add_option("--videos", cfg.synth.n_videos, "synthetic videos"),
           "videos");
  with_env(app.add_option("--users-per-video", cfg.synth.users_per_video,
                          "synthetic users per video"),
           "users-per-video");
  with_env(app.add_option("--t-tot", cfg.synth.t_tot, "synthetic slots per trace"),
           "t-tot");
  with_env(app.add_option("--shift-at", cfg.synth.shift_at_slot,
                          "synthetic content shift slot (0 = off)"),
           "shift-at");

  with_env(app.add_option("--seed", cfg.seed, "root seed"), "seed");
  with_env(app.add_option("--sweep-window", cfg.sweep_windows,
                          "window lengths to sweep")
               ->delimiter(','),
           "sweep-window");
  with_env(app.add_option("--sweep-users", cfg.sweep_users,
                          "training user counts to sweep")
               ->delimiter(','),
           "sweep-users");
  with_env(app.add_option("--out", s.out_dir, "report directory"), "out");
}

int do_run(CliSettings& s) {
  auto& cfg = s.cfg;
  if (s.synthetic_flag && !cfg.data_path.empty())
    throw vrsim::ConfigError("--data and --synthetic are mutually exclusive");
  cfg.use_synthetic = cfg.data_path.empty();
  cfg.window.dims = parse_axes(s.axes);
  if (s.t_th_override >= 0) cfg.retrans.t_th_ttis = s.t_th_override;
  else cfg.retrans.t_th_ttis = 2 * (cfg.retrans.k_re + 3);

  vrsim::Dataset ds = cfg.use_synthetic
                          ? vrsim::synth_traces(cfg.synth, cfg.seed)
                          : vrsim::parse_traces(cfg.data_path);

  vrsim::RunReport rep = vrsim::run_experiment(ds, cfg);
  vrsim::write_report(rep, s.out_dir);

  std::printf("offline_error_deg2 = %s\n",
              vrsim::format_double(rep.offline_error_deg2).c_str());
  std::printf("online_error_deg2 = %s\n",
              vrsim::format_double(rep.online_error_deg2).c_str());
  std::printf("delivered_fraction = %s\n",
              vrsim::format_double(rep.delivered_fraction).c_str());
  std::printf("report written to %s\n", s.out_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VR head-orientation prediction over a simulated uplink"};
  app.require_subcommand(0, 1);

  CliSettings settings;
  add_run_options(app, settings);

  auto* synth = app.add_subcommand("synth", "write a synthetic dataset as CSV");
  vrsim::SynthConfig synth_cfg;
  std::uint64_t synth_seed = 1;
  std::string synth_out = "traces.csv";
  with_env(synth->add_option("--videos", synth_cfg.n_videos, "videos"), "videos");
  with_env(synth->add_option("--users-per-video", synth_cfg.users_per_video,
                             "users per video"),
           "users-per-video");
  with_env(synth->add_option("--t-tot", synth_cfg.t_tot, "slots per trace"),
           "t-tot");
  with_env(synth->add_option("--shift-at", synth_cfg.shift_at_slot,
                             "content shift slot (0 = off)"),
           "shift-at");
  with_env(synth->add_option("--seed", synth_seed, "root seed"), "seed");
  with_env(synth->add_option("--out", synth_out, "output CSV path"), "out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (synth->parsed()) {
      vrsim::write_traces(vrsim::synth_traces(synth_cfg, synth_seed), synth_out);
      std::printf("wrote %s\n", synth_out.c_str());
      return kExitOk;
    }
    return do_run(settings);
  } catch (const vrsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const vrsim::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
