#include "vrsim/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vrsim/angles.hpp"

namespace vrsim {

std::vector<double> normalize_features(std::span<const double> features_deg) {
  std::vector<double> out(features_deg.size());
  for (std::size_t i = 0; i < features_deg.size(); ++i)
    out[i] = normalize_angle(features_deg[i]);
  return out;
}

OfflineResult train_offline(PredictorModel model,
                            std::span<const WindowedExample> examples,
                            const TrainConfig& cfg) {
  if (examples.empty())
    throw std::invalid_argument("train_offline: no examples");
  if (cfg.epochs < 1) throw std::invalid_argument("train_offline: epochs < 1");

  // Normalize once; training touches every example many times.
  std::vector<std::vector<double>> feats(examples.size());
  std::vector<double> targets(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    feats[i] = normalize_features(examples[i].features_deg);
    targets[i] = normalize_angle(examples[i].target_deg);
  }

  Rng order_rng = make_stream(cfg.seed, "shuffle");
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  OfflineResult res{std::move(model), {}};
  res.epoch_loss.reserve(static_cast<std::size_t>(cfg.epochs));
  for (int e = 0; e < cfg.epochs; ++e) {
    shuffle(order, order_rng);
    double acc = 0.0;
    for (std::size_t idx : order) {
      acc += loss(res.model, feats[idx], targets[idx]);
      res.model = sgd_update(res.model, feats[idx], targets[idx]);
    }
    res.epoch_loss.push_back(acc / static_cast<double>(examples.size()));
  }
  return res;
}

double grad_check(PredictorKind kind, std::uint64_t seed) {
  Rng rng = make_stream(seed, "gradcheck");
  PredictorHyper hyper;
  hyper.kind = kind;
  hyper.input_len = 6;
  hyper.order = 3;
  hyper.mlp_hidden = {5, 4};
  hyper.rnn_hidden = 5;
  PredictorModel model = make_predictor(hyper, rng);

  // Random nonzero parameters everywhere so no gradient path is trivially
  // zero; shifted off the ReLU kinks.
  Eigen::VectorXd p = pack_params(model);
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = rng.uniform(-0.8, 0.8);
  model = with_params(model, p);

  std::vector<double> input(static_cast<std::size_t>(hyper.input_len));
  for (auto& v : input) v = rng.uniform(0.05, 0.95);
  double target = rng.uniform(0.05, 0.95);

  const Eigen::VectorXd analytic = loss_gradient(model, input, target);
  constexpr double eps = 1e-5;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Eigen::VectorXd hi = p, lo = p;
    hi[i] += eps;
    lo[i] -= eps;
    double numeric = (loss(with_params(model, hi), input, target) -
                      loss(with_params(model, lo), input, target)) /
                     (2.0 * eps);
    double denom = std::max({std::fabs(analytic[i]), std::fabs(numeric), 1e-4});
    worst = std::max(worst, std::fabs(analytic[i] - numeric) / denom);
  }
  return worst;
}

}  // namespace vrsim
