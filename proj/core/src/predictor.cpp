#include "vrsim/predictor.hpp"

#include <cmath>
#include <stdexcept>

#include "predictor_detail.hpp"

namespace vrsim {

namespace {

using detail::check_len;

double glorot_bound(Eigen::Index fan_in, Eigen::Index fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

// Fill order is row-major so results do not depend on Eigen's storage layout.
void fill_glorot(Eigen::MatrixXd& w, Rng& rng) {
  double s = glorot_bound(w.cols(), w.rows());
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.uniform(-s, s);
}

void read_row_major(const Eigen::VectorXd& src, Eigen::Index at,
                    Eigen::MatrixXd& dst) {
  for (Eigen::Index r = 0; r < dst.rows(); ++r)
    for (Eigen::Index c = 0; c < dst.cols(); ++c)
      dst(r, c) = src[at + r * dst.cols() + c];
}

void write_row_major(Eigen::VectorXd& dst, Eigen::Index at,
                     const Eigen::MatrixXd& src) {
  for (Eigen::Index r = 0; r < src.rows(); ++r)
    for (Eigen::Index c = 0; c < src.cols(); ++c)
      dst[at + r * src.cols() + c] = src(r, c);
}

}  // namespace

const char* predictor_name(PredictorKind k) {
  switch (k) {
    case PredictorKind::Lr: return "lr";
    case PredictorKind::Mlp: return "nn";
    case PredictorKind::Lstm: return "lstm";
    case PredictorKind::Gru: return "gru";
  }
  return "?";
}

LrModel make_lr(int input_len, int order, double learning_rate) {
  if (input_len < 1 || order < 1)
    throw std::invalid_argument("make_lr: input_len and order must be positive");
  LrModel m;
  m.input_len = input_len;
  m.order = order;
  m.w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(input_len) * order);
  m.b = 0.0;
  m.learning_rate = learning_rate;
  return m;
}

MlpModel make_mlp(int input_len, const std::vector<int>& hidden_sizes,
                  double learning_rate, Rng& init) {
  if (input_len < 1) throw std::invalid_argument("make_mlp: input_len < 1");
  MlpModel m;
  m.learning_rate = learning_rate;
  int below = input_len;
  for (int h : hidden_sizes) {
    if (h < 1) throw std::invalid_argument("make_mlp: empty hidden layer");
    m.weights.emplace_back(h, below);
    m.biases.emplace_back(Eigen::VectorXd::Zero(h));
    fill_glorot(m.weights.back(), init);
    below = h;
  }
  m.weights.emplace_back(1, below);
  m.biases.emplace_back(Eigen::VectorXd::Zero(1));
  fill_glorot(m.weights.back(), init);
  return m;
}

RnnModel make_rnn(CellKind cell, int input_width, int hidden,
                  double learning_rate, double grad_clip, Rng& init) {
  if (input_width < 1 || hidden < 1)
    throw std::invalid_argument("make_rnn: sizes must be positive");
  RnnModel m;
  m.cell = cell;
  m.hidden = hidden;
  m.input_width = input_width;
  m.learning_rate = learning_rate;
  m.grad_clip = grad_clip;
  const int gates = cell == CellKind::Lstm ? 4 : 3;
  for (int g = 0; g < gates; ++g) {
    m.wx.emplace_back(hidden, input_width);
    fill_glorot(m.wx.back(), init);
    m.wh.emplace_back(hidden, hidden);
    fill_glorot(m.wh.back(), init);
    m.bias.emplace_back(Eigen::VectorXd::Zero(hidden));
  }
  m.w_out = Eigen::VectorXd(hidden);
  double s = glorot_bound(hidden, 1);
  for (Eigen::Index i = 0; i < m.w_out.size(); ++i)
    m.w_out[i] = init.uniform(-s, s);
  m.b_out = 0.0;
  return m;
}

PredictorModel make_predictor(const PredictorHyper& hyper, Rng& init) {
  switch (hyper.kind) {
    case PredictorKind::Lr:
      return make_lr(hyper.input_len * hyper.input_width, hyper.order,
                     hyper.learning_rate);
    case PredictorKind::Mlp:
      return make_mlp(hyper.input_len * hyper.input_width, hyper.mlp_hidden,
                      hyper.learning_rate, init);
    case PredictorKind::Lstm:
      return make_rnn(CellKind::Lstm, hyper.input_width, hyper.rnn_hidden,
                      hyper.learning_rate, hyper.grad_clip, init);
    case PredictorKind::Gru:
      return make_rnn(CellKind::Gru, hyper.input_width, hyper.rnn_hidden,
                      hyper.learning_rate, hyper.grad_clip, init);
  }
  throw std::invalid_argument("make_predictor: unknown kind");
}

PredictorKind kind_of(const PredictorModel& model) {
  if (std::holds_alternative<LrModel>(model)) return PredictorKind::Lr;
  if (std::holds_alternative<MlpModel>(model)) return PredictorKind::Mlp;
  return std::get<RnnModel>(model).cell == CellKind::Lstm ? PredictorKind::Lstm
                                                          : PredictorKind::Gru;
}

double learning_rate_of(const PredictorModel& model) {
  return std::visit([](const auto& m) { return m.learning_rate; }, model);
}

void set_learning_rate(PredictorModel& model, double lr) {
  std::visit([lr](auto& m) { m.learning_rate = lr; }, model);
}

int feature_len(const PredictorModel& model) {
  if (const auto* lr = std::get_if<LrModel>(&model)) return lr->input_len;
  if (const auto* mlp = std::get_if<MlpModel>(&model)) return mlp->input_len();
  return -1;  // any multiple of input_width; see predict
}

double predict(const PredictorModel& model, std::span<const double> features) {
  if (const auto* lr = std::get_if<LrModel>(&model))
    return detail::lr_predict(*lr, features);
  if (const auto* mlp = std::get_if<MlpModel>(&model))
    return detail::mlp_predict(*mlp, features);
  return detail::rnn_predict(std::get<RnnModel>(model), features);
}

double loss(const PredictorModel& model, std::span<const double> features,
            double target) {
  double e = predict(model, features) - target;
  return e * e;
}

Eigen::VectorXd pack_params(const PredictorModel& model) {
  if (const auto* lr = std::get_if<LrModel>(&model)) {
    Eigen::VectorXd p(detail::lr_param_count(*lr));
    p.head(lr->w.size()) = lr->w;
    p[lr->w.size()] = lr->b;
    return p;
  }
  if (const auto* mlp = std::get_if<MlpModel>(&model)) {
    Eigen::VectorXd p(detail::mlp_param_count(*mlp));
    Eigen::Index at = 0;
    for (std::size_t l = 0; l < mlp->weights.size(); ++l) {
      write_row_major(p, at, mlp->weights[l]);
      at += mlp->weights[l].size();
      p.segment(at, mlp->biases[l].size()) = mlp->biases[l];
      at += mlp->biases[l].size();
    }
    return p;
  }
  const auto& rnn = std::get<RnnModel>(model);
  Eigen::VectorXd p(detail::rnn_param_count(rnn));
  Eigen::Index at = 0;
  for (std::size_t g = 0; g < rnn.wx.size(); ++g) {
    write_row_major(p, at, rnn.wx[g]);
    at += rnn.wx[g].size();
    write_row_major(p, at, rnn.wh[g]);
    at += rnn.wh[g].size();
    p.segment(at, rnn.bias[g].size()) = rnn.bias[g];
    at += rnn.bias[g].size();
  }
  p.segment(at, rnn.w_out.size()) = rnn.w_out;
  at += rnn.w_out.size();
  p[at] = rnn.b_out;
  return p;
}

PredictorModel with_params(const PredictorModel& model,
                           const Eigen::VectorXd& params) {
  PredictorModel out = model;
  if (auto* lr = std::get_if<LrModel>(&out)) {
    if (params.size() != detail::lr_param_count(*lr))
      throw std::invalid_argument("with_params: size mismatch");
    lr->w = params.head(lr->w.size());
    lr->b = params[lr->w.size()];
    return out;
  }
  if (auto* mlp = std::get_if<MlpModel>(&out)) {
    if (params.size() != detail::mlp_param_count(*mlp))
      throw std::invalid_argument("with_params: size mismatch");
    Eigen::Index at = 0;
    for (std::size_t l = 0; l < mlp->weights.size(); ++l) {
      read_row_major(params, at, mlp->weights[l]);
      at += mlp->weights[l].size();
      mlp->biases[l] = params.segment(at, mlp->biases[l].size());
      at += mlp->biases[l].size();
    }
    return out;
  }
  auto& rnn = std::get<RnnModel>(out);
  if (params.size() != detail::rnn_param_count(rnn))
    throw std::invalid_argument("with_params: size mismatch");
  Eigen::Index at = 0;
  for (std::size_t g = 0; g < rnn.wx.size(); ++g) {
    read_row_major(params, at, rnn.wx[g]);
    at += rnn.wx[g].size();
    read_row_major(params, at, rnn.wh[g]);
    at += rnn.wh[g].size();
    rnn.bias[g] = params.segment(at, rnn.bias[g].size());
    at += rnn.bias[g].size();
  }
  rnn.w_out = params.segment(at, rnn.w_out.size());
  at += rnn.w_out.size();
  rnn.b_out = params[at];
  return out;
}

Eigen::VectorXd loss_gradient(const PredictorModel& model,
                              std::span<const double> features, double target) {
  if (const auto* lr = std::get_if<LrModel>(&model))
    return detail::lr_gradient(*lr, features, target);
  if (const auto* mlp = std::get_if<MlpModel>(&model))
    return detail::mlp_gradient(*mlp, features, target);
  return detail::rnn_gradient(std::get<RnnModel>(model), features, target);
}

PredictorModel sgd_update(const PredictorModel& model,
                          std::span<const double> features, double target) {
  Eigen::VectorXd grad = loss_gradient(model, features, target);
  if (!grad.allFinite()) return model;  // abort the step, keep the model
  if (const auto* rnn = std::get_if<RnnModel>(&model)) {
    double norm = grad.norm();
    if (norm > rnn->grad_clip) grad *= rnn->grad_clip / norm;
  }
  if (grad.isZero(0.0)) return model;  // exact prediction, bit-identical
  Eigen::VectorXd next = pack_params(model) - learning_rate_of(model) * grad;
  return with_params(model, next);
}

}  // namespace vrsim
