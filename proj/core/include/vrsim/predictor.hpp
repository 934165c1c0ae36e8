#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>
#include <vector>

#include "vrsim/rng.hpp"

namespace vrsim {

enum class PredictorKind { Lr, Mlp, Lstm, Gru };
enum class CellKind { Lstm, Gru };

const char* predictor_name(PredictorKind k);

// Polynomial regressor: features are the element-wise powers 1..order of the
// normalized window, prediction w.g + b.
struct LrModel {
  int input_len = 10;
  int order = 15;
  Eigen::VectorXd w;  // order * input_len, power-major
  double b = 0.0;
  double learning_rate = 1e-3;
};

// Fully connected net, ReLU on every layer including the output.
struct MlpModel {
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: rows out, cols in
  std::vector<Eigen::VectorXd> biases;
  double learning_rate = 1e-3;

  int input_len() const { return static_cast<int>(weights.front().cols()); }
};

// Single recurrent layer (LSTM or GRU) plus a ReLU readout of the final
// hidden state. Gate order: LSTM {input, forget, output, candidate},
// GRU {update, reset, candidate}. The GRU update gate keeps the previous
// hidden state: h = z.h_prev + (1-z).cand, so forcing z to 1 freezes h.
struct RnnModel {
  CellKind cell = CellKind::Gru;
  int hidden = 12;
  int input_width = 1;  // values consumed per time step
  std::vector<Eigen::MatrixXd> wx;  // per gate: hidden x input_width
  std::vector<Eigen::MatrixXd> wh;  // per gate: hidden x hidden
  std::vector<Eigen::VectorXd> bias;
  Eigen::VectorXd w_out;  // hidden
  double b_out = 0.0;
  double learning_rate = 1e-3;
  double grad_clip = 5.0;  // global L2 norm cap on the update direction
};

using PredictorModel = std::variant<LrModel, MlpModel, RnnModel>;

struct PredictorHyper {
  PredictorKind kind = PredictorKind::Gru;
  int input_len = 10;   // window slots in the flattened feature vector
  int input_width = 1;  // axes interleaved per slot
  int order = 15;
  std::vector<int> mlp_hidden{12, 10};
  int rnn_hidden = 12;
  double learning_rate = 1e-3;
  double grad_clip = 5.0;
};

LrModel make_lr(int input_len, int order, double learning_rate);
MlpModel make_mlp(int input_len, const std::vector<int>& hidden_sizes,
                  double learning_rate, Rng& init);
RnnModel make_rnn(CellKind cell, int input_width, int hidden,
                  double learning_rate, double grad_clip, Rng& init);

// Weight matrices start Glorot-uniform, biases zero; LR starts all-zero.
// Initialization draws are consumed in declaration order, row-major.
PredictorModel make_predictor(const PredictorHyper& hyper, Rng& init);

PredictorKind kind_of(const PredictorModel& model);
double learning_rate_of(const PredictorModel& model);
void set_learning_rate(PredictorModel& model, double lr);

// Expected length of the flattened, normalized feature vector.
int feature_len(const PredictorModel& model);

// Forward pass on normalized features. Throws std::invalid_argument on a
// length mismatch.
double predict(const PredictorModel& model, std::span<const double> features);

double loss(const PredictorModel& model, std::span<const double> features,
            double target);

// All trainable parameters as one flat vector, in a fixed documented order:
// LR [w, b]; MLP per layer [W row-major, b]; RNN per gate
// [Wx row-major, Wh row-major, b], then [w_out, b_out].
Eigen::VectorXd pack_params(const PredictorModel& model);

// Same model shape with parameters replaced from a flat vector.
PredictorModel with_params(const PredictorModel& model,
                           const Eigen::VectorXd& params);

// Analytic gradient of the squared error, packed like pack_params. Unclipped.
Eigen::VectorXd loss_gradient(const PredictorModel& model,
                              std::span<const double> features, double target);

// One stochastic gradient step: theta - lr * grad, where grad is norm-clipped
// for recurrent models. Pure: the input model is untouched. A zero-error
// example returns bit-identical parameters; a non-finite gradient aborts the
// step and returns the model unchanged.
PredictorModel sgd_update(const PredictorModel& model,
                          std::span<const double> features, double target);

}  // namespace vrsim
