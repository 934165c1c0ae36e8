#include <vector>

#include "predictor_detail.hpp"

namespace vrsim::detail {

namespace {

struct MlpTape {
  std::vector<Eigen::VectorXd> pre;   // pre-activations per layer
  std::vector<Eigen::VectorXd> post;  // activations per layer
};

MlpTape mlp_forward(const MlpModel& m, std::span<const double> input) {
  check_len(input, m.input_len(), "mlp forward");
  MlpTape tape;
  Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(
      input.data(), static_cast<Eigen::Index>(input.size()));
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    Eigen::VectorXd a = m.weights[l] * h + m.biases[l];
    h = a.unaryExpr([](double v) { return relu(v); });
    tape.pre.push_back(std::move(a));
    tape.post.push_back(h);
  }
  return tape;
}

}  // namespace

double mlp_predict(const MlpModel& m, std::span<const double> input) {
  return mlp_forward(m, input).post.back()[0];
}

Eigen::VectorXd mlp_gradient(const MlpModel& m, std::span<const double> input,
                             double target) {
  MlpTape tape = mlp_forward(m, input);
  const auto layers = m.weights.size();

  Eigen::VectorXd grad(mlp_param_count(m));
  // delta starts at the output and walks back through the ReLU layers.
  Eigen::VectorXd delta(1);
  delta[0] = 2.0 * (tape.post.back()[0] - target) * relu_grad(tape.pre.back()[0]);

  // Gradient segments are laid out front to back; compute offsets first.
  std::vector<Eigen::Index> offset(layers);
  Eigen::Index pos = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    offset[l] = pos;
    pos += m.weights[l].size() + m.biases[l].size();
  }

  for (std::size_t l = layers; l-- > 0;) {
    Eigen::VectorXd below =
        l == 0 ? Eigen::Map<const Eigen::VectorXd>(
                     input.data(), static_cast<Eigen::Index>(input.size()))
                     .eval()
               : tape.post[l - 1];
    Eigen::MatrixXd dw = delta * below.transpose();
    const Eigen::Index rows = dw.rows(), cols = dw.cols();
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        grad[offset[l] + r * cols + c] = dw(r, c);
    grad.segment(offset[l] + dw.size(), delta.size()) = delta;
    if (l > 0) {
      delta = (m.weights[l].transpose() * delta).eval();
      for (Eigen::Index i = 0; i < delta.size(); ++i)
        delta[i] *= relu_grad(tape.pre[l - 1][i]);
    }
  }
  return grad;
}

int mlp_param_count(const MlpModel& m) {
  Eigen::Index n = 0;
  for (std::size_t l = 0; l < m.weights.size(); ++l)
    n += m.weights[l].size() + m.biases[l].size();
  return static_cast<int>(n);
}

}  // namespace vrsim::detail
