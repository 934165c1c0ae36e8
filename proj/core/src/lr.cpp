#include <stdexcept>
#include <string>

#include "predictor_detail.hpp"

namespace vrsim::detail {

void check_len(std::span<const double> features, int expected, const char* who) {
  if (static_cast<int>(features.size()) != expected)
    throw std::invalid_argument(std::string(who) + ": got " +
                                std::to_string(features.size()) +
                                " features, expected " +
                                std::to_string(expected));
}

Eigen::VectorXd lr_feature_map(std::span<const double> input, int order) {
  const auto n = static_cast<Eigen::Index>(input.size());
  Eigen::VectorXd g(n * order);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = input[static_cast<std::size_t>(i)];
    double acc = p;
    for (int k = 0; k < order; ++k) {
      g[k * n + i] = acc;
      acc *= p;
    }
  }
  return g;
}

double lr_predict(const LrModel& m, std::span<const double> input) {
  check_len(input, m.input_len, "lr_predict");
  return m.w.dot(lr_feature_map(input, m.order)) + m.b;
}

Eigen::VectorXd lr_gradient(const LrModel& m, std::span<const double> input,
                            double target) {
  check_len(input, m.input_len, "lr_gradient");
  Eigen::VectorXd g = lr_feature_map(input, m.order);
  double err2 = 2.0 * (m.w.dot(g) + m.b - target);
  Eigen::VectorXd grad(m.w.size() + 1);
  grad.head(m.w.size()) = err2 * g;
  grad[m.w.size()] = err2;
  return grad;
}

int lr_param_count(const LrModel& m) { return static_cast<int>(m.w.size()) + 1; }

}  // namespace vrsim::detail
