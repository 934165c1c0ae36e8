#pragma once

#include <Eigen/Dense>
#include <span>

#include "vrsim/predictor.hpp"

namespace vrsim::detail {

inline double relu(double x) { return x > 0.0 ? x : 0.0; }
inline double relu_grad(double x) { return x > 0.0 ? 1.0 : 0.0; }

void check_len(std::span<const double> features, int expected, const char* who);

Eigen::VectorXd lr_feature_map(std::span<const double> input, int order);
double lr_predict(const LrModel& m, std::span<const double> input);
Eigen::VectorXd lr_gradient(const LrModel& m, std::span<const double> input,
                            double target);

double mlp_predict(const MlpModel& m, std::span<const double> input);
Eigen::VectorXd mlp_gradient(const MlpModel& m, std::span<const double> input,
                             double target);

double rnn_predict(const RnnModel& m, std::span<const double> input);
Eigen::VectorXd rnn_gradient(const RnnModel& m, std::span<const double> input,
                             double target);

int lr_param_count(const LrModel& m);
int mlp_param_count(const MlpModel& m);
int rnn_param_count(const RnnModel& m);

}  // namespace vrsim::detail
