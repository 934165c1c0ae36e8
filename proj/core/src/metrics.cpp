#include "vrsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "vrsim/angles.hpp"

namespace vrsim {

double mse_deg2(std::span<const double> predicted_deg,
                std::span<const double> actual_deg) {
  if (predicted_deg.size() != actual_deg.size())
    throw std::invalid_argument("mse_deg2: length mismatch");
  if (predicted_deg.empty()) throw std::invalid_argument("mse_deg2: empty");
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted_deg.size(); ++i) {
    double e = wrapped_angle_error(predicted_deg[i], actual_deg[i]);
    acc += e * e;
  }
  return acc / static_cast<double>(predicted_deg.size());
}

double ErrorRecord::mean_sq_deg2() const {
  if (sq_err_deg2.empty()) throw std::invalid_argument("ErrorRecord: empty");
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& row : sq_err_deg2) {
    if (row.empty()) throw std::invalid_argument("ErrorRecord: empty row");
    for (double v : row) acc += v;
    n += row.size();
  }
  return acc / static_cast<double>(n);
}

double ErrorRecord::mean_abs_deg() const {
  if (sq_err_deg2.empty()) throw std::invalid_argument("ErrorRecord: empty");
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& row : sq_err_deg2) {
    if (row.empty()) throw std::invalid_argument("ErrorRecord: empty row");
    for (double v : row) acc += std::sqrt(v);
    n += row.size();
  }
  return acc / static_cast<double>(n);
}

namespace {

void check_shape(std::span<const ErrorRecord> records) {
  if (records.empty())
    throw std::invalid_argument("no error records to aggregate");
  std::size_t slots = records.front().sq_err_deg2.size();
  for (const auto& r : records)
    if (r.sq_err_deg2.size() != slots || slots == 0)
      throw std::invalid_argument("error records disagree in slot count");
}

}  // namespace

double average_prediction_error(std::span<const ErrorRecord> records) {
  check_shape(records);
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    for (const auto& row : r.sq_err_deg2) {
      for (double v : row) acc += v;
      n += row.size();
    }
  }
  return acc / static_cast<double>(n);
}

double normalized_error(std::span<const ErrorRecord> records) {
  check_shape(records);
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    for (const auto& row : r.sq_err_deg2) {
      for (double v : row) acc += std::sqrt(v);
      n += row.size();
    }
  }
  return acc / kAngleSpanDeg / static_cast<double>(n);
}

}  // namespace vrsim
