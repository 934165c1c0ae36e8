#pragma once

#include <span>
#include <vector>

namespace vrsim {

// Mean of squared wrapped angle differences, deg^2.
// Throws std::invalid_argument on length mismatch or empty input.
double mse_deg2(std::span<const double> predicted_deg,
                std::span<const double> actual_deg);

// Squared wrapped errors for one evaluated session: one row per scored slot,
// one column per predicted axis.
struct ErrorRecord {
  std::vector<std::vector<double>> sq_err_deg2;

  double mean_sq_deg2() const;   // mean over slots and axes
  double mean_abs_deg() const;   // mean wrapped absolute error
};

// Mean squared error over every slot of every record. Records must agree in
// shape; throws std::invalid_argument otherwise or when empty.
double average_prediction_error(std::span<const ErrorRecord> records);

// Mean wrapped absolute error over the records, divided by the 360 degree
// span, so 0 is perfect and 0.5 is the worst possible.
double normalized_error(std::span<const ErrorRecord> records);

}  // namespace vrsim
