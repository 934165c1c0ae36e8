#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vrsim/predictor.hpp"
#include "vrsim/window.hpp"

namespace vrsim {

// Offline stochastic gradient descent: per-example updates, examples
// reshuffled every epoch from the seed-derived stream. Features and targets
// are normalized at the model boundary.
struct TrainConfig {
  int epochs = 20;
  std::uint64_t seed = 1;
};

struct OfflineResult {
  PredictorModel model;
  // Mean pre-update loss per epoch, in normalized units.
  std::vector<double> epoch_loss;
};

// Throws std::invalid_argument on an empty dataset or epochs < 1.
// One epoch over one example is exactly one sgd_update call.
OfflineResult train_offline(PredictorModel model,
                            std::span<const WindowedExample> examples,
                            const TrainConfig& cfg);

std::vector<double> normalize_features(std::span<const double> features_deg);

// Compares the analytic gradient of a randomly parameterized model on a
// random example against central finite differences (eps = 1e-5). Returns the
// worst relative component error.
double grad_check(PredictorKind kind, std::uint64_t seed);

}  // namespace vrsim
