#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vrsim/predictor.hpp"

namespace vrsim {

// Canonical text form: self-describing header (kind and shapes) followed by
// one parameter per line, shortest round-trip formatting. Loading the string
// reproduces the model bit for bit.
std::string model_to_string(const PredictorModel& model);

// Throws DataError with a line reference on malformed input.
PredictorModel model_from_string(std::string_view text,
                                 std::string_view origin = "<string>");

void save_model(const PredictorModel& model, const std::filesystem::path& path);
PredictorModel load_model(const std::filesystem::path& path);

// Shortest decimal form of a double that parses back to the same bits.
std::string format_double(double v);

}  // namespace vrsim
