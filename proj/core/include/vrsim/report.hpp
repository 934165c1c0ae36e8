#pragma once

#include <filesystem>
#include <string>

#include "vrsim/experiment.hpp"

namespace vrsim {

// Key = value text: full config echo plus headline numbers. Byte-stable for
// identical runs.
std::string report_to_text(const RunReport& rep);

// Writes report.txt and the plot CSVs (per_slot_error.csv, latency_hist.csv,
// epoch_loss.csv, and the sweep tables when swept) into dir, creating it if
// needed.
void write_report(const RunReport& rep, const std::filesystem::path& dir);

}  // namespace vrsim
