#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vrsim/trace.hpp"

namespace vrsim {

// CSV with header video_id,user_id,slot,x_deg,y_deg,z_deg. The writer emits a
// canonical form (sorted by video, user, slot; shortest round-trip numbers),
// so write(parse(file)) of a canonical file is byte-identical.
std::string traces_to_csv(const Dataset& ds);

// Accepts rows in any order, regroups and validates. Throws DataError with
// file and line on malformed input.
Dataset traces_from_csv(std::string_view text,
                        std::string_view origin = "<string>");

void write_traces(const Dataset& ds, const std::filesystem::path& path);
Dataset parse_traces(const std::filesystem::path& path);

}  // namespace vrsim
