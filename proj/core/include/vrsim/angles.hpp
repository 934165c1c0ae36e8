#pragma once

namespace vrsim {

// Head-orientation angles live on the principal branch (-180, 180] degrees.
inline constexpr double kAngleSpanDeg = 360.0;

bool angle_in_range(double deg);

// Maps any finite angle onto (-180, 180].
double wrap_angle(double deg);

// Shortest angular distance between two in-range angles, in [0, 180].
// Inputs are validated at ingestion, not here.
double wrapped_angle_error(double a_deg, double b_deg);

// (-180, 180] -> [0, 1]. Throws std::invalid_argument off the branch.
double normalize_angle(double deg);

// Affine inverse of normalize_angle, defined for any finite input. Model
// outputs can land outside [0, 1]; callers wrap the result when needed.
double denormalize_angle(double unit);

}  // namespace vrsim
