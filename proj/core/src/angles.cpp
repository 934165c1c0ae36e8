#include "vrsim/angles.hpp"

#include <cmath>
#include <stdexcept>

namespace vrsim {

bool angle_in_range(double deg) {
  return std::isfinite(deg) && deg > -180.0 && deg <= 180.0;
}

double wrap_angle(double deg) {
  if (!std::isfinite(deg)) throw std::invalid_argument("wrap_angle: non-finite");
  // ceil keeps the +180 boundary: 180 stays 180, -180 wraps to 180.
  double w = deg - kAngleSpanDeg * std::ceil((deg - 180.0) / kAngleSpanDeg);
  if (w <= -180.0) w += kAngleSpanDeg;  // guard against rounding at the seam
  return w;
}

double wrapped_angle_error(double a_deg, double b_deg) {
  double d = std::fabs(a_deg - b_deg);
  return d <= 180.0 ? d : kAngleSpanDeg - d;
}

double normalize_angle(double deg) {
  if (!angle_in_range(deg))
    throw std::invalid_argument("normalize_angle: angle off (-180, 180]");
  return (deg + 180.0) / kAngleSpanDeg;
}

double denormalize_angle(double unit) {
  if (!std::isfinite(unit))
    throw std::invalid_argument("denormalize_angle: non-finite");
  return unit * kAngleSpanDeg - 180.0;
}

}  // namespace vrsim
