#pragma once

#include "cylinder.hpp"

#include <cmath>
#include <numbers>

namespace floerloops {

/// Phase in R/Z of the line spanned by (a, b): atan2 / pi reduced mod 1.
inline double line_phase(double a, double b) {
  double t = std::atan2(b, a) / std::numbers::pi;
  return t - std::floor(t);
}

/// Maslov degree of a chord by following the tangent line of the flowed fiber through
/// the isotopy phi_s, s in [0, 1], with `samples` steps. The tangent at time s is
/// (2c w s, 1); its phase starts at the fiber's graded lift 1/2 and is unwrapped step by
/// step. The degree is floor(1/2 - alpha(1)) against the target fiber's lift 1/2.
inline int maslov_rotation_oracle(const CylinderGeometry& g, int weight = 1, int samples = 4096) {
  const double u = boost::multiprecision::cpp_rational(2 * g.c * weight).convert_to<double>();
  double alpha = 0.5;
  double previous = line_phase(0.0, 1.0);
  for (int i = 1; i <= samples; ++i) {
    const double s = static_cast<double>(i) / samples;
    const double phase = line_phase(u * s, 1.0);
    double step = phase - previous;
    step -= std::round(step);
    alpha += step;
    previous = phase;
  }
  return static_cast<int>(std::floor(0.5 - alpha));
}

}  // namespace floerloops
