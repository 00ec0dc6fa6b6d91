#pragma once

// Ideal hydraulic stroke amplifier: stroke scales up and force scales down by
// the piston-area ratio. No leakage, friction or oil compressibility.

#include "bpsma/error.hpp"

namespace bpsma {

struct HsamParams {
  double factor = 11.8;

  bool operator==(const HsamParams&) const = default;
};

struct StrokeForce {
  double stroke;  // m
  double force;   // N
};

/// (d_upper / d_lower)^2
inline double factor_from_pistons(double d_upper, double d_lower) {
  if (!(d_upper > 0.0) || !(d_lower > 0.0)) {
    throw ConfigError("hsam: piston diameters must be > 0");
  }
  const double ratio = d_upper / d_lower;
  return ratio * ratio;
}

inline void validate(const HsamParams& h) {
  if (!(h.factor >= 1.0)) throw ConfigError("hsam.factor must be >= 1");
}

inline StrokeForce amplify(double stroke, double force, const HsamParams& hsam) {
  validate(hsam);
  return {hsam.factor * stroke, force / hsam.factor};
}

}  // namespace bpsma
