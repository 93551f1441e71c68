#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace qalg {

// Extended distance in [0, +inf]. IEEE infinity is the point at infinity;
// addition and max absorb it as required, so no wrapper type is needed.
using Distance = double;

inline constexpr Distance kInfinity = std::numeric_limits<Distance>::infinity();

// Default absolute tolerance for comparisons of computed distances.
inline constexpr Distance kTolerance = 1e-12;

// Minimal margin for a strict inequality to count as a genuine witness.
inline constexpr Distance kStrictMargin = 1e-9;

inline bool is_finite(Distance d) { return d != kInfinity; }

inline bool is_valid_distance(Distance d) { return !std::isnan(d) && d >= 0.0; }

inline bool leq(Distance a, Distance b, Distance tol = kTolerance) {
  if (b == kInfinity) return true;
  if (a == kInfinity) return false;
  return a <= b + tol;
}

inline bool approx_equal(Distance a, Distance b, Distance tol = kTolerance) {
  if (a == kInfinity || b == kInfinity) return a == b;
  return std::fabs(a - b) <= tol;
}

// Shortest round-trip text ("inf" for infinity).
std::string format_distance(Distance d);

// Parses a number or "inf"/"infinity". Throws ValidationError.
Distance parse_distance(const std::string& text);

}  // namespace qalg
