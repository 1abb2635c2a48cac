#ifndef SKOROKHOD_EQUIVALENCE_HPP
#define SKOROKHOD_EQUIVALENCE_HPP

#include "skorokhod/metric.hpp"
#include "skorokhod/turbo.hpp"

namespace skorokhod {

enum class Equivalence { equivalent, not_equivalent, unknown };

inline const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::not_equivalent: return "not-equivalent";
    case Equivalence::unknown: return "unknown";
  }
  return "?";
}

struct EquivalenceReport {
  Equivalence decision = Equivalence::unknown;
  bool canonical_match = false;
  /// Distance bounds; only filled when the canonical forms differ.
  double lower = 0.0;
  double upper = 0.0;
};

/// Sound three-valued test. Equal canonical forms imply zero distance; a
/// certified positive lower bound rules it out; everything else is unknown.
inline EquivalenceReport is_equivalent(const Turbofunction& x, const Turbofunction& y,
                                       double threshold = 1e-7) {
  EquivalenceReport r;
  if (canonical_forms_equal(canonicalize(x), canonicalize(y))) {
    r.decision = Equivalence::equivalent;
    r.canonical_match = true;
    return r;
  }
  const auto cert = rho_plus_bounds(x, y, threshold / 10.0);
  r.lower = cert.lower;
  r.upper = cert.upper;
  r.decision = cert.lower > threshold ? Equivalence::not_equivalent : Equivalence::unknown;
  return r;
}

}  // namespace skorokhod

#endif  // SKOROKHOD_EQUIVALENCE_HPP
