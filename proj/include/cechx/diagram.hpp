#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cechx/homology.hpp"

namespace cechx {

struct ApproxReport {
  double c = 1.0;
  bool matched = false;
  // (index in first, index in second); -1 marks a point sent to the diagonal.
  std::vector<std::pair<int, int>> matching;
  // A point left without any admissible partner, when one exists.
  std::optional<PersistencePoint> violator;
};

// Perfect matching in which every point (x, y) goes into the box
// [x/c, cx] x [y/c, cy] of its partner or, when y <= c^2 x, to the diagonal.
// Birth 0 pairs only with birth 0 and infinite death only with infinite death.
// Throws InvalidInput for c < 1.
ApproxReport is_c_approximation(const std::vector<PersistencePoint>& d1, const std::vector<PersistencePoint>& d2,
                                double c);

// log of the least c for which the diagrams c-approximate each other; +inf if
// none exists (for example differing numbers of essential classes).
double bottleneck_log(const std::vector<PersistencePoint>& d1, const std::vector<PersistencePoint>& d2);

// Maximum over homology dimensions present in either diagram.
double bottleneck_log(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

}  // namespace cechx
