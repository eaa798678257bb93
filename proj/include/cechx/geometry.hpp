#pragma once

#include <span>
#include <vector>

namespace cechx {

using Vec = std::vector<double>;

// Largest ambient dimension supported by the exact enclosing-ball solver and
// the corner enumeration of cell unions.
inline constexpr int kMaxDim = 12;

// Relative tolerance used for all containment tests.
inline constexpr double kGeomTol = 1e-9;

struct Point {
  Vec coords;
  int id = 0;

  int dim() const { return static_cast<int>(coords.size()); }
};

using PointCloud = std::vector<Point>;

struct Ball {
  Vec center;
  double radius = 0.0;

  bool contains(std::span<const double> x, double rel_tol = kGeomTol) const;
};

struct MebResult {
  Ball ball;
  // Ids (or input positions, for the coordinate overload) of the points that
  // define the ball. At most d+1 entries, all on the boundary.
  std::vector<int> support;
};

double distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

// Exact minimum enclosing ball by move-to-front recursion on support sets.
// Throws InvalidInput on empty input, non-finite coordinates, mixed
// dimensions or d > kMaxDim.
MebResult meb(std::span<const Point> points);

// Same, for bare coordinate vectors; support holds input positions.
MebResult meb_of_coords(std::span<const Vec> points);

// Radius only; avoids building a MebResult in hot loops.
double meb_radius(std::span<const Vec> points);
// `positions` index into `points` (not point ids).
double meb_radius(std::span<const Point> points, std::span<const int> positions);

double diam(std::span<const Point> points);

Ball expand(const Ball& ball, double factor);

}  // namespace cechx
