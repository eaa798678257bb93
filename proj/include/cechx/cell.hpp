#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "cechx/geometry.hpp"

namespace cechx {

// Axis-aligned dyadic hypercube prod [index_i * 2^h, (index_i + 1) * 2^h).
// Unused trailing index slots are always zero so comparisons ignore them.
struct Cell {
  int height = 0;
  int dim = 0;
  std::array<std::int64_t, kMaxDim> index{};

  double side() const;
  double diameter() const;
  double lo(int axis) const;
  double hi(int axis) const;
  Vec center() const;
  std::vector<Vec> corners() const;

  // Half-open containment, matching cell_containing().
  bool contains(std::span<const double> x) const;

  friend auto operator<=>(const Cell&, const Cell&) = default;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct CellHash {
  size_t operator()(const Cell& c) const noexcept;
};

struct CellTupleHash {
  size_t operator()(const std::vector<Cell>& cells) const noexcept;
};

// Cell of height h whose half-open box contains x.
Cell cell_containing(std::span<const double> x, int h);

// Ancestor of q at height i >= q.height. Throws InvalidInput otherwise.
Cell qcell(const Cell& q, int i);

// Minimum Euclidean distance between the closed boxes.
double box_distance(const Cell& a, const Cell& b);

// Closed box against closed ball.
bool box_intersects_ball(const Cell& c, const Ball& ball);

// Minimum enclosing ball of the union of solid cells, computed from the 2^d
// corners of every distinct cell.
MebResult meb_of_cells(std::span<const Cell> cells);
double rad_of_cells(std::span<const Cell> cells);

}  // namespace cechx
