#pragma once

#include <climits>
#include <optional>
#include <vector>

#include "cechx/cell.hpp"
#include "cechx/geometry.hpp"

namespace cechx {

// Similarity map raw -> normalized: y = (x - translation) * scale.
struct Transform {
  double scale = 1.0;
  Vec translation;

  Vec apply(std::span<const double> raw) const;
  double to_raw_length(double normalized) const { return normalized / scale; }
};

// Point set scaled so the minimum distance between distinct points is 1/sqrt(d),
// translated into [0, 2^root_height)^d with root_height minimal.
struct NormalizedCloud {
  PointCloud points;
  int dim = 0;
  int root_height = 0;
  Transform transform;

  int size() const { return static_cast<int>(points.size()); }
};

// Point ids are reassigned to input positions. Throws InvalidInput on
// empty/mixed/non-finite input and DegenerateInput when two or more points
// are given and all coincide.
NormalizedCloud normalize(const PointCloud& raw);

// Compressed quadtree. Physically only branching cells and single-location
// leaves are stored; the logical (uncompressed) view is reconstructed through
// qcell() and extends to arbitrarily negative heights below each leaf.
class Quadtree {
 public:
  static constexpr int kLeafBottom = INT_MIN;

  struct Node {
    // Smallest cell containing every point of the node (unused for leaves).
    Cell cell;
    // The node represents logical cells at heights [bottom, top].
    int top = 0;
    int bottom = 0;
    int rep = 0;  // smallest point id inside
    int count = 0;
    std::vector<int> children;
    std::vector<int> points;  // populated for leaves only (coincident points)

    bool is_leaf() const { return bottom == kLeafBottom; }
  };

  // Logical cell: node plus a height inside the node's chain.
  struct CellRef {
    int node = 0;
    int height = 0;
    friend bool operator==(const CellRef&, const CellRef&) = default;
  };

  explicit Quadtree(NormalizedCloud cloud);

  const NormalizedCloud& cloud() const { return cloud_; }
  int dim() const { return cloud_.dim; }
  int root_height() const { return cloud_.root_height; }
  Cell root() const;

  const std::vector<Node>& nodes() const { return nodes_; }
  CellRef root_ref() const { return {0, cloud_.root_height}; }
  Cell cell_of(const CellRef& ref) const;
  std::vector<CellRef> children_of(const CellRef& ref) const;

  Cell cell_of_point(int id, int h) const;

  // Nonempty height-h cells whose closed box meets the closed ball.
  std::vector<Cell> nonempty_cells_intersecting(const Ball& ball, int h) const;
  // All nonempty height-h cells, sorted.
  std::vector<Cell> nonempty_cells(int h) const;

  bool is_nonempty(const Cell& c) const { return locate(c).has_value(); }
  // Representative point id; nullopt for empty cells.
  std::optional<int> rep(const Cell& c) const;
  // Point ids inside c, ascending.
  std::vector<int> points_in(const Cell& c) const;

  // Smallest height at which no nonempty cell is ever shared by two distinct
  // point locations (every height-h cell with h <= this holds one location).
  int separation_height() const { return separation_height_; }

 private:
  int build(std::vector<int> ids, int top);
  std::optional<int> locate(const Cell& c) const;
  void collect(int node, const Ball* ball, int h, std::vector<Cell>& out) const;
  void gather_points(int node, std::vector<int>& out) const;

  NormalizedCloud cloud_;
  std::vector<Node> nodes_;
  int separation_height_ = 0;
};

}  // namespace cechx
