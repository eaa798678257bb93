#pragma once

#include <random>
#include <span>
#include <vector>

#include "cechx/cell.hpp"
#include "cechx/quadtree.hpp"

namespace cechx {

// Well-separated tuple (q_0, ..., q_k). Cells are kept in sorted order; a
// cell may repeat.
struct WST {
  std::vector<Cell> cells;
  double rad = 0.0;  // radius of meb_of_cells(cells)

  int k() const { return static_cast<int>(cells.size()) - 1; }
};

struct WSSD {
  double epsilon = 0.0;
  int kmax = 0;
  std::vector<std::vector<WST>> gammas;  // gammas[k - 1] holds Gamma_k

  const std::vector<WST>& gamma(int k) const { return gammas.at(static_cast<size_t>(k - 1)); }
  size_t total_size() const;
};

// Integer h with 2^h <= eps r / (2 sqrt d) < 2^(h+1), i.e. floor(log2(.)).
int grid_height_for(double r, double eps, int d);

// Gamma_1 is the (eps/2)-WSPD; Gamma_k extends every tuple of Gamma_(k-1) by
// each nonempty cell of G_h meeting twice its enclosing ball, with
// h = grid_height_for(rad, eps, d). Tuples are deduplicated as multisets.
// Throws InvalidInput unless eps in (0,1) and 1 <= kmax <= d.
WSSD build_wssd(const Quadtree& qt, double eps, int kmax);

struct CoverageReport {
  int k = 0;
  long long total = 0;    // number of k-simplices on the point set
  long long covered = 0;  // those covered by some tuple of Gamma_k
  std::vector<std::vector<int>> uncovered;  // up to 16 examples
};

// Exhaustive covering check of Gamma_k over all k-simplices of the quadtree's
// points. Throws InvalidInput for more than 24 points.
CoverageReport coverage(const Quadtree& qt, const WSSD& wssd, int k);

// Perfect matching between the simplex vertices and the tuple's cells under
// containment. Throws InvalidInput when |sigma| != k + 1.
bool covers(const WST& t, std::span<const int> sigma, const NormalizedCloud& cloud);

// (1 + 1/m) / sqrt(1 - 1/m^2); infinite for m <= 1.
double removable_point_factor(int m);

// Returns the id of a point p with |p - center(P \ p)| <= f(m) rad(P \ p),
// where m = min(d, |P| - 1) is the largest possible dimension of the
// simplex spanned by an irreducible support set. Throws InvalidInput for
// |P| < 3.
int removable_point_check(std::span<const Point> points);

// Every sampled ball meeting all cells, grown by (1 + eps), swallows the union.
bool wst_ball_property_check(const WST& t, double eps, int trials, std::mt19937_64& rng);

// 2^height <= eps * rad / sqrt(d) for every cell.
bool wst_height_bound(const WST& t, double eps);

}  // namespace cechx
