#pragma once

#include <random>
#include <vector>

#include "cechx/cell.hpp"
#include "cechx/quadtree.hpp"

namespace cechx {

struct WSPair {
  Cell a;
  Cell b;
  double diam_max = 0.0;  // max(diam(a), diam(b))
  double dist = 0.0;      // box-to-box distance
};

struct WSPD {
  double epsilon = 0.0;
  std::vector<WSPair> pairs;
};

// max(diam(q), diam(q')) <= eps * d(q, q'), with d the box-to-box distance.
bool is_well_separated(const Cell& q, const Cell& q2, double eps);

// Pair decomposition over the compressed quadtree: the larger cell of an
// unseparated pair is split (the first one on ties) until separation holds.
// Pairs are deduplicated by their unordered cell key and sorted.
// Throws InvalidInput unless eps is in (0, 1).
WSPD build_wspd(const Quadtree& qt, double eps);

// True iff some pair has p in one cell and q in the other.
bool pair_covers(const WSPair& pair, std::span<const double> p, std::span<const double> q);

// Randomized check that (1 + 2 eps) B swallows both cells for `trials` balls B
// each containing a point of both cells.
bool wspd_ball_property_check(const WSPair& pair, double eps, int trials, std::mt19937_64& rng);

}  // namespace cechx
