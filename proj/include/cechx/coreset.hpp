#pragma once

#include <vector>

#include "cechx/geometry.hpp"

namespace cechx {

// Largest input handled by the exhaustive subset searches below.
inline constexpr int kMaxEnumeration = 16;

// ceil(1 / (2 eps + eps^2) + 1). Values within 1e-9 of an integer are snapped
// to it before the ceiling, so eps = sqrt(2) - 1 gives exactly 2.
int delta(double eps);

// Maximum enclosing-ball radius over all k-subsets (so r_2 = diam / 2).
// Requires 2 <= k <= n <= kMaxEnumeration.
double r_k(const PointCloud& points, int k);

enum class CoresetKind { Meb, Radius };

struct CoresetResult {
  std::vector<int> subset;  // point ids, ascending
  CoresetKind kind = CoresetKind::Radius;
  double eps = 0.0;
  double achieved_factor = 1.0;  // rad(P) / rad(C)
  bool whole_set = false;        // the input was too small to reduce
};

// rad(P) <= (1 + eps) rad(C).
bool is_radius_coreset(const PointCloud& points, const std::vector<int>& subset_ids, double eps);
// Ball(center(C), (1 + eps) rad(C)) contains every point of P.
bool is_meb_coreset(const PointCloud& points, const std::vector<int>& subset_ids, double eps);

// Removes one point at a time, keeping the remaining set of largest radius
// (ties: remove the smallest id), until delta(eps) points remain.
CoresetResult radius_coreset_greedy(const PointCloud& points, double eps);

// Smallest radius-coreset by exhaustive search over subsets of growing size.
CoresetResult radius_coreset_min(const PointCloud& points, double eps);

// Farthest-point heuristic: start from a far pair, add the point farthest from
// the current center until the expanded ball covers P.
CoresetResult meb_coreset(const PointCloud& points, double eps);

// Smallest meb-coreset by exhaustive search.
CoresetResult meb_coreset_min(const PointCloud& points, double eps);

// d unit vectors e_1..e_d in R^d (a regular (d-1)-simplex with edge sqrt 2).
PointCloud standard_simplex(int d);

// Minimum radius-coreset size of standard_simplex(d):
// ceil((1+eps)^2 / ((1+eps)^2 - (d-1)/d)), snapped like delta().
int standard_simplex_coreset_size(int d, double eps);

// prod_{t=j}^{i-1} t / sqrt(t^2 - 1) and its closed form sqrt(j(i-1) / (i(j-1))).
double telescoping_product(int j, int i);
double telescoping_closed_form(int j, int i);

struct JungPair {
  int i = 0;
  int j = 0;
  double lhs = 0.0;  // r_i
  double rhs = 0.0;  // sqrt(j(i-1)/(i(j-1))) r_j
};

struct JungReport {
  int dim = 0;
  double rad = 0.0;
  double diam = 0.0;
  std::vector<double> r;  // r[k] for 2 <= k <= min(n, d+1); r[0], r[1] unused
  // Jung's bound rad <= sqrt(2d/(d+1)) * x read with x = r_2 = diam/2 and with x = diam.
  double jung_radius_reading_rhs = 0.0;
  double jung_diameter_reading_rhs = 0.0;
  std::vector<JungPair> generalized;
  bool r_top_equals_rad = true;  // r_(d+1) == rad when n >= d+1
  bool all_hold = true;
};

// Evaluates every inequality with absolute-plus-relative slack tol.
JungReport jung_check(const PointCloud& points, double tol = 1e-9);

struct FaceLemma {
  double rad = 0.0;
  double rhs = 0.0;  // k / sqrt(k^2 - 1) * r_k(Q)
  bool holds = true;
};

// rad(Q) <= k / sqrt(k^2 - 1) r_k(Q) for |Q| = k + 1 >= 3.
FaceLemma face_lemma_check(const PointCloud& q, double tol = 1e-9);

}  // namespace cechx
