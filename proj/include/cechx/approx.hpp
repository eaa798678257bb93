#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cechx/cell.hpp"
#include "cechx/complex.hpp"
#include "cechx/homology.hpp"
#include "cechx/quadtree.hpp"
#include "cechx/wssd.hpp"

namespace cechx {

// theta_ell = (1 + eps/2)^ell.
double theta(int ell, double eps);

struct ScaleParams {
  double eps = 0.0;
  double alpha = 0.0;
  int k_alpha = 0;     // theta_k <= alpha < theta_(k+1)
  int h_alpha = 0;     // 2^h <= eps theta_k / (3 sqrt d) < 2^(h+1)
  double theta_k = 0.0;
};

// Throws InvalidInput unless alpha > 0 and eps in (0, 1).
ScaleParams scale_params(double alpha, double eps, int d);

// Complex on the nonempty height-h cells. Vertex i is cells[i].
struct ApproxComplex {
  ScaleParams params;
  std::vector<Cell> cells;
  Complex complex;
  std::unordered_map<Cell, int, CellHash> index;

  int vertex_of(const Cell& c) const;  // throws std::out_of_range when absent
};

// The WSSD must have been built with parameter eps / 12 and kmax <= d; its
// tuples with every cell at height <= h_alpha are lifted to height h_alpha
// and kept when their enclosing radius is at most theta_k.
ApproxComplex build_approx_complex(const Quadtree& qt, const WSSD& wssd, double eps, double alpha);

// Tuples with rad <= theta_(k+1) that have a cell above h_alpha (expected none).
std::vector<WST> lemma9_violations(const WSSD& wssd, const ScaleParams& params);

// Cell-to-ancestor map between approximation complexes at alpha1 <= alpha2.
VertexMap map_g(const ApproxComplex& a1, const ApproxComplex& a2);
// Point (normalized id) to the height-h cell containing it.
VertexMap map_phi(const Quadtree& qt, const ApproxComplex& a);
// Cell to its representative point (smallest id).
VertexMap map_psi(const Quadtree& qt, const ApproxComplex& a);

struct ApproxTower {
  double eps = 0.0;
  int ell_min = 0;
  int ell_max = 0;
  std::vector<ApproxComplex> levels;  // levels[i] at alpha = theta_(ell_min + i)
  // Scales expressed in input (unnormalized) units.
  Tower tower;
  std::vector<std::string> warnings;
};

// Range from just below the smallest pairwise enclosing radius to just above
// the radius of the whole set, in theta-exponents of the normalized cloud.
std::pair<int, int> default_ell_range(const NormalizedCloud& cloud, double eps);

ApproxTower build_tower(const Quadtree& qt, const WSSD& wssd, double eps, int ell_min, int ell_max);

}  // namespace cechx
