#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "cechx/geometry.hpp"

namespace cechx {

// Strictly increasing vertex ids.
using Simplex = std::vector<int>;

struct SimplexHash {
  size_t operator()(const Simplex& s) const noexcept;
};

// Sorts and removes repeated vertices (the image of a degenerate map).
Simplex make_simplex(std::vector<int> vertices);

struct FiltrationEntry {
  Simplex simplex;
  double value = 0.0;

  int dim() const { return static_cast<int>(simplex.size()) - 1; }
};

// Entries ordered by (value, dim, lexicographic vertices).
struct Filtration {
  std::vector<FiltrationEntry> entries;

  void canonical_sort();
  int top_dim() const;
};

// True when the filtration is closed under faces and every face carries a
// value no larger than its cofaces, and appears earlier in the entry order.
bool is_face_monotone(const Filtration& filt);

// Vertices are input positions 0..n-1. Simplices up to dimension kmax; each
// gets the radius of the minimum enclosing ball of its vertices.
Filtration cech_filtration(const PointCloud& cloud, int kmax);

// Same vertex set; simplex value is the diameter of its vertices.
Filtration rips_filtration(const PointCloud& cloud, int kmax);

// i-completion: simplices of dimension <= i keep their values; every vertex
// set of dimension in (i, kmax] whose i-faces are all present gets the
// largest value among those faces.
Filtration completion(const Filtration& filt, int i, int kmax);

// Finite simplicial complex with O(1) membership lookup. Simplices are kept
// sorted by (dim, lex) and deduplicated.
class Complex {
 public:
  Complex() = default;
  explicit Complex(std::vector<Simplex> simplices);

  const std::vector<Simplex>& simplices() const { return simplices_; }
  size_t size() const { return simplices_.size(); }
  bool contains(const Simplex& s) const { return index_.contains(s); }
  std::optional<size_t> index_of(const Simplex& s) const;
  int dim() const;
  // Indices of the p-simplices, in stored order.
  std::vector<size_t> of_dim(int p) const;
  std::vector<int> vertices() const;

 private:
  std::vector<Simplex> simplices_;
  std::unordered_map<Simplex, size_t, SimplexHash> index_;
};

// Complex formed by entries with value <= alpha.
Complex sublevel(const Filtration& filt, double alpha);

// Codimension-one faces missing from the complex (empty for a valid complex).
std::vector<Simplex> face_closure_violations(const Complex& k);

struct SandwichViolation {
  double alpha = 0.0;
  Simplex simplex;
  bool upper = false;  // false: C_a not inside M(C_a); true: M(C_a) not inside C_(1+eps)a
};

struct SandwichReport {
  int delta = 0;
  std::vector<double> alphas;
  std::vector<SandwichViolation> violations;
};

// Checks C_a within M_(delta-1)(C_a) within C_((1+eps)a) for each alpha, with
// Cech simplices up to dimension kmax (all subsets when kmax < 0). An empty
// alpha list means every critical value of both filtrations.
SandwichReport check_completion_sandwich(const PointCloud& cloud, double eps,
                                         std::vector<double> alphas, int kmax = -1);

}  // namespace cechx
