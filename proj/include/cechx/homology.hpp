#pragma once

#include <cstdint>
#include <vector>

#include "cechx/complex.hpp"

namespace cechx {

struct PersistencePoint {
  double birth = 0.0;
  double death = 0.0;  // +infinity for essential classes

  bool infinite() const;
  friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
  friend auto operator<=>(const PersistencePoint&, const PersistencePoint&) = default;
};

// dims[p] is the sorted multiset of points in homology dimension p.
struct PersistenceDiagram {
  std::vector<std::vector<PersistencePoint>> dims;

  int pmax() const { return static_cast<int>(dims.size()) - 1; }
  const std::vector<PersistencePoint>& at(int p) const;
  void canonical_sort();
  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

// Standard column reduction over GF(2) in filtration order, dimensions 0..pmax.
// Zero-length pairs are dropped. Throws InvalidInput when a face is missing or
// listed after one of its cofaces.
PersistenceDiagram persist_filtration(const Filtration& filt, int pmax);

// Dense column-major matrix over GF(2).
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(int rows, int cols);
  static Gf2Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const;
  void set(int r, int c, bool v);
  int rank() const;

  friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b);
  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> data_;  // column c occupies words [c*words_, (c+1)*words_)
};

// Chains are sorted lists of simplex indices of the complex.
using Chain = std::vector<size_t>;

// Basis of H_p(K; GF(2)) by representative cycles, with the reduction data
// needed to express any p-cycle in that basis.
class HomologyBasis {
 public:
  HomologyBasis(const Complex& k, int p);

  int p() const { return p_; }
  int betti() const { return static_cast<int>(cycles_.size()); }
  const std::vector<Chain>& cycles() const { return cycles_; }

  // Coordinates of the class of a p-cycle. Throws InvalidInput if z is not a
  // cycle of K.
  std::vector<bool> coordinates(Chain z) const;

 private:
  int p_;
  std::vector<Chain> cycles_;
  // pivot (largest simplex index) -> reduced column; homology_index >= 0 for
  // basis cycles, -1 for boundaries
  std::vector<std::pair<Chain, int>> pivot_columns_;
  std::vector<int> pivot_of_row_;
};

// Vertex map: map[v] is the image of domain vertex v.
struct VertexMap {
  std::vector<int> map;

  int operator()(int v) const;
  Simplex image(const Simplex& s) const;
};

VertexMap compose(const VertexMap& second, const VertexMap& first);
VertexMap identity_map(int n);

// Every simplex of K maps onto a simplex of L.
bool is_simplicial(const VertexMap& f, const Complex& k, const Complex& l);

// Matrix of H_p(f) from basis bk of K to basis bl of L. Simplices collapsing to
// lower dimension contribute zero. Throws InvalidInput when f is not simplicial.
Gf2Matrix induced_map(const VertexMap& f, const Complex& k, const HomologyBasis& bk, const Complex& l,
                      const HomologyBasis& bl);
Gf2Matrix induced_map(const VertexMap& f, const Complex& k, const Complex& l, int p);

// For each simplex of K the union of both images spans a simplex of L.
// Throws InvalidInput if a map does not cover K's vertices.
bool check_contiguous(const VertexMap& f, const VertexMap& g, const Complex& k, const Complex& l);

struct Tower {
  std::vector<Complex> complexes;
  std::vector<VertexMap> maps;  // maps[i]: complexes[i] -> complexes[i + 1]
  std::vector<double> scales;   // strictly increasing
};

// Diagram of the persistence module H_p along the tower, from persistent Betti
// ranks. With births_from_zero, classes present at the first complex are
// reported with birth 0 (the tower is taken to be constant below s_0).
// Throws std::logic_error if a multiplicity comes out negative.
std::vector<PersistencePoint> tower_diagram(const Tower& tower, int p, bool births_from_zero = false);
PersistenceDiagram tower_diagram_all(const Tower& tower, int pmax, bool births_from_zero = false);

// Sublevel complexes of filt at every distinct value, joined by identity maps.
Tower inclusion_tower(const Filtration& filt);

}  // namespace cechx
