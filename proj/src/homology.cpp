#include "cechx/homology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "cechx/errors.hpp"

namespace cechx {

namespace {

constexpr long kNoPivot = -1;

// z += c over GF(2); both sorted ascending.
void add_into(std::vector<size_t>& z, const std::vector<size_t>& c) {
  std::vector<size_t> out;
  out.reserve(z.size() + c.size());
  std::set_symmetric_difference(z.begin(), z.end(), c.begin(), c.end(), std::back_inserter(out));
  z.swap(out);
}

std::vector<size_t> boundary_indices(const Simplex& s, const std::function<std::optional<size_t>(const Simplex&)>& find,
                                     const char* what) {
  std::vector<size_t> col;
  if (s.size() < 2) return col;
  col.reserve(s.size());
  for (size_t drop = 0; drop < s.size(); ++drop) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (size_t i = 0; i < s.size(); ++i)
      if (i != drop) f.push_back(s[i]);
    auto idx = find(f);
    if (!idx) throw InvalidInput(std::string(what) + ": missing face");
    col.push_back(*idx);
  }
  std::sort(col.begin(), col.end());
  return col;
}

}  // namespace

bool PersistencePoint::infinite() const { return std::isinf(death); }

const std::vector<PersistencePoint>& PersistenceDiagram::at(int p) const {
  static const std::vector<PersistencePoint> empty;
  if (p < 0 || p >= static_cast<int>(dims.size())) return empty;
  return dims[static_cast<size_t>(p)];
}

void PersistenceDiagram::canonical_sort() {
  for (auto& d : dims) std::sort(d.begin(), d.end());
}

PersistenceDiagram persist_filtration(const Filtration& filt, int pmax) {
  if (pmax < 0) throw InvalidInput("persist_filtration: pmax must be non-negative");
  std::vector<size_t> keep;  // entry positions with dim <= pmax + 1
  std::unordered_map<Simplex, size_t, SimplexHash> index;
  for (size_t i = 0; i < filt.entries.size(); ++i) {
    if (filt.entries[i].dim() > pmax + 1) continue;
    if (!index.emplace(filt.entries[i].simplex, keep.size()).second)
      throw InvalidInput("persist_filtration: duplicate simplex");
    keep.push_back(i);
  }
  const size_t n = keep.size();
  std::vector<std::vector<size_t>> cols(n);
  std::vector<double> value(n);
  std::vector<int> dim(n);
  for (size_t j = 0; j < n; ++j) {
    const auto& e = filt.entries[keep[j]];
    value[j] = e.value;
    dim[j] = e.dim();
    cols[j] = boundary_indices(
        e.simplex,
        [&](const Simplex& f) -> std::optional<size_t> {
          auto it = index.find(f);
          if (it == index.end()) return std::nullopt;
          return it->second;
        },
        "persist_filtration");
    for (size_t f : cols[j])
      if (f >= j || value[f] > e.value)
        throw InvalidInput("persist_filtration: face listed after its coface");
  }

  std::vector<long> pivot(n, kNoPivot);
  std::vector<bool> paired(n, false);
  PersistenceDiagram out;
  out.dims.resize(static_cast<size_t>(pmax) + 1);
  for (size_t j = 0; j < n; ++j) {
    auto& c = cols[j];
    while (!c.empty() && pivot[c.back()] != kNoPivot) add_into(c, cols[static_cast<size_t>(pivot[c.back()])]);
    if (c.empty()) continue;
    const size_t low = c.back();
    pivot[low] = static_cast<long>(j);
    paired[low] = paired[j] = true;
    if (value[j] > value[low]) out.dims[static_cast<size_t>(dim[low])].push_back({value[low], value[j]});
  }
  for (size_t j = 0; j < n; ++j)
    if (!paired[j] && dim[j] <= pmax)
      out.dims[static_cast<size_t>(dim[j])].push_back({value[j], std::numeric_limits<double>::infinity()});
  out.canonical_sort();
  return out;
}

Gf2Matrix::Gf2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((rows + 63) / 64), data_(static_cast<size_t>(words_) * cols, 0) {}

Gf2Matrix Gf2Matrix::identity(int n) {
  Gf2Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

bool Gf2Matrix::get(int r, int c) const {
  return (data_[static_cast<size_t>(c) * words_ + r / 64] >> (r % 64)) & 1u;
}

void Gf2Matrix::set(int r, int c, bool v) {
  auto& w = data_[static_cast<size_t>(c) * words_ + r / 64];
  const std::uint64_t bit = std::uint64_t{1} << (r % 64);
  w = v ? (w | bit) : (w & ~bit);
}

int Gf2Matrix::rank() const {
  std::vector<std::uint64_t> d = data_;
  std::vector<int> owner(static_cast<size_t>(rows_), -1);
  int r = 0;
  for (int c = 0; c < cols_; ++c) {
    std::uint64_t* col = d.data() + static_cast<size_t>(c) * words_;
    while (true) {
      int low = -1;
      for (int w = words_ - 1; w >= 0; --w)
        if (col[w]) {
          low = w * 64 + 63 - std::countl_zero(col[w]);
          break;
        }
      if (low < 0) break;
      if (owner[low] < 0) {
        owner[low] = c;
        ++r;
        break;
      }
      const std::uint64_t* other = d.data() + static_cast<size_t>(owner[low]) * words_;
      for (int w = 0; w < words_; ++w) col[w] ^= other[w];
    }
  }
  return r;
}

Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("Gf2Matrix: dimension mismatch");
  Gf2Matrix out(a.rows_, b.cols_);
  for (int j = 0; j < b.cols_; ++j)
    for (int k = 0; k < a.cols_; ++k)
      if (b.get(k, j))
        for (int w = 0; w < a.words_; ++w)
          out.data_[static_cast<size_t>(j) * out.words_ + w] ^= a.data_[static_cast<size_t>(k) * a.words_ + w];
  return out;
}

HomologyBasis::HomologyBasis(const Complex& k, int p) : p_(p), pivot_of_row_(k.size(), -1) {
  if (p < 0) throw InvalidInput("homology_basis: p must be non-negative");
  const auto find = [&](const Simplex& f) { return k.index_of(f); };
  const auto reduce = [&](Chain& z, std::vector<bool>* coords) {
    while (!z.empty() && pivot_of_row_[z.back()] >= 0) {
      const auto& [col, h] = pivot_columns_[static_cast<size_t>(pivot_of_row_[z.back()])];
      if (coords && h >= 0) (*coords)[static_cast<size_t>(h)] = !(*coords)[static_cast<size_t>(h)];
      add_into(z, col);
    }
  };
  const auto add_pivot = [&](Chain z, int h) {
    pivot_of_row_[z.back()] = static_cast<int>(pivot_columns_.size());
    pivot_columns_.emplace_back(std::move(z), h);
  };

  for (size_t s : k.of_dim(p + 1)) {
    Chain b = boundary_indices(k.simplices()[s], find, "homology_basis");
    reduce(b, nullptr);
    if (!b.empty()) add_pivot(std::move(b), -1);
  }

  // Cycle space of dimension p via reduction of the p-boundary with tracking.
  std::vector<Chain> cycles;
  {
    std::vector<std::pair<Chain, Chain>> reduced;  // (boundary, chain)
    std::unordered_map<size_t, size_t> low_owner;
    for (size_t s : k.of_dim(p)) {
      Chain b = p == 0 ? Chain{} : boundary_indices(k.simplices()[s], find, "homology_basis");
      Chain v{s};
      while (!b.empty()) {
        auto it = low_owner.find(b.back());
        if (it == low_owner.end()) break;
        add_into(b, reduced[it->second].first);
        add_into(v, reduced[it->second].second);
      }
      if (b.empty()) {
        cycles.push_back(std::move(v));
      } else {
        low_owner.emplace(b.back(), reduced.size());
        reduced.emplace_back(std::move(b), std::move(v));
      }
    }
  }
  for (Chain& z : cycles) {
    reduce(z, nullptr);
    if (z.empty()) continue;
    cycles_.push_back(z);
    add_pivot(std::move(z), static_cast<int>(cycles_.size()) - 1);
  }
}

std::vector<bool> HomologyBasis::coordinates(Chain z) const {
  std::sort(z.begin(), z.end());
  std::vector<bool> coords(cycles_.size(), false);
  while (!z.empty()) {
    if (z.back() >= pivot_of_row_.size() || pivot_of_row_[z.back()] < 0)
      throw InvalidInput("homology_basis: chain is not a cycle");
    const auto& [col, h] = pivot_columns_[static_cast<size_t>(pivot_of_row_[z.back()])];
    if (h >= 0) coords[static_cast<size_t>(h)] = !coords[static_cast<size_t>(h)];
    add_into(z, col);
  }
  return coords;
}

int VertexMap::operator()(int v) const {
  if (v < 0 || v >= static_cast<int>(map.size())) throw InvalidInput("vertex map: vertex outside domain");
  return map[static_cast<size_t>(v)];
}

Simplex VertexMap::image(const Simplex& s) const {
  std::vector<int> img;
  img.reserve(s.size());
  for (int v : s) img.push_back((*this)(v));
  return make_simplex(std::move(img));
}

VertexMap compose(const VertexMap& second, const VertexMap& first) {
  VertexMap out;
  out.map.reserve(first.map.size());
  for (int v : first.map) out.map.push_back(second(v));
  return out;
}

VertexMap identity_map(int n) {
  VertexMap m;
  m.map.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) m.map[static_cast<size_t>(i)] = i;
  return m;
}

bool is_simplicial(const VertexMap& f, const Complex& k, const Complex& l) {
  for (const Simplex& s : k.simplices())
    if (!l.contains(f.image(s))) return false;
  return true;
}

Gf2Matrix induced_map(const VertexMap& f, const Complex& k, const HomologyBasis& bk, const Complex& l,
                      const HomologyBasis& bl) {
  if (bk.p() != bl.p()) throw InvalidInput("induced_map: bases of different dimension");
  if (!is_simplicial(f, k, l)) throw InvalidInput("induced_map: map is not simplicial");
  Gf2Matrix m(bl.betti(), bk.betti());
  for (int c = 0; c < bk.betti(); ++c) {
    Chain img;
    for (size_t idx : bk.cycles()[static_cast<size_t>(c)]) {
      const Simplex& s = k.simplices()[idx];
      Simplex t = f.image(s);
      if (t.size() < s.size()) continue;
      img.push_back(*l.index_of(t));
    }
    std::sort(img.begin(), img.end());
    Chain reduced;  // cancel pairs mod 2
    for (size_t i = 0; i < img.size();) {
      size_t j = i;
      while (j < img.size() && img[j] == img[i]) ++j;
      if ((j - i) % 2 == 1) reduced.push_back(img[i]);
      i = j;
    }
    const std::vector<bool> coords = bl.coordinates(std::move(reduced));
    for (int r = 0; r < bl.betti(); ++r) m.set(r, c, coords[static_cast<size_t>(r)]);
  }
  return m;
}

Gf2Matrix induced_map(const VertexMap& f, const Complex& k, const Complex& l, int p) {
  return induced_map(f, k, HomologyBasis(k, p), l, HomologyBasis(l, p));
}

bool check_contiguous(const VertexMap& f, const VertexMap& g, const Complex& k, const Complex& l) {
  for (int v : k.vertices())
    if (v < 0 || v >= static_cast<int>(f.map.size()) || v >= static_cast<int>(g.map.size()))
      throw InvalidInput("check_contiguous: map does not cover the domain");
  for (const Simplex& s : k.simplices()) {
    std::vector<int> both;
    for (int v : s) {
      both.push_back(f(v));
      both.push_back(g(v));
    }
    if (!l.contains(make_simplex(std::move(both)))) return false;
  }
  return true;
}

std::vector<PersistencePoint> tower_diagram(const Tower& tower, int p, bool births_from_zero) {
  const size_t m = tower.complexes.size();
  if (m == 0) return {};
  if (tower.maps.size() + 1 != m || tower.scales.size() != m)
    throw InvalidInput("tower_diagram: inconsistent tower sizes");
  for (size_t i = 1; i < m; ++i)
    if (!(tower.scales[i] > tower.scales[i - 1])) throw InvalidInput("tower_diagram: scales must increase");

  std::vector<HomologyBasis> bases;
  bases.reserve(m);
  for (const Complex& k : tower.complexes) bases.emplace_back(k, p);
  std::vector<Gf2Matrix> maps;
  for (size_t i = 0; i + 1 < m; ++i)
    maps.push_back(induced_map(tower.maps[i], tower.complexes[i], bases[i], tower.complexes[i + 1], bases[i + 1]));

  // beta[i][j] = rank of H_p(K_i) -> H_p(K_j), j >= i.
  std::vector<std::vector<int>> beta(m, std::vector<int>(m, 0));
  for (size_t i = 0; i < m; ++i) {
    Gf2Matrix prod = Gf2Matrix::identity(bases[i].betti());
    beta[i][i] = bases[i].betti();
    for (size_t j = i + 1; j < m; ++j) {
      prod = maps[j - 1] * prod;
      beta[i][j] = prod.rank();
      if (beta[i][j] == 0) break;  // later ranks stay zero
    }
  }
  const auto b = [&](long i, long j) { return i < 0 ? 0 : beta[static_cast<size_t>(i)][static_cast<size_t>(j)]; };

  std::vector<PersistencePoint> out;
  for (long i = 0; i < static_cast<long>(m); ++i) {
    const double birth = (births_from_zero && i == 0) ? 0.0 : tower.scales[static_cast<size_t>(i)];
    for (long j = i + 1; j < static_cast<long>(m); ++j) {
      const int mu = b(i, j - 1) - b(i, j) - b(i - 1, j - 1) + b(i - 1, j);
      if (mu < 0) throw std::logic_error("tower_diagram: negative multiplicity");
      for (int t = 0; t < mu; ++t) out.push_back({birth, tower.scales[static_cast<size_t>(j)]});
    }
    const long last = static_cast<long>(m) - 1;
    const int inf = b(i, last) - b(i - 1, last);
    if (inf < 0) throw std::logic_error("tower_diagram: negative multiplicity");
    for (int t = 0; t < inf; ++t) out.push_back({birth, std::numeric_limits<double>::infinity()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

PersistenceDiagram tower_diagram_all(const Tower& tower, int pmax, bool births_from_zero) {
  PersistenceDiagram d;
  for (int p = 0; p <= pmax; ++p) d.dims.push_back(tower_diagram(tower, p, births_from_zero));
  return d;
}

Tower inclusion_tower(const Filtration& filt) {
  std::vector<double> values;
  int nv = 0;
  for (const auto& e : filt.entries) {
    values.push_back(e.value);
    for (int v : e.simplex) nv = std::max(nv, v + 1);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Tower t;
  for (double v : values) {
    t.complexes.push_back(sublevel(filt, v));
    t.scales.push_back(v);
  }
  for (size_t i = 0; i + 1 < values.size(); ++i) t.maps.push_back(identity_map(nv));
  return t;
}

}  // namespace cechx
