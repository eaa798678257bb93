#include "cechx/quadtree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "cechx/errors.hpp"

namespace cechx {

// ---------------------------------------------------------------------------
// Cell

double Cell::side() const { return std::ldexp(1.0, height); }

double Cell::diameter() const { return side() * std::sqrt(static_cast<double>(dim)); }

double Cell::lo(int axis) const {
  return std::ldexp(static_cast<double>(index[static_cast<size_t>(axis)]), height);
}

double Cell::hi(int axis) const {
  return std::ldexp(static_cast<double>(index[static_cast<size_t>(axis)] + 1), height);
}

Vec Cell::center() const {
  Vec c(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) c[static_cast<size_t>(i)] = 0.5 * (lo(i) + hi(i));
  return c;
}

std::vector<Vec> Cell::corners() const {
  std::vector<Vec> out;
  const unsigned count = 1u << dim;
  out.reserve(count);
  for (unsigned mask = 0; mask < count; ++mask) {
    Vec v(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] = (mask >> i) & 1u ? hi(i) : lo(i);
    out.push_back(std::move(v));
  }
  return out;
}

bool Cell::contains(std::span<const double> x) const {
  for (int i = 0; i < dim; ++i) {
    const double xi = x[static_cast<size_t>(i)];
    if (xi < lo(i) || xi >= hi(i)) return false;
  }
  return true;
}

size_t CellHash::operator()(const Cell& c) const noexcept {
  size_t h = std::hash<int>{}(c.height) * 0x9E3779B97F4A7C15ull;
  for (int i = 0; i < c.dim; ++i) {
    h ^= std::hash<std::int64_t>{}(c.index[static_cast<size_t>(i)]) + 0x9E3779B97F4A7C15ull +
         (h << 6) + (h >> 2);
  }
  return h;
}

size_t CellTupleHash::operator()(const std::vector<Cell>& cells) const noexcept {
  size_t h = cells.size();
  CellHash ch;
  for (const Cell& c : cells) h ^= ch(c) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}

Cell cell_containing(std::span<const double> x, int h) {
  Cell c;
  c.height = h;
  c.dim = static_cast<int>(x.size());
  if (c.dim > kMaxDim) throw InvalidInput("cell: dimension exceeds kMaxDim");
  for (int i = 0; i < c.dim; ++i) {
    const double v = std::floor(std::ldexp(x[static_cast<size_t>(i)], -h));
    if (!(std::abs(v) < 4.0e18))
      throw InvalidInput("cell: lattice index overflow at height " + std::to_string(h));
    c.index[static_cast<size_t>(i)] = static_cast<std::int64_t>(v);
  }
  return c;
}

Cell qcell(const Cell& q, int i) {
  if (i < q.height) throw InvalidInput("qcell: target height below cell height");
  Cell out = q;
  out.height = i;
  const int shift = i - q.height;
  for (int a = 0; a < q.dim; ++a) {
    auto& v = out.index[static_cast<size_t>(a)];
    v = shift >= 63 ? (v < 0 ? -1 : 0) : (v >> shift);
  }
  return out;
}

double box_distance(const Cell& a, const Cell& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) {
    const double gap = std::max({0.0, a.lo(i) - b.hi(i), b.lo(i) - a.hi(i)});
    s += gap * gap;
  }
  return std::sqrt(s);
}

bool box_intersects_ball(const Cell& c, const Ball& ball) {
  double s = 0.0;
  for (int i = 0; i < c.dim; ++i) {
    const double x = ball.center[static_cast<size_t>(i)];
    const double nearest = std::clamp(x, c.lo(i), c.hi(i));
    s += (x - nearest) * (x - nearest);
  }
  return s <= ball.radius * ball.radius;
}

MebResult meb_of_cells(std::span<const Cell> cells) {
  if (cells.empty()) throw InvalidInput("meb_of_cells: empty cell list");
  std::vector<Cell> distinct(cells.begin(), cells.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<Vec> corners;
  for (const Cell& c : distinct) {
    auto cs = c.corners();
    corners.insert(corners.end(), std::make_move_iterator(cs.begin()),
                   std::make_move_iterator(cs.end()));
  }
  return meb_of_coords(corners);
}

double rad_of_cells(std::span<const Cell> cells) { return meb_of_cells(cells).ball.radius; }

// ---------------------------------------------------------------------------
// Normalization

Vec Transform::apply(std::span<const double> raw) const {
  Vec out(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - translation[i]) * scale;
  return out;
}

NormalizedCloud normalize(const PointCloud& raw) {
  if (raw.empty()) throw InvalidInput("normalize: empty point set");
  const int d = raw.front().dim();
  if (d < 1 || d > kMaxDim) throw InvalidInput("normalize: unsupported dimension");
  for (const Point& p : raw) {
    if (p.dim() != d) throw InvalidInput("normalize: mixed dimensions");
    for (double x : p.coords)
      if (!std::isfinite(x)) throw InvalidInput("normalize: non-finite coordinate");
  }

  NormalizedCloud out;
  out.dim = d;
  out.transform.translation = raw.front().coords;
  for (const Point& p : raw)
    for (int i = 0; i < d; ++i)
      out.transform.translation[static_cast<size_t>(i)] =
          std::min(out.transform.translation[static_cast<size_t>(i)], p.coords[static_cast<size_t>(i)]);

  double min_gap2 = 0.0;
  for (size_t i = 0; i < raw.size(); ++i)
    for (size_t j = i + 1; j < raw.size(); ++j) {
      const double g = squared_distance(raw[i].coords, raw[j].coords);
      if (g > 0.0 && (min_gap2 == 0.0 || g < min_gap2)) min_gap2 = g;
    }
  if (raw.size() >= 2 && min_gap2 == 0.0) throw DegenerateInput("normalize: all points coincide");
  out.transform.scale = raw.size() == 1 ? 1.0 : (1.0 / std::sqrt(double(d))) / std::sqrt(min_gap2);

  double extent = 0.0;
  out.points.reserve(raw.size());
  for (const Point& p : raw) {
    Point q{out.transform.apply(p.coords), static_cast<int>(out.points.size())};
    for (double x : q.coords) extent = std::max(extent, x);
    out.points.push_back(std::move(q));
  }
  // Minimal L with every coordinate < 2^L.
  int L = extent > 0.0 ? static_cast<int>(std::ceil(std::log2(extent))) : 0;
  while (std::ldexp(1.0, L) <= extent) ++L;
  while (extent > 0.0 && std::ldexp(1.0, L - 1) > extent) --L;
  out.root_height = L;
  return out;
}

// ---------------------------------------------------------------------------
// Quadtree

Quadtree::Quadtree(NormalizedCloud cloud) : cloud_(std::move(cloud)) {
  if (cloud_.points.empty()) throw InvalidInput("quadtree: empty cloud");
  for (size_t i = 0; i < cloud_.points.size(); ++i)
    if (cloud_.points[i].id != static_cast<int>(i))
      throw InvalidInput("quadtree: point ids must equal their positions");
  std::vector<int> ids(cloud_.points.size());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  separation_height_ = INT_MAX;
  build(std::move(ids), cloud_.root_height);
  nodes_[0].top = INT_MAX;
  if (separation_height_ == INT_MAX) separation_height_ = cloud_.root_height;
}

int Quadtree::build(std::vector<int> ids, int top) {
  const int idx = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  {
    Node& n = nodes_.back();
    n.top = top;
    n.count = static_cast<int>(ids.size());
    n.rep = *std::min_element(ids.begin(), ids.end());
  }
  const auto& coords = [&](int id) -> const Vec& { return cloud_.points[static_cast<size_t>(id)].coords; };
  const Vec& first = coords(ids.front());
  const bool coincident = std::all_of(ids.begin(), ids.end(), [&](int id) { return coords(id) == first; });
  if (coincident) {
    Node& n = nodes_[static_cast<size_t>(idx)];
    n.bottom = kLeafBottom;
    n.cell = cell_containing(first, top);
    std::sort(ids.begin(), ids.end());
    n.points = std::move(ids);
    return idx;
  }

  int h = top;
  for (;;) {
    const Cell probe = cell_containing(first, h - 1);
    const bool shared = std::all_of(ids.begin(), ids.end(),
                                    [&](int id) { return cell_containing(coords(id), h - 1) == probe; });
    if (!shared) break;
    --h;
  }
  nodes_[static_cast<size_t>(idx)].bottom = h;
  nodes_[static_cast<size_t>(idx)].cell = cell_containing(first, h);
  separation_height_ = std::min(separation_height_, h - 1);

  std::map<Cell, std::vector<int>> groups;
  for (int id : ids) groups[cell_containing(coords(id), h - 1)].push_back(id);
  for (auto& [cell, members] : groups) {
    const int child = build(std::move(members), h - 1);
    nodes_[static_cast<size_t>(idx)].children.push_back(child);
  }
  return idx;
}

Cell Quadtree::root() const {
  Cell c;
  c.height = cloud_.root_height;
  c.dim = cloud_.dim;
  return c;
}

Cell Quadtree::cell_of(const CellRef& ref) const {
  const Node& n = nodes_[static_cast<size_t>(ref.node)];
  if (n.is_leaf()) return cell_of_point(n.rep, ref.height);
  return qcell(n.cell, ref.height);
}

std::vector<Quadtree::CellRef> Quadtree::children_of(const CellRef& ref) const {
  const Node& n = nodes_[static_cast<size_t>(ref.node)];
  if (n.is_leaf() || ref.height > n.bottom) return {CellRef{ref.node, ref.height - 1}};
  std::vector<CellRef> out;
  out.reserve(n.children.size());
  for (int ch : n.children) out.push_back(CellRef{ch, ref.height - 1});
  return out;
}

Cell Quadtree::cell_of_point(int id, int h) const {
  return cell_containing(cloud_.points.at(static_cast<size_t>(id)).coords, h);
}

std::optional<int> Quadtree::locate(const Cell& c) const {
  if (c.dim != cloud_.dim) return std::nullopt;
  int node = 0;
  for (;;) {
    const Node& n = nodes_[static_cast<size_t>(node)];
    if (n.is_leaf() || c.height >= n.bottom) {
      if (cell_of(CellRef{node, c.height}) == c) return node;
      return std::nullopt;
    }
    const Cell target = qcell(c, n.bottom - 1);
    int next = -1;
    for (int ch : n.children)
      if (cell_of(CellRef{ch, n.bottom - 1}) == target) {
        next = ch;
        break;
      }
    if (next < 0) return std::nullopt;
    node = next;
  }
}

std::optional<int> Quadtree::rep(const Cell& c) const {
  const auto node = locate(c);
  if (!node) return std::nullopt;
  return nodes_[static_cast<size_t>(*node)].rep;
}

void Quadtree::gather_points(int node, std::vector<int>& out) const {
  const Node& n = nodes_[static_cast<size_t>(node)];
  if (n.is_leaf()) {
    out.insert(out.end(), n.points.begin(), n.points.end());
    return;
  }
  for (int ch : n.children) gather_points(ch, out);
}

std::vector<int> Quadtree::points_in(const Cell& c) const {
  std::vector<int> out;
  if (const auto node = locate(c)) gather_points(*node, out);
  std::sort(out.begin(), out.end());
  return out;
}

void Quadtree::collect(int node, const Ball* ball, int h, std::vector<Cell>& out) const {
  const Node& n = nodes_[static_cast<size_t>(node)];
  if (n.is_leaf() || h >= n.bottom) {
    const Cell c = cell_of(CellRef{node, h});
    if (ball == nullptr || box_intersects_ball(c, *ball)) out.push_back(c);
    return;
  }
  if (ball != nullptr && !box_intersects_ball(n.cell, *ball)) return;
  for (int ch : n.children) collect(ch, ball, h, out);
}

std::vector<Cell> Quadtree::nonempty_cells_intersecting(const Ball& ball, int h) const {
  std::vector<Cell> out;
  collect(0, &ball, h, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cell> Quadtree::nonempty_cells(int h) const {
  std::vector<Cell> out;
  collect(0, nullptr, h, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cechx
