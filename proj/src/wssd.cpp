#include "cechx/wssd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "cechx/errors.hpp"
#include "cechx/sampling.hpp"
#include "cechx/wspd.hpp"

namespace cechx {

size_t WSSD::total_size() const {
  size_t s = 0;
  for (const auto& g : gammas) s += g.size();
  return s;
}

int grid_height_for(double r, double eps, int d) {
  if (!(r > 0.0)) throw InvalidInput("grid_height_for: radius must be positive");
  const double x = eps * r / (2.0 * std::sqrt(static_cast<double>(d)));
  int e = 0;
  std::frexp(x, &e);  // x = m 2^e, m in [0.5, 1)
  return e - 1;
}

WSSD build_wssd(const Quadtree& qt, double eps, int kmax) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("build_wssd: eps must lie in (0, 1)");
  const int d = qt.dim();
  if (kmax < 1 || kmax > d) throw InvalidInput("build_wssd: kmax must lie in [1, d]");

  WSSD out;
  out.epsilon = eps;
  out.kmax = kmax;

  const WSPD base = build_wspd(qt, eps / 2.0);
  std::vector<WST> gamma1;
  gamma1.reserve(base.pairs.size());
  for (const WSPair& p : base.pairs) {
    WST t;
    t.cells = {p.a, p.b};
    t.rad = rad_of_cells(t.cells);
    gamma1.push_back(std::move(t));
  }
  out.gammas.push_back(std::move(gamma1));

  for (int k = 2; k <= kmax; ++k) {
    const std::vector<WST>& prev = out.gammas.back();
    std::unordered_set<std::vector<Cell>, CellTupleHash> seen;
    std::vector<WST> next;
    for (const WST& gamma : prev) {
      const MebResult enclosing = meb_of_cells(gamma.cells);
      const int h = grid_height_for(enclosing.ball.radius, eps, d);
      const Ball doubled = expand(enclosing.ball, 2.0);
      for (const Cell& extra : qt.nonempty_cells_intersecting(doubled, h)) {
        std::vector<Cell> cells = gamma.cells;
        cells.insert(std::upper_bound(cells.begin(), cells.end(), extra), extra);
        if (!seen.insert(cells).second) continue;
        WST t;
        t.rad = rad_of_cells(cells);
        t.cells = std::move(cells);
        next.push_back(std::move(t));
      }
    }
    std::sort(next.begin(), next.end(), [](const WST& a, const WST& b) { return a.cells < b.cells; });
    out.gammas.push_back(std::move(next));
  }
  return out;
}

CoverageReport coverage(const Quadtree& qt, const WSSD& wssd, int k) {
  const int n = qt.cloud().size();
  if (n > 24) throw InvalidInput("coverage: exhaustive check limited to 24 points");
  if (k < 1 || k > wssd.kmax) throw InvalidInput("coverage: k outside the decomposition");
  CoverageReport rep;
  rep.k = k;
  std::set<std::vector<int>> hit;
  for (const WST& t : wssd.gamma(k)) {
    std::vector<std::vector<int>> members;
    for (const Cell& c : t.cells) members.push_back(qt.points_in(c));
    std::vector<int> pick;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == members.size()) {
        std::vector<int> s = pick;
        std::sort(s.begin(), s.end());
        hit.insert(std::move(s));
        return;
      }
      for (int v : members[i]) {
        if (std::find(pick.begin(), pick.end(), v) != pick.end()) continue;
        pick.push_back(v);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  std::vector<int> cur;
  std::function<void(int)> enumerate = [&](int start) {
    if (static_cast<int>(cur.size()) == k + 1) {
      ++rep.total;
      if (hit.contains(cur)) ++rep.covered;
      else if (rep.uncovered.size() < 16) rep.uncovered.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      enumerate(v + 1);
      cur.pop_back();
    }
  };
  enumerate(0);
  return rep;
}

bool covers(const WST& t, std::span<const int> sigma, const NormalizedCloud& cloud) {
  const size_t m = t.cells.size();
  if (sigma.size() != m) throw InvalidInput("covers: simplex arity differs from tuple arity");
  // adjacency[v] = bitmask of cells containing vertex v
  std::vector<unsigned> adjacency(m, 0u);
  for (size_t v = 0; v < m; ++v) {
    const Vec& x = cloud.points.at(static_cast<size_t>(sigma[v])).coords;
    for (size_t c = 0; c < m; ++c)
      if (t.cells[c].contains(x)) adjacency[v] |= 1u << c;
    if (adjacency[v] == 0u) return false;
  }
  std::vector<int> owner(m, -1);
  std::function<bool(size_t, unsigned&)> augment = [&](size_t v, unsigned& visited) {
    for (size_t c = 0; c < m; ++c) {
      if (!(adjacency[v] >> c & 1u) || (visited >> c & 1u)) continue;
      visited |= 1u << c;
      if (owner[c] < 0 || augment(static_cast<size_t>(owner[c]), visited)) {
        owner[c] = static_cast<int>(v);
        return true;
      }
    }
    return false;
  };
  for (size_t v = 0; v < m; ++v) {
    unsigned visited = 0u;
    if (!augment(v, visited)) return false;
  }
  return true;
}

double removable_point_factor(int m) {
  if (m <= 1) return std::numeric_limits<double>::infinity();
  const double x = m;
  return (1.0 + 1.0 / x) / std::sqrt(1.0 - 1.0 / (x * x));
}

int removable_point_check(std::span<const Point> points) {
  if (points.size() < 3) throw InvalidInput("removable_point_check: need at least 3 points");
  const int m = std::min(points.front().dim(), static_cast<int>(points.size()) - 1);
  const double factor = removable_point_factor(m);
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<Point> rest;
    rest.reserve(points.size() - 1);
    for (size_t j = 0; j < points.size(); ++j)
      if (j != i) rest.push_back(points[j]);
    const MebResult m = meb(rest);
    const double reach = distance(points[i].coords, m.ball.center);
    if (reach <= factor * m.ball.radius * (1.0 + kGeomTol) + 1e-12) return points[i].id;
  }
  throw std::logic_error("removable_point_check: no point qualifies");
}

bool wst_ball_property_check(const WST& t, double eps, int trials, std::mt19937_64& rng) {
  std::vector<Vec> corners;
  std::vector<Cell> distinct = t.cells;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (const Cell& c : distinct)
    for (Vec& v : c.corners()) corners.push_back(std::move(v));
  for (int trial = 0; trial < trials; ++trial) {
    const Ball grown = expand(sample_ball_meeting(t.cells, rng), 1.0 + eps);
    for (const Vec& v : corners)
      if (!grown.contains(v)) return false;
  }
  return true;
}

bool wst_height_bound(const WST& t, double eps) {
  if (t.cells.empty()) return true;
  const double d = t.cells.front().dim;
  const double limit = eps * t.rad / std::sqrt(d);
  for (const Cell& c : t.cells)
    if (c.side() > limit * (1.0 + 1e-12)) return false;
  return true;
}

}  // namespace cechx
