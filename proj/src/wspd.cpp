#include "cechx/wspd.hpp"

#include <algorithm>
#include <set>

#include "cechx/errors.hpp"
#include "cechx/sampling.hpp"

namespace cechx {

namespace {

class WspdBuilder {
 public:
  WspdBuilder(const Quadtree& qt, double eps) : qt_(qt), eps_(eps) {}

  void run() { recurse_self(qt_.root_ref()); }

  std::vector<WSPair> take() {
    std::vector<WSPair> out;
    out.reserve(seen_.size());
    for (const auto& [a, b] : seen_) {
      out.push_back(WSPair{a, b, std::max(a.diameter(), b.diameter()), box_distance(a, b)});
    }
    return out;
  }

 private:
  using Ref = Quadtree::CellRef;

  bool is_single_location(const Ref& r) const { return qt_.nodes()[static_cast<size_t>(r.node)].is_leaf(); }

  void recurse_self(const Ref& u) {
    if (is_single_location(u)) return;
    const auto kids = qt_.children_of(u);
    for (size_t i = 0; i < kids.size(); ++i) {
      recurse_self(kids[i]);
      for (size_t j = i + 1; j < kids.size(); ++j) recurse_pair(kids[i], kids[j]);
    }
  }

  void recurse_pair(Ref u, Ref v) {
    const Cell cu = qt_.cell_of(u);
    const Cell cv = qt_.cell_of(v);
    if (is_well_separated(cu, cv, eps_)) {
      seen_.insert(cu < cv ? std::pair{cu, cv} : std::pair{cv, cu});
      return;
    }
    if (v.height > u.height) std::swap(u, v);
    for (const Ref& child : qt_.children_of(u)) recurse_pair(child, v);
  }

  const Quadtree& qt_;
  double eps_;
  std::set<std::pair<Cell, Cell>> seen_;
};

}  // namespace

bool is_well_separated(const Cell& q, const Cell& q2, double eps) {
  if (q == q2) return false;
  const double dist = box_distance(q, q2);
  if (dist <= 0.0) return false;
  return std::max(q.diameter(), q2.diameter()) <= eps * dist;
}

WSPD build_wspd(const Quadtree& qt, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("build_wspd: eps must lie in (0, 1)");
  WspdBuilder builder(qt, eps);
  builder.run();
  return WSPD{eps, builder.take()};
}

bool pair_covers(const WSPair& pair, std::span<const double> p, std::span<const double> q) {
  return (pair.a.contains(p) && pair.b.contains(q)) || (pair.a.contains(q) && pair.b.contains(p));
}

bool wspd_ball_property_check(const WSPair& pair, double eps, int trials, std::mt19937_64& rng) {
  const std::vector<Cell> cells{pair.a, pair.b};
  for (int t = 0; t < trials; ++t) {
    const Ball ball = sample_ball_meeting(cells, rng);
    const Ball grown = expand(ball, 1.0 + 2.0 * eps);
    for (const Cell& c : cells)
      for (const Vec& corner : c.corners())
        if (!grown.contains(corner)) return false;
  }
  return true;
}

}  // namespace cechx
