#include "cechx/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "cechx/errors.hpp"

namespace cechx {

namespace {

constexpr double kRelTol = 1e-12;

bool within(double a, double b, double c) {
  // a in [b/c, c b], allowing rounding in the ratio
  return a <= c * b * (1.0 + kRelTol) && b <= c * a * (1.0 + kRelTol);
}

bool compatible(const PersistencePoint& p, const PersistencePoint& q, double c) {
  if (p.infinite() != q.infinite()) return false;
  if ((p.birth == 0.0) != (q.birth == 0.0)) return false;
  if (p.birth != 0.0 && !within(p.birth, q.birth, c)) return false;
  if (!p.infinite() && !within(p.death, q.death, c)) return false;
  return true;
}

bool droppable(const PersistencePoint& p, double c) {
  return !p.infinite() && p.death <= c * c * p.birth * (1.0 + kRelTol);
}

// Maximum matching by augmenting paths; left/right vertex counts from adjacency.
int max_matching(const std::vector<std::vector<int>>& adj, int right, std::vector<int>& match_right) {
  match_right.assign(static_cast<size_t>(right), -1);
  std::vector<int> seen(static_cast<size_t>(right), -1);
  std::function<bool(int, int)> augment = [&](int u, int stamp) {
    for (int v : adj[static_cast<size_t>(u)]) {
      if (seen[static_cast<size_t>(v)] == stamp) continue;
      seen[static_cast<size_t>(v)] = stamp;
      if (match_right[static_cast<size_t>(v)] < 0 || augment(match_right[static_cast<size_t>(v)], stamp)) {
        match_right[static_cast<size_t>(v)] = u;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (int u = 0; u < static_cast<int>(adj.size()); ++u)
    if (augment(u, u)) ++size;
  return size;
}

}  // namespace

ApproxReport is_c_approximation(const std::vector<PersistencePoint>& d1, const std::vector<PersistencePoint>& d2,
                                double c) {
  if (!(c >= 1.0)) throw InvalidInput("is_c_approximation: c must be at least 1");
  const int a = static_cast<int>(d1.size());
  const int b = static_cast<int>(d2.size());
  ApproxReport rep;
  rep.c = c;

  // Left: d1 points then diagonal slots for d2. Right: d2 points then diagonal
  // slots for d1.
  std::vector<std::vector<int>> adj(static_cast<size_t>(a + b));
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j)
      if (compatible(d1[static_cast<size_t>(i)], d2[static_cast<size_t>(j)], c)) adj[static_cast<size_t>(i)].push_back(j);
    if (droppable(d1[static_cast<size_t>(i)], c)) adj[static_cast<size_t>(i)].push_back(b + i);
    if (adj[static_cast<size_t>(i)].empty() && !rep.violator) rep.violator = d1[static_cast<size_t>(i)];
  }
  for (int j = 0; j < b; ++j) {
    auto& row = adj[static_cast<size_t>(a + j)];
    if (droppable(d2[static_cast<size_t>(j)], c)) row.push_back(j);
    for (int i = 0; i < a; ++i) row.push_back(b + i);
  }
  std::vector<int> match_right;
  const int size = max_matching(adj, a + b, match_right);
  rep.matched = size == a + b;
  if (rep.matched) {
    rep.violator.reset();
    for (int v = 0; v < a + b; ++v) {
      const int u = match_right[static_cast<size_t>(v)];
      if (u < a && v < b) rep.matching.emplace_back(u, v);
      else if (u < a) rep.matching.emplace_back(u, -1);
      else if (v < b) rep.matching.emplace_back(-1, v);
    }
    std::sort(rep.matching.begin(), rep.matching.end());
  } else if (!rep.violator) {
    for (int j = 0; j < b && !rep.violator; ++j) {
      bool any = droppable(d2[static_cast<size_t>(j)], c);
      for (int i = 0; i < a && !any; ++i) any = compatible(d1[static_cast<size_t>(i)], d2[static_cast<size_t>(j)], c);
      if (!any) rep.violator = d2[static_cast<size_t>(j)];
    }
  }
  return rep;
}

double bottleneck_log(const std::vector<PersistencePoint>& d1, const std::vector<PersistencePoint>& d2) {
  std::vector<double> cand{1.0};
  const auto ratio = [](double x, double y) { return x > y ? x / y : y / x; };
  for (const auto& p : d1) {
    for (const auto& q : d2) {
      if (p.infinite() != q.infinite() || (p.birth == 0.0) != (q.birth == 0.0)) continue;
      double r = 1.0;
      if (p.birth != 0.0) r = std::max(r, ratio(p.birth, q.birth));
      if (!p.infinite()) r = std::max(r, ratio(p.death, q.death));
      cand.push_back(r);
    }
  }
  for (const auto* d : {&d1, &d2})
    for (const auto& p : *d)
      if (!p.infinite() && p.birth > 0.0) cand.push_back(std::max(1.0, std::sqrt(p.death / p.birth)));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  if (!is_c_approximation(d1, d2, cand.back()).matched) return std::numeric_limits<double>::infinity();
  size_t lo = 0;
  size_t hi = cand.size() - 1;  // feasible
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (is_c_approximation(d1, d2, cand[mid]).matched) hi = mid;
    else lo = mid + 1;
  }
  return std::log(cand[hi]);
}

double bottleneck_log(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  double worst = 0.0;
  const int top = std::max(d1.pmax(), d2.pmax());
  for (int p = 0; p <= top; ++p) worst = std::max(worst, bottleneck_log(d1.at(p), d2.at(p)));
  return worst;
}

}  // namespace cechx
