#include "cechx/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "cechx/errors.hpp"

namespace cechx {

namespace {

int snapped_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<int>(r);
  return static_cast<int>(std::ceil(x));
}

void check_enumerable(const PointCloud& points, int cap) {
  if (points.empty()) throw InvalidInput("coreset: empty point set");
  if (static_cast<int>(points.size()) > cap)
    throw InvalidInput("coreset: exhaustive search limited to " + std::to_string(cap) + " points");
}

double radius_of(const PointCloud& points, const std::vector<int>& positions) {
  return meb_radius(points, positions);
}

// Visits k-subsets of {0..n-1} in lexicographic order; stop when visit returns true.
bool for_each_k_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> cur(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) cur[i] = i;
  if (k > n || k <= 0) return false;
  while (true) {
    if (visit(cur)) return true;
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) return false;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

std::vector<int> positions_of(const PointCloud& points, const std::vector<int>& ids) {
  std::vector<int> pos;
  pos.reserve(ids.size());
  for (int id : ids) {
    auto it = std::find_if(points.begin(), points.end(), [id](const Point& p) { return p.id == id; });
    if (it == points.end()) throw InvalidInput("coreset: unknown point id " + std::to_string(id));
    pos.push_back(static_cast<int>(it - points.begin()));
  }
  return pos;
}

std::vector<int> ids_of(const PointCloud& points, const std::vector<int>& positions) {
  std::vector<int> ids;
  ids.reserve(positions.size());
  for (int p : positions) ids.push_back(points[static_cast<size_t>(p)].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<int> all_positions(const PointCloud& points) {
  std::vector<int> all(points.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return all;
}

double factor(double rad_p, double rad_c) {
  if (rad_c > 0.0) return rad_p / rad_c;
  return rad_p > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

bool radius_ok(double rad_p, double rad_c, double eps) {
  return rad_p <= (1.0 + eps) * rad_c * (1.0 + 1e-12) + 1e-15;
}

bool meb_ok(const PointCloud& points, const std::vector<int>& positions, double eps) {
  std::vector<Vec> coords;
  for (int p : positions) coords.push_back(points[static_cast<size_t>(p)].coords);
  const Ball b = expand(meb_of_coords(coords).ball, 1.0 + eps);
  for (const Point& p : points)
    if (!b.contains(p.coords)) return false;
  return true;
}

CoresetResult make_result(const PointCloud& points, const std::vector<int>& positions, CoresetKind kind,
                          double eps) {
  CoresetResult r;
  r.subset = ids_of(points, positions);
  r.kind = kind;
  r.eps = eps;
  r.achieved_factor = factor(radius_of(points, all_positions(points)), radius_of(points, positions));
  r.whole_set = positions.size() == points.size();
  return r;
}

}  // namespace

int delta(double eps) {
  if (!(eps > 0.0)) throw InvalidInput("delta: eps must be positive");
  return snapped_ceil(1.0 / (2.0 * eps + eps * eps) + 1.0);
}

double r_k(const PointCloud& points, int k) {
  check_enumerable(points, kMaxEnumeration);
  const int n = static_cast<int>(points.size());
  if (k < 2 || k > n) throw InvalidInput("r_k: k must lie in [2, n]");
  double best = 0.0;
  for_each_k_subset(n, k, [&](const std::vector<int>& s) {
    best = std::max(best, radius_of(points, s));
    return false;
  });
  return best;
}

bool is_radius_coreset(const PointCloud& points, const std::vector<int>& subset_ids, double eps) {
  if (subset_ids.empty()) return false;
  return radius_ok(radius_of(points, all_positions(points)), radius_of(points, positions_of(points, subset_ids)),
                   eps);
}

bool is_meb_coreset(const PointCloud& points, const std::vector<int>& subset_ids, double eps) {
  if (subset_ids.empty()) return false;
  return meb_ok(points, positions_of(points, subset_ids), eps);
}

CoresetResult radius_coreset_greedy(const PointCloud& points, double eps) {
  if (points.empty()) throw InvalidInput("coreset: empty point set");
  const size_t target = static_cast<size_t>(delta(eps));
  std::vector<int> cur = all_positions(points);
  // Remove by ascending id on ties; iterate candidates in id order.
  while (cur.size() > target) {
    std::vector<int> order = cur;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return points[static_cast<size_t>(a)].id < points[static_cast<size_t>(b)].id; });
    double best = -1.0;
    int drop = -1;
    for (int cand : order) {
      std::vector<int> rest;
      for (int p : cur)
        if (p != cand) rest.push_back(p);
      const double r = radius_of(points, rest);
      if (r > best) {
        best = r;
        drop = cand;
      }
    }
    cur.erase(std::find(cur.begin(), cur.end(), drop));
  }
  return make_result(points, cur, CoresetKind::Radius, eps);
}

CoresetResult radius_coreset_min(const PointCloud& points, double eps) {
  check_enumerable(points, kMaxEnumeration);
  const int n = static_cast<int>(points.size());
  const double rad_p = radius_of(points, all_positions(points));
  for (int k = 1; k <= n; ++k) {
    std::vector<int> found;
    if (for_each_k_subset(n, k, [&](const std::vector<int>& s) {
          if (!radius_ok(rad_p, radius_of(points, s), eps)) return false;
          found = s;
          return true;
        }))
      return make_result(points, found, CoresetKind::Radius, eps);
  }
  return make_result(points, all_positions(points), CoresetKind::Radius, eps);
}

CoresetResult meb_coreset(const PointCloud& points, double eps) {
  if (points.empty()) throw InvalidInput("coreset: empty point set");
  const auto farthest_from = [&](const Vec& x) {
    int best = 0;
    double bd = -1.0;
    for (size_t i = 0; i < points.size(); ++i) {
      const double t = squared_distance(points[i].coords, x);
      if (t > bd) {
        bd = t;
        best = static_cast<int>(i);
      }
    }
    return best;
  };
  std::vector<int> cur;
  if (points.size() == 1) {
    cur = {0};
  } else {
    const int a = farthest_from(points[0].coords);
    const int b = farthest_from(points[static_cast<size_t>(a)].coords);
    cur = {a};
    if (b != a) cur.push_back(b);
    while (!meb_ok(points, cur, eps)) {
      std::vector<Vec> coords;
      for (int p : cur) coords.push_back(points[static_cast<size_t>(p)].coords);
      const int next = farthest_from(meb_of_coords(coords).ball.center);
      if (std::find(cur.begin(), cur.end(), next) != cur.end()) break;
      cur.push_back(next);
    }
  }
  return make_result(points, cur, CoresetKind::Meb, eps);
}

CoresetResult meb_coreset_min(const PointCloud& points, double eps) {
  check_enumerable(points, kMaxEnumeration);
  const int n = static_cast<int>(points.size());
  for (int k = 1; k <= n; ++k) {
    std::vector<int> found;
    if (for_each_k_subset(n, k, [&](const std::vector<int>& s) {
          if (!meb_ok(points, s, eps)) return false;
          found = s;
          return true;
        }))
      return make_result(points, found, CoresetKind::Meb, eps);
  }
  return make_result(points, all_positions(points), CoresetKind::Meb, eps);
}

PointCloud standard_simplex(int d) {
  if (d < 1 || d > kMaxDim) throw InvalidInput("standard_simplex: unsupported dimension");
  PointCloud out;
  for (int i = 0; i < d; ++i) {
    Point p;
    p.coords.assign(static_cast<size_t>(d), 0.0);
    p.coords[static_cast<size_t>(i)] = 1.0;
    p.id = i;
    out.push_back(std::move(p));
  }
  return out;
}

int standard_simplex_coreset_size(int d, double eps) {
  const double a = (1.0 + eps) * (1.0 + eps);
  return snapped_ceil(a / (a - static_cast<double>(d - 1) / d));
}

double telescoping_product(int j, int i) {
  if (j < 2 || i < j) throw InvalidInput("telescoping_product: need 2 <= j <= i");
  double p = 1.0;
  for (int t = j; t < i; ++t) p *= t / std::sqrt(static_cast<double>(t) * t - 1.0);
  return p;
}

double telescoping_closed_form(int j, int i) {
  if (j < 2 || i < j) throw InvalidInput("telescoping_closed_form: need 2 <= j <= i");
  return std::sqrt(static_cast<double>(j) * (i - 1) / (static_cast<double>(i) * (j - 1)));
}

JungReport jung_check(const PointCloud& points, double tol) {
  check_enumerable(points, kMaxEnumeration);
  const auto leq = [tol](double a, double b) { return a <= b + tol * std::max(1.0, std::abs(b)); };
  JungReport rep;
  const int n = static_cast<int>(points.size());
  const int d = points.front().dim();
  rep.dim = d;
  rep.rad = radius_of(points, all_positions(points));
  rep.diam = diam(points);
  const int top = std::min(n, d + 1);
  rep.r.assign(static_cast<size_t>(std::max(top, 1)) + 1, 0.0);
  for (int k = 2; k <= top; ++k) rep.r[static_cast<size_t>(k)] = r_k(points, k);

  const double c = std::sqrt(2.0 * d / (d + 1.0));
  rep.jung_radius_reading_rhs = c * rep.diam / 2.0;
  rep.jung_diameter_reading_rhs = c * rep.diam;
  rep.all_hold = leq(rep.rad, rep.jung_radius_reading_rhs) && leq(rep.rad, rep.jung_diameter_reading_rhs);

  if (n >= d + 1) {
    const double rt = rep.r[static_cast<size_t>(d + 1)];
    rep.r_top_equals_rad = std::abs(rt - rep.rad) <= tol * std::max(1.0, rep.rad);
    rep.all_hold = rep.all_hold && rep.r_top_equals_rad;
  }
  for (int i = 2; i <= top; ++i) {
    for (int j = 2; j <= i; ++j) {
      JungPair jp{i, j, rep.r[static_cast<size_t>(i)],
                  telescoping_closed_form(j, i) * rep.r[static_cast<size_t>(j)]};
      rep.all_hold = rep.all_hold && leq(jp.lhs, jp.rhs);
      rep.generalized.push_back(jp);
    }
  }
  return rep;
}

FaceLemma face_lemma_check(const PointCloud& q, double tol) {
  const int k = static_cast<int>(q.size()) - 1;
  if (k < 2) throw InvalidInput("face_lemma_check: need at least 3 points");
  FaceLemma out;
  out.rad = radius_of(q, all_positions(q));
  out.rhs = k / std::sqrt(static_cast<double>(k) * k - 1.0) * r_k(q, k);
  out.holds = out.rad <= out.rhs + tol * std::max(1.0, out.rhs);
  return out;
}

}  // namespace cechx
