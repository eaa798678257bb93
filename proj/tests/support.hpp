#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "cechx/geometry.hpp"

namespace testing_support {

using cechx::Point;
using cechx::PointCloud;
using cechx::Vec;

inline PointCloud random_cloud(std::mt19937_64& rng, int n, int d, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  PointCloud out;
  for (int i = 0; i < n; ++i) {
    Point p;
    p.id = i;
    for (int j = 0; j < d; ++j) p.coords.push_back(u(rng));
    out.push_back(std::move(p));
  }
  return out;
}

inline PointCloud equilateral_triangle() {
  return {Point{{-1.0, 0.0}, 0}, Point{{1.0, 0.0}, 1}, Point{{0.0, std::sqrt(3.0)}, 2}};
}

inline PointCloud from_coords(const std::vector<Vec>& coords) {
  PointCloud out;
  for (size_t i = 0; i < coords.size(); ++i) out.push_back(Point{coords[i], static_cast<int>(i)});
  return out;
}

// Solves A x = b by Gaussian elimination with partial pivoting; false if singular.
inline bool solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) < 1e-12) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

// Circumscribed ball of the given points with center in their affine hull,
// via the normal equations of the Gram system. False when degenerate.
inline bool circumball(const std::vector<Vec>& pts, Vec& center, double& radius) {
  const size_t m = pts.size();
  const size_t d = pts[0].size();
  if (m == 1) {
    center = pts[0];
    radius = 0.0;
    return true;
  }
  const size_t k = m - 1;
  std::vector<Vec> v(k, Vec(d));
  for (size_t i = 0; i < k; ++i)
    for (size_t t = 0; t < d; ++t) v[i][t] = pts[i + 1][t] - pts[0][t];
  std::vector<std::vector<double>> g(k, std::vector<double>(k));
  std::vector<double> rhs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (size_t t = 0; t < d; ++t) s += v[i][t] * v[j][t];
      g[i][j] = s;
    }
    rhs[i] = 0.5 * g[i][i];
  }
  std::vector<double> y;
  if (!solve(g, rhs, y)) return false;
  center = pts[0];
  for (size_t i = 0; i < k; ++i)
    for (size_t t = 0; t < d; ++t) center[t] += y[i] * v[i][t];
  radius = 0.0;
  for (size_t t = 0; t < d; ++t) radius += (center[t] - pts[0][t]) * (center[t] - pts[0][t]);
  radius = std::sqrt(radius);
  return true;
}

// Smallest enclosing radius by trying every subset of at most d+1 points as a
// boundary set. Exponential; for small inputs only.
inline double brute_meb_radius(const std::vector<Vec>& pts) {
  const size_t n = pts.size();
  const size_t d = pts[0].size();
  double best = INFINITY;
  std::vector<Vec> cur;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (!cur.empty()) {
      Vec c;
      double r = 0.0;
      if (circumball(cur, c, r) && r < best) {
        bool ok = true;
        for (const Vec& p : pts) {
          double s = 0.0;
          for (size_t t = 0; t < d; ++t) s += (p[t] - c[t]) * (p[t] - c[t]);
          if (std::sqrt(s) > r * (1.0 + 1e-10) + 1e-12) {
            ok = false;
            break;
          }
        }
        if (ok) best = r;
      }
    }
    if (cur.size() == d + 1) return;
    for (size_t i = start; i < n; ++i) {
      cur.push_back(pts[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return best;
}

inline std::vector<Vec> coords_of(const PointCloud& cloud, const std::vector<int>& positions) {
  std::vector<Vec> out;
  for (int p : positions) out.push_back(cloud[static_cast<size_t>(p)].coords);
  return out;
}

// Calls f on every k-subset of {0..n-1}.
inline void for_each_subset_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      f(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace testing_support
