#include "cechx/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cechx/errors.hpp"

namespace cechx {

namespace {

// Move-to-front enclosing ball solver over borrowed coordinate pointers.
// The current ball is global state: push() replaces it with the circumball of
// the enlarged support set and pop only shrinks the support stack, so after a
// recursive call returns the ball already encloses the processed prefix.
class MtfSolver {
 public:
  MtfSolver(std::vector<const double*> pts, int d) : pts_(std::move(pts)), d_(d) {
    order_.resize(pts_.size());
    for (size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
  }

  void solve() {
    for (int attempt = 0; attempt < 4; ++attempt) {
      stack_.clear();
      r2_ = -1.0;
      last_support_.clear();
      mtf(order_.size());
      if (encloses_all()) return;
    }
    // Numerical fallback: keep the center, grow the radius to cover everything.
    double worst = r2_;
    for (const double* p : pts_) worst = std::max(worst, sq_to_center(p));
    r2_ = worst;
  }

  Vec center() const { return Vec(center_.begin(), center_.begin() + d_); }
  double radius() const { return std::sqrt(std::max(r2_, 0.0)); }
  const std::vector<int>& support() const { return last_support_; }

 private:
  double sq_to_center(const double* p) const {
    double s = 0.0;
    for (int i = 0; i < d_; ++i) {
      const double t = p[i] - center_[i];
      s += t * t;
    }
    return s;
  }

  bool outside(int idx) const {
    if (r2_ < 0.0) return true;
    return sq_to_center(pts_[idx]) - r2_ > 1e-13 * r2_;
  }

  bool encloses_all() const {
    const double r = radius();
    for (const double* p : pts_) {
      double mag = 0.0;
      for (int i = 0; i < d_; ++i) mag = std::max(mag, std::abs(p[i]));
      if (std::sqrt(sq_to_center(p)) > r * (1.0 + kGeomTol) + 1e-12 * (1.0 + mag)) return false;
    }
    return true;
  }

  void mtf(size_t end) {
    if (static_cast<int>(stack_.size()) == d_ + 1) return;
    for (size_t i = 0; i < end; ++i) {
      const int idx = order_[i];
      if (!outside(idx)) continue;
      if (!push(idx)) continue;
      mtf(i);
      stack_.pop_back();
      std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(i),
                  order_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
  }

  // Circumball of stack_ + idx with center in the affine hull, via modified
  // Gram-Schmidt on the difference vectors. Fails for affinely dependent sets.
  bool push(int idx) {
    const double* s0 = stack_.empty() ? pts_[idx] : pts_[stack_.front()];
    std::array<const double*, kMaxDim + 1> members{};
    int m = 0;
    for (int s : stack_) members[m++] = pts_[s];
    members[m++] = pts_[idx];
    const int k = m - 1;  // number of difference vectors

    if (k == 0) {
      std::copy(s0, s0 + d_, center_.begin());
      r2_ = 0.0;
      stack_.push_back(idx);
      last_support_ = stack_;
      return true;
    }
    if (k > d_) return false;

    // q[j] orthonormal basis, rmat[i][j] = <v_i, q_j> for j <= i.
    std::array<std::array<double, kMaxDim>, kMaxDim> q{};
    std::array<std::array<double, kMaxDim>, kMaxDim> rmat{};
    std::array<double, kMaxDim> b{};
    for (int i = 0; i < k; ++i) {
      std::array<double, kMaxDim> v{};
      double norm2 = 0.0;
      for (int t = 0; t < d_; ++t) {
        v[t] = members[i + 1][t] - s0[t];
        norm2 += v[t] * v[t];
      }
      b[i] = 0.5 * norm2;
      if (norm2 == 0.0) return false;
      std::array<double, kMaxDim> w = v;
      for (int j = 0; j < i; ++j) {
        double dot = 0.0;
        for (int t = 0; t < d_; ++t) dot += w[t] * q[j][t];
        rmat[i][j] = dot;
        for (int t = 0; t < d_; ++t) w[t] -= dot * q[j][t];
      }
      double res2 = 0.0;
      for (int t = 0; t < d_; ++t) res2 += w[t] * w[t];
      if (res2 <= 1e-14 * norm2) return false;
      const double res = std::sqrt(res2);
      rmat[i][i] = res;
      for (int t = 0; t < d_; ++t) q[i][t] = w[t] / res;
    }
    // Solve sum_{j<=i} rmat[i][j] y_j = b_i (lower triangular).
    std::array<double, kMaxDim> y{};
    for (int i = 0; i < k; ++i) {
      double acc = b[i];
      for (int j = 0; j < i; ++j) acc -= rmat[i][j] * y[j];
      y[i] = acc / rmat[i][i];
    }
    double r2 = 0.0;
    for (int t = 0; t < d_; ++t) {
      double off = 0.0;
      for (int j = 0; j < k; ++j) off += y[j] * q[j][t];
      center_[t] = s0[t] + off;
      r2 += off * off;
    }
    r2_ = r2;
    stack_.push_back(idx);
    last_support_ = stack_;
    return true;
  }

  std::vector<const double*> pts_;
  int d_;
  std::vector<int> order_;
  std::vector<int> stack_;
  std::vector<int> last_support_;
  std::array<double, kMaxDim> center_{};
  double r2_ = -1.0;
};

int checked_dim(std::span<const Vec> points) {
  if (points.empty()) throw InvalidInput("meb: empty point set");
  const int d = static_cast<int>(points.front().size());
  if (d < 1 || d > kMaxDim)
    throw InvalidInput("meb: dimension " + std::to_string(d) + " outside [1, " +
                       std::to_string(kMaxDim) + "]");
  for (const Vec& p : points) {
    if (static_cast<int>(p.size()) != d) throw InvalidInput("meb: mixed dimensions");
    for (double x : p)
      if (!std::isfinite(x)) throw InvalidInput("meb: non-finite coordinate");
  }
  return d;
}

MtfSolver run_solver(std::span<const Vec> points) {
  const int d = checked_dim(points);
  std::vector<const double*> ptrs;
  ptrs.reserve(points.size());
  for (const Vec& p : points) ptrs.push_back(p.data());
  MtfSolver solver(std::move(ptrs), d);
  solver.solve();
  return solver;
}

}  // namespace

bool Ball::contains(std::span<const double> x, double rel_tol) const {
  return distance(center, x) <= radius * (1.0 + rel_tol) + 1e-12;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

MebResult meb_of_coords(std::span<const Vec> points) {
  MtfSolver solver = run_solver(points);
  MebResult out;
  out.ball.center = solver.center();
  out.ball.radius = solver.radius();
  out.support = solver.support();
  std::sort(out.support.begin(), out.support.end());
  return out;
}

double meb_radius(std::span<const Vec> points) { return run_solver(points).radius(); }

MebResult meb(std::span<const Point> points) {
  std::vector<Vec> coords;
  coords.reserve(points.size());
  for (const Point& p : points) coords.push_back(p.coords);
  MebResult out = meb_of_coords(coords);
  for (int& s : out.support) s = points[static_cast<size_t>(s)].id;
  std::sort(out.support.begin(), out.support.end());
  return out;
}

double meb_radius(std::span<const Point> points, std::span<const int> subset) {
  if (subset.empty()) throw InvalidInput("meb: empty point set");
  const int d = points[static_cast<size_t>(subset.front())].dim();
  if (d < 1 || d > kMaxDim) throw InvalidInput("meb: unsupported dimension");
  std::vector<const double*> ptrs;
  ptrs.reserve(subset.size());
  for (int i : subset) {
    const Point& p = points[static_cast<size_t>(i)];
    if (p.dim() != d) throw InvalidInput("meb: mixed dimensions");
    ptrs.push_back(p.coords.data());
  }
  MtfSolver solver(std::move(ptrs), d);
  solver.solve();
  return solver.radius();
}

double diam(std::span<const Point> points) {
  if (points.empty()) throw InvalidInput("diam: empty point set");
  double best = 0.0;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, squared_distance(points[i].coords, points[j].coords));
  return std::sqrt(best);
}

Ball expand(const Ball& ball, double factor) {
  if (!(factor >= 0.0)) throw InvalidInput("expand: negative factor");
  return Ball{ball.center, ball.radius * factor};
}

}  // namespace cechx
