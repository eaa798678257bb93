#include "cechx/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cechx/errors.hpp"

namespace cechx {

double theta(int ell, double eps) { return std::pow(1.0 + eps / 2.0, ell); }

ScaleParams scale_params(double alpha, double eps, int d) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("scale_params: alpha must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("scale_params: eps must lie in (0, 1)");
  ScaleParams s;
  s.eps = eps;
  s.alpha = alpha;
  int k = static_cast<int>(std::floor(std::log(alpha) / std::log1p(eps / 2.0)));
  while (theta(k, eps) > alpha) --k;
  while (theta(k + 1, eps) <= alpha) ++k;
  s.k_alpha = k;
  s.theta_k = theta(k, eps);
  int e = 0;
  std::frexp(eps * s.theta_k / (3.0 * std::sqrt(static_cast<double>(d))), &e);
  s.h_alpha = e - 1;
  return s;
}

int ApproxComplex::vertex_of(const Cell& c) const {
  auto it = index.find(c);
  if (it == index.end()) throw std::out_of_range("approximation complex: cell is not a vertex");
  return it->second;
}

namespace {

int max_height(const WST& t) {
  int h = t.cells.front().height;
  for (const Cell& c : t.cells) h = std::max(h, c.height);
  return h;
}

}  // namespace

ApproxComplex build_approx_complex(const Quadtree& qt, const WSSD& wssd, double eps, double alpha) {
  if (std::abs(wssd.epsilon * 12.0 - eps) > 1e-12 * eps)
    throw InvalidInput("build_approx_complex: WSSD parameter must be eps / 12");
  ApproxComplex a;
  a.params = scale_params(alpha, eps, qt.dim());
  const int h = a.params.h_alpha;
  const double limit = a.params.theta_k * (1.0 + 1e-12);

  a.cells = qt.nonempty_cells(h);
  for (size_t i = 0; i < a.cells.size(); ++i) a.index.emplace(a.cells[i], static_cast<int>(i));

  std::vector<Simplex> simplices;
  for (size_t i = 0; i < a.cells.size(); ++i) simplices.push_back({static_cast<int>(i)});
  for (const auto& gamma : wssd.gammas) {
    for (const WST& t : gamma) {
      if (max_height(t) > h) continue;
      std::vector<Cell> lifted;
      lifted.reserve(t.cells.size());
      for (const Cell& c : t.cells) lifted.push_back(qcell(c, h));
      std::sort(lifted.begin(), lifted.end());
      lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
      if (lifted.size() < 2) continue;
      if (rad_of_cells(lifted) > limit) continue;
      Simplex s;
      for (const Cell& c : lifted) s.push_back(a.vertex_of(c));
      simplices.push_back(make_simplex(std::move(s)));
    }
  }
  a.complex = Complex(std::move(simplices));
  return a;
}

std::vector<WST> lemma9_violations(const WSSD& wssd, const ScaleParams& params) {
  std::vector<WST> out;
  const double next = theta(params.k_alpha + 1, params.eps);
  for (const auto& gamma : wssd.gammas)
    for (const WST& t : gamma)
      if (t.rad <= next && max_height(t) > params.h_alpha) out.push_back(t);
  return out;
}

VertexMap map_g(const ApproxComplex& a1, const ApproxComplex& a2) {
  if (a1.params.alpha > a2.params.alpha) throw InvalidInput("map_g: alpha1 must not exceed alpha2");
  VertexMap f;
  f.map.reserve(a1.cells.size());
  for (const Cell& c : a1.cells) f.map.push_back(a2.vertex_of(qcell(c, a2.params.h_alpha)));
  return f;
}

VertexMap map_phi(const Quadtree& qt, const ApproxComplex& a) {
  VertexMap f;
  f.map.reserve(static_cast<size_t>(qt.cloud().size()));
  for (int i = 0; i < qt.cloud().size(); ++i) f.map.push_back(a.vertex_of(qt.cell_of_point(i, a.params.h_alpha)));
  return f;
}

VertexMap map_psi(const Quadtree& qt, const ApproxComplex& a) {
  VertexMap f;
  f.map.reserve(a.cells.size());
  for (const Cell& c : a.cells) f.map.push_back(*qt.rep(c));
  return f;
}

std::pair<int, int> default_ell_range(const NormalizedCloud& cloud, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("default_ell_range: eps must lie in (0, 1)");
  const double base = std::log1p(eps / 2.0);
  double min_rad = 0.0;
  for (size_t i = 0; i < cloud.points.size(); ++i)
    for (size_t j = i + 1; j < cloud.points.size(); ++j) {
      const double r = distance(cloud.points[i].coords, cloud.points[j].coords) / 2.0;
      if (r > 0.0 && (min_rad == 0.0 || r < min_rad)) min_rad = r;
    }
  if (min_rad == 0.0) return {0, 0};
  const double rad = meb(cloud.points).ball.radius;
  const int lo = static_cast<int>(std::floor(std::log(min_rad / (1.0 + eps)) / base)) - 1;
  const int hi = static_cast<int>(std::ceil(std::log(rad * (1.0 + eps)) / base)) + 1;
  return {lo, hi};
}

ApproxTower build_tower(const Quadtree& qt, const WSSD& wssd, double eps, int ell_min, int ell_max) {
  if (ell_min > ell_max) throw InvalidInput("build_tower: empty scale range");
  ApproxTower t;
  t.eps = eps;
  t.ell_min = ell_min;
  t.ell_max = ell_max;
  for (int ell = ell_min; ell <= ell_max; ++ell) {
    t.levels.push_back(build_approx_complex(qt, wssd, eps, theta(ell, eps)));
    t.tower.complexes.push_back(t.levels.back().complex);
    t.tower.scales.push_back(qt.cloud().transform.to_raw_length(theta(ell, eps)));
  }
  for (size_t i = 0; i + 1 < t.levels.size(); ++i) t.tower.maps.push_back(map_g(t.levels[i], t.levels[i + 1]));

  std::vector<Vec> locations;
  for (const Point& p : qt.cloud().points) locations.push_back(p.coords);
  std::sort(locations.begin(), locations.end());
  locations.erase(std::unique(locations.begin(), locations.end()), locations.end());
  const Complex& first = t.tower.complexes.front();
  if (first.dim() > 0 || first.size() != locations.size())
    t.warnings.push_back("scale range starts too high: the first complex is not the bare point set");

  const Complex& last = t.tower.complexes.back();
  bool acyclic = HomologyBasis(last, 0).betti() == 1;
  for (int p = 1; p <= std::min(qt.dim() - 1, last.dim()) && acyclic; ++p) acyclic = HomologyBasis(last, p).betti() == 0;
  if (!acyclic) t.warnings.push_back("scale range ends too low: the last complex is not acyclic");
  return t;
}

}  // namespace cechx
