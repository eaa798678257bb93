#include "doctest.h"

#include <cmath>
#include <random>

#include "cechx/approx.hpp"
#include "cechx/errors.hpp"
#include "support.hpp"

using namespace cechx;
using namespace testing_support;

namespace {

struct Setup {
  Quadtree qt;
  WSSD wssd;
  double eps;
};

Setup make(const PointCloud& raw, double eps) {
  Quadtree qt(normalize(raw));
  WSSD w = build_wssd(qt, eps / 12.0, qt.dim());
  return {std::move(qt), std::move(w), eps};
}

double image_radius(const ApproxComplex& a, const Simplex& s) {
  std::vector<Cell> cells;
  for (int v : s) cells.push_back(a.cells[static_cast<size_t>(v)]);
  return rad_of_cells(cells);
}

}  // namespace

TEST_CASE("scale parameters") {
  for (double eps : {0.1, 0.5, 0.9}) {
    const ScaleParams s = scale_params(1.0, eps, 2);
    CHECK(s.k_alpha == 0);
    CHECK(s.theta_k == 1.0);
  }
  const ScaleParams s = scale_params(1.3, 0.5, 2);
  CHECK(s.k_alpha == 1);
  CHECK(s.theta_k == doctest::Approx(1.25));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double eps = 0.05 + 0.9 * (trial % 10) / 10.0;
    const int d = 1 + trial % 5;
    const double alpha = std::exp(u(rng));
    const ScaleParams p = scale_params(alpha, eps, d);
    CHECK(theta(p.k_alpha, eps) <= alpha);
    CHECK(alpha < theta(p.k_alpha + 1, eps));
    const double x = eps * p.theta_k / (3.0 * std::sqrt(double(d)));
    CHECK(std::ldexp(1.0, p.h_alpha) <= x);
    CHECK(x <= std::ldexp(1.0, p.h_alpha + 1));
    // Constant on the theta interval.
    const double lo = theta(p.k_alpha, eps);
    const double hi = theta(p.k_alpha + 1, eps);
    const ScaleParams q = scale_params(lo + (hi - lo) * 0.999, eps, d);
    CHECK(q.k_alpha == p.k_alpha);
    CHECK(q.h_alpha == p.h_alpha);
  }
  CHECK_THROWS_AS(scale_params(0.0, 0.5, 2), InvalidInput);
  CHECK_THROWS_AS(scale_params(-1.0, 0.5, 2), InvalidInput);
}

TEST_CASE("extreme scales give bare points and a contractible complex") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Setup s = make(random_cloud(rng, 5 + trial % 6, 2), 0.5);
    const int n = s.qt.cloud().size();
    const ApproxComplex low = build_approx_complex(s.qt, s.wssd, 0.5, 0.05);
    CHECK(static_cast<int>(low.complex.size()) == n);
    CHECK(low.complex.dim() == 0);
    const double rad = meb(s.qt.cloud().points).ball.radius;
    const ApproxComplex high = build_approx_complex(s.qt, s.wssd, 0.5, 4.0 * rad);
    CHECK(HomologyBasis(high.complex, 0).betti() == 1);
    CHECK(HomologyBasis(high.complex, 1).betti() == 0);
  }
}

TEST_CASE("approximation complexes are closed under faces and obey the height lemma") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Setup s = make(random_cloud(rng, 4 + trial % 9, 2), 0.5);
    const auto [lo, hi] = default_ell_range(s.qt.cloud(), 0.5);
    for (int ell = lo; ell <= hi; ++ell) {
      const ApproxComplex a = build_approx_complex(s.qt, s.wssd, 0.5, theta(ell, 0.5));
      CHECK(face_closure_violations(a.complex).empty());
      CHECK(lemma9_violations(s.wssd, a.params).empty());
      for (const Simplex& t : a.complex.simplices())
        if (t.size() > 1) CHECK(image_radius(a, t) <= a.params.theta_k * (1 + 1e-9));
    }
  }
}

TEST_CASE("ancestor maps: identity within an interval, composition, simpliciality") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Setup s = make(random_cloud(rng, 6 + trial % 5, 2), 0.5);
    const ApproxComplex a = build_approx_complex(s.qt, s.wssd, 0.5, theta(1, 0.5));
    const ApproxComplex same = build_approx_complex(s.qt, s.wssd, 0.5, theta(1, 0.5) * 1.1);
    CHECK(map_g(a, same).map == identity_map(static_cast<int>(a.cells.size())).map);
    const ApproxComplex b = build_approx_complex(s.qt, s.wssd, 0.5, theta(3, 0.5));
    const ApproxComplex c = build_approx_complex(s.qt, s.wssd, 0.5, theta(6, 0.5));
    const VertexMap ab = map_g(a, b);
    const VertexMap bc = map_g(b, c);
    CHECK(compose(bc, ab).map == map_g(a, c).map);
    CHECK(is_simplicial(ab, a.complex, b.complex));
    for (const Simplex& t : a.complex.simplices())
      CHECK(image_radius(b, ab.image(t)) <= b.params.theta_k * (1 + 1e-9));
    CHECK_THROWS_AS(map_g(c, a), InvalidInput);
  }
}

TEST_CASE("cross maps into and out of Cech complexes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Setup s = make(random_cloud(rng, 4 + trial % 7, 2), 0.5);
    const int n = s.qt.cloud().size();
    const Filtration cech = cech_filtration(s.qt.cloud().points, s.qt.dim());
    const Filtration full = cech_filtration(s.qt.cloud().points, n - 1);
    const auto [lo, hi] = default_ell_range(s.qt.cloud(), 0.5);
    for (int ell = lo; ell <= hi; ell += 2) {
      const double alpha = theta(ell, 0.5);
      const ApproxComplex a = build_approx_complex(s.qt, s.wssd, 0.5, alpha);
      const Complex lower = sublevel(cech, alpha / 1.5);
      const Complex upper = sublevel(cech, alpha);
      const Complex upper_full = sublevel(full, alpha);
      const VertexMap phi = map_phi(s.qt, a);
      const VertexMap psi = map_psi(s.qt, a);
      CHECK(is_simplicial(phi, lower, a.complex));
      CHECK(is_simplicial(psi, a.complex, upper));
      CHECK(check_contiguous(compose(psi, phi), identity_map(n), lower, upper_full));
      for (const Simplex& t : a.complex.simplices()) {
        if (t.size() < 2) continue;
        const Simplex img = psi.image(t);
        CHECK(meb_radius(s.qt.cloud().points, img) <= image_radius(a, t) * (1 + 1e-12) + 1e-12);
      }
    }
  }
}

TEST_CASE("triangle tower has a single essential component") {
  const Setup s = make(equilateral_triangle(), 0.5);
  const auto [lo, hi] = default_ell_range(s.qt.cloud(), 0.5);
  const ApproxTower t = build_tower(s.qt, s.wssd, 0.5, lo, hi);
  CHECK(t.warnings.empty());
  const auto h0 = tower_diagram(t.tower, 0, true);
  CHECK(std::count_if(h0.begin(), h0.end(), [](const PersistencePoint& p) { return p.infinite(); }) == 1);
  CHECK(h0.size() == 3);
  for (size_t i = 0; i + 1 < t.levels.size(); ++i)
    CHECK(is_simplicial(t.tower.maps[i], t.levels[i].complex, t.levels[i + 1].complex));
  const ApproxTower single = build_tower(s.qt, s.wssd, 0.5, 2, 2);
  CHECK(single.tower.maps.empty());
  CHECK(single.tower.complexes.size() == 1);
  CHECK_THROWS_AS(build_tower(s.qt, s.wssd, 0.5, 3, 2), InvalidInput);
}

TEST_CASE("narrow ranges raise warnings") {
  std::mt19937_64 rng(6);
  const Setup s = make(random_cloud(rng, 8, 2), 0.5);
  const auto [lo, hi] = default_ell_range(s.qt.cloud(), 0.5);
  const int mid = (lo + hi) / 2;
  const ApproxTower t = build_tower(s.qt, s.wssd, 0.5, mid, mid + 1);
  CHECK(t.warnings.size() >= 1);
}

TEST_CASE("complex requires a WSSD built at eps / 12") {
  const Quadtree qt(normalize(equilateral_triangle()));
  const WSSD wrong = build_wssd(qt, 0.5, 2);
  CHECK_THROWS_AS(build_approx_complex(qt, wrong, 0.5, 1.0), InvalidInput);
}
