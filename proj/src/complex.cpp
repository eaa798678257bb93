#include "cechx/complex.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "cechx/coreset.hpp"
#include "cechx/errors.hpp"

namespace cechx {

size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  size_t h = 1469598103934665603ull;
  for (int v : s) {
    h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

Simplex make_simplex(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

namespace {

bool entry_less(const FiltrationEntry& a, const FiltrationEntry& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.simplex.size() != b.simplex.size()) return a.simplex.size() < b.simplex.size();
  return a.simplex < b.simplex;
}

// Calls visit(subset) for every subset of {0..n-1} with 1..max_size elements.
void for_each_subset(int n, int max_size, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (!cur.empty()) visit(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

void check_cloud(const PointCloud& cloud, int kmax) {
  if (kmax < 0) throw InvalidInput("filtration: kmax must be non-negative");
  if (cloud.empty()) throw InvalidInput("filtration: empty point cloud");
}

Simplex without(const Simplex& s, size_t drop) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (size_t i = 0; i < s.size(); ++i)
    if (i != drop) f.push_back(s[i]);
  return f;
}

}  // namespace

void Filtration::canonical_sort() { std::sort(entries.begin(), entries.end(), entry_less); }

int Filtration::top_dim() const {
  int top = -1;
  for (const auto& e : entries) top = std::max(top, e.dim());
  return top;
}

bool is_face_monotone(const Filtration& filt) {
  std::unordered_map<Simplex, std::pair<size_t, double>, SimplexHash> seen;
  for (size_t i = 0; i < filt.entries.size(); ++i) {
    const auto& e = filt.entries[i];
    if (e.simplex.empty()) return false;
    for (size_t j = 1; j < e.simplex.size(); ++j)
      if (e.simplex[j - 1] >= e.simplex[j]) return false;
    if (e.simplex.size() > 1) {
      for (size_t drop = 0; drop < e.simplex.size(); ++drop) {
        auto it = seen.find(without(e.simplex, drop));
        if (it == seen.end() || it->second.second > e.value) return false;
      }
    }
    if (!seen.emplace(e.simplex, std::make_pair(i, e.value)).second) return false;
  }
  return true;
}

Filtration cech_filtration(const PointCloud& cloud, int kmax) {
  check_cloud(cloud, kmax);
  Filtration f;
  const int n = static_cast<int>(cloud.size());
  for_each_subset(n, kmax + 1, [&](const std::vector<int>& s) {
    const double v = s.size() == 1 ? 0.0 : meb_radius(cloud, s);
    f.entries.push_back({s, v});
  });
  // A coface whose ball coincides with a face's ball can come out one ulp
  // smaller; lift it so the filtration stays face monotone.
  std::stable_sort(f.entries.begin(), f.entries.end(),
                   [](const FiltrationEntry& a, const FiltrationEntry& b) { return a.simplex.size() < b.simplex.size(); });
  std::unordered_map<Simplex, double, SimplexHash> value;
  value.reserve(f.entries.size());
  for (auto& e : f.entries) {
    if (e.simplex.size() > 1)
      for (size_t drop = 0; drop < e.simplex.size(); ++drop) e.value = std::max(e.value, value.at(without(e.simplex, drop)));
    value.emplace(e.simplex, e.value);
  }
  f.canonical_sort();
  return f;
}

Filtration rips_filtration(const PointCloud& cloud, int kmax) {
  check_cloud(cloud, kmax);
  const int n = static_cast<int>(cloud.size());
  std::vector<double> dist(static_cast<size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      dist[a * n + b] = dist[b * n + a] = distance(cloud[a].coords, cloud[b].coords);
  Filtration f;
  for_each_subset(n, kmax + 1, [&](const std::vector<int>& s) {
    double v = 0.0;
    for (size_t a = 0; a < s.size(); ++a)
      for (size_t b = a + 1; b < s.size(); ++b) v = std::max(v, dist[s[a] * n + s[b]]);
    f.entries.push_back({s, v});
  });
  f.canonical_sort();
  return f;
}

Filtration completion(const Filtration& filt, int i, int kmax) {
  if (i < 1) throw InvalidInput("completion: i must be at least 1");
  std::unordered_map<Simplex, double, SimplexHash> value;
  Filtration out;
  std::vector<Simplex> layer;
  for (const auto& e : filt.entries) {
    if (e.dim() > i || e.dim() > kmax) continue;
    value.emplace(e.simplex, e.value);
    out.entries.push_back(e);
    if (e.dim() == i) layer.push_back(e.simplex);
  }
  std::vector<int> verts;
  for (const auto& e : filt.entries)
    if (e.dim() == 0) verts.push_back(e.simplex[0]);
  std::sort(verts.begin(), verts.end());

  // A (m)-simplex has all i-faces present iff all its (m-1)-faces are present,
  // and its completion value is the max over those faces.
  std::sort(layer.begin(), layer.end());
  for (int m = i + 1; m <= kmax && !layer.empty(); ++m) {
    std::vector<Simplex> next;
    for (const Simplex& tau : layer) {
      for (auto vit = std::upper_bound(verts.begin(), verts.end(), tau.back()); vit != verts.end(); ++vit) {
        Simplex sigma = tau;
        sigma.push_back(*vit);
        double v = value.at(tau);
        bool ok = true;
        for (size_t drop = 0; drop + 1 < sigma.size() && ok; ++drop) {
          auto it = value.find(without(sigma, drop));
          if (it == value.end()) ok = false;
          else v = std::max(v, it->second);
        }
        if (!ok) continue;
        value.emplace(sigma, v);
        out.entries.push_back({sigma, v});
        next.push_back(std::move(sigma));
      }
    }
    layer = std::move(next);
  }
  out.canonical_sort();
  return out;
}

Complex::Complex(std::vector<Simplex> simplices) {
  for (Simplex& s : simplices) s = make_simplex(std::move(s));
  std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
  simplices.erase(std::remove_if(simplices.begin(), simplices.end(), [](const Simplex& s) { return s.empty(); }),
                  simplices.end());
  simplices_ = std::move(simplices);
  index_.reserve(simplices_.size());
  for (size_t i = 0; i < simplices_.size(); ++i) index_.emplace(simplices_[i], i);
}

std::optional<size_t> Complex::index_of(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Complex::dim() const {
  return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().size()) - 1;
}

std::vector<size_t> Complex::of_dim(int p) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < simplices_.size(); ++i)
    if (static_cast<int>(simplices_[i].size()) == p + 1) out.push_back(i);
  return out;
}

std::vector<int> Complex::vertices() const {
  std::vector<int> out;
  for (const Simplex& s : simplices_)
    if (s.size() == 1) out.push_back(s[0]);
  return out;
}

Complex sublevel(const Filtration& filt, double alpha) {
  std::vector<Simplex> s;
  for (const auto& e : filt.entries)
    if (e.value <= alpha) s.push_back(e.simplex);
  return Complex(std::move(s));
}

std::vector<Simplex> face_closure_violations(const Complex& k) {
  std::set<Simplex> missing;
  for (const Simplex& s : k.simplices()) {
    if (s.size() < 2) continue;
    for (size_t drop = 0; drop < s.size(); ++drop) {
      Simplex f = without(s, drop);
      if (!k.contains(f)) missing.insert(std::move(f));
    }
  }
  return {missing.begin(), missing.end()};
}

SandwichReport check_completion_sandwich(const PointCloud& cloud, double eps, std::vector<double> alphas,
                                         int kmax) {
  SandwichReport report;
  report.delta = delta(eps);
  const int n = static_cast<int>(cloud.size());
  const int top = kmax < 0 ? n - 1 : std::min(kmax, n - 1);
  const Filtration cech = cech_filtration(cloud, top);
  const Filtration m = completion(cech, report.delta - 1, top);

  std::unordered_map<Simplex, double, SimplexHash> cech_value;
  for (const auto& e : cech.entries) cech_value.emplace(e.simplex, e.value);

  if (alphas.empty()) {
    for (const auto& e : cech.entries) alphas.push_back(e.value);
    for (const auto& e : m.entries) alphas.push_back(e.value);
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  }
  report.alphas = alphas;

  std::sort(alphas.begin(), alphas.end());
  const double slack = (1.0 + eps) * (1.0 + kGeomTol);
  // Lower inclusion fails for alpha in [cech, m); upper fails for alpha in
  // [m, a*) where a* is the smallest alpha with cech <= slack * alpha + 1e-12.
  for (const auto& e : m.entries) {
    auto it = cech_value.find(e.simplex);
    const double c = it == cech_value.end() ? std::numeric_limits<double>::infinity() : it->second;
    for (auto a = std::lower_bound(alphas.begin(), alphas.end(), c); a != alphas.end() && *a < e.value; ++a)
      report.violations.push_back({*a, e.simplex, false});
    for (auto a = std::lower_bound(alphas.begin(), alphas.end(), e.value);
         a != alphas.end() && c > slack * *a + 1e-12; ++a)
      report.violations.push_back({*a, e.simplex, true});
  }
  std::unordered_map<Simplex, double, SimplexHash> m_value;
  for (const auto& e : m.entries) m_value.emplace(e.simplex, e.value);
  for (const auto& e : cech.entries) {
    if (m_value.contains(e.simplex)) continue;
    for (auto a = std::lower_bound(alphas.begin(), alphas.end(), e.value); a != alphas.end(); ++a)
      report.violations.push_back({*a, e.simplex, false});
  }
  return report;
}

}  // namespace cechx
