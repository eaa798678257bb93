#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cechx/approx.hpp"
#include "cechx/complex.hpp"
#include "cechx/coreset.hpp"
#include "cechx/diagram.hpp"
#include "cechx/errors.hpp"
#include "cechx/homology.hpp"
#include "cechx/io.hpp"
#include "cechx/quadtree.hpp"
#include "cechx/wssd.hpp"

using namespace cechx;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;

struct Options {
  std::string input;
  std::string second;
  std::string out;
  std::string filtration_out;
  std::string kind = "radius";
  double eps = 0.5;
  int kmax = -1;
  int pmax = 1;
  int i = -1;
  int ell_min = 0;
  int ell_max = 0;
  bool have_ell_min = false;
  bool have_ell_max = false;
  unsigned long long seed = 0;
  int trials = 50;
  bool dump = false;
  bool exact = false;
};

json number_or_inf(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

// Human-readable lines go to stdout only when stdout is not carrying JSON.
std::ostream& table(const Options& o) { return o.out.empty() ? std::cerr : std::cout; }

void require_eps_unit(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("--eps must lie in (0, 1)");
}

int cmd_wssd(const Options& o) {
  require_eps_unit(o.eps);
  const PointCloud raw = read_points(o.input);
  const Quadtree qt(normalize(raw));
  const int kmax = o.kmax < 0 ? qt.dim() : o.kmax;
  const WSSD w = build_wssd(qt, o.eps, kmax);
  std::mt19937_64 rng(o.seed);

  json gammas = json::array();
  long long ball_violations = 0;
  long long height_violations = 0;
  for (int k = 1; k <= kmax; ++k) {
    for (const WST& t : w.gamma(k)) {
      if (!wst_height_bound(t, o.eps)) ++height_violations;
      if (!wst_ball_property_check(t, o.eps, o.trials, rng)) ++ball_violations;
    }
    json g = {{"k", k}, {"size", w.gamma(k).size()},
              {"per_point", static_cast<double>(w.gamma(k).size()) / qt.cloud().size()}};
    if (qt.cloud().size() <= 12) {
      const CoverageReport c = coverage(qt, w, k);
      g["simplices"] = c.total;
      g["covered"] = c.covered;
    }
    if (o.dump) {
      json tuples = json::array();
      for (const WST& t : w.gamma(k)) tuples.push_back(wst_to_json(t));
      g["tuples"] = tuples;
    }
    gammas.push_back(g);
    table(o) << "k=" << k << "  tuples=" << w.gamma(k).size()
             << "  per point=" << static_cast<double>(w.gamma(k).size()) / qt.cloud().size() << "\n";
  }
  const json report = {{"n", qt.cloud().size()},
                       {"d", qt.dim()},
                       {"eps", o.eps},
                       {"kmax", kmax},
                       {"seed", o.seed},
                       {"trials", o.trials},
                       {"gammas", gammas},
                       {"ball_violations", ball_violations},
                       {"height_violations", height_violations}};
  emit(report, o.out);
  return 0;
}

int cmd_filtration(const Options& o, const std::string& which) {
  if (o.pmax < 0) throw InvalidInput("--pmax must be non-negative");
  const PointCloud cloud = read_points(o.input);
  const int kmax = o.kmax < 0 ? o.pmax + 1 : o.kmax;
  Filtration f;
  if (which == "cech") {
    f = cech_filtration(cloud, kmax);
  } else if (which == "rips") {
    f = rips_filtration(cloud, kmax);
  } else {
    int i = o.i;
    if (i < 0) i = delta(o.eps) - 1;
    if (i < 1) throw InvalidInput("--i must be at least 1");
    f = completion(cech_filtration(cloud, std::min(i, kmax)), i, kmax);
    table(o) << "completion index i=" << i << "\n";
  }
  if (!o.filtration_out.empty()) {
    std::ofstream fo(o.filtration_out);
    if (!fo) throw std::runtime_error("cannot write " + o.filtration_out);
    write_filtration(fo, f);
  }
  const PersistenceDiagram d = persist_filtration(f, o.pmax);
  table(o) << which << ": " << f.entries.size() << " simplices\n";
  emit(diagram_to_json(d), o.out);
  return 0;
}

int cmd_approx(const Options& o) {
  require_eps_unit(o.eps);
  if (o.pmax < 0) throw InvalidInput("--pmax must be non-negative");
  const PointCloud raw = read_points(o.input);
  const Quadtree qt(normalize(raw));
  auto [lo, hi] = default_ell_range(qt.cloud(), o.eps);
  if (o.have_ell_min) lo = o.ell_min;
  if (o.have_ell_max) hi = o.ell_max;
  if (lo > hi) throw InvalidInput("--ell-min exceeds --ell-max");
  const WSSD w = build_wssd(qt, o.eps / 12.0, qt.dim());
  const ApproxTower t = build_tower(qt, w, o.eps, lo, hi);
  for (const std::string& msg : t.warnings) std::cerr << "warning: " << msg << "\n";
  for (size_t i = 0; i < t.levels.size(); ++i)
    table(o) << "ell=" << lo + static_cast<int>(i) << "  scale=" << t.tower.scales[i]
             << "  simplices=" << t.levels[i].complex.size() << "\n";
  const PersistenceDiagram d = tower_diagram_all(t.tower, o.pmax, true);
  emit(diagram_to_json(d), o.out);
  return 0;
}

PersistenceDiagram load_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
  return diagram_from_json(j);
}

int cmd_compare(const Options& o) {
  const PersistenceDiagram a = load_diagram(o.input);
  const PersistenceDiagram b = load_diagram(o.second);
  json per = json::array();
  const int top = std::max(a.pmax(), b.pmax());
  double worst = 0.0;
  for (int p = 0; p <= top; ++p) {
    const double x = bottleneck_log(a.at(p), b.at(p));
    worst = std::max(worst, x);
    per.push_back({{"p", p}, {"log_bottleneck", number_or_inf(x)}});
    table(o) << "H" << p << ": log-bottleneck " << x << "\n";
  }
  json report = {{"log_bottleneck", number_or_inf(worst)}, {"c", number_or_inf(std::exp(worst))}, {"per_dim", per}};
  if (o.eps > 0.0) report["within_eps"] = worst <= std::log1p(o.eps) + 1e-9;
  emit(report, o.out);
  return 0;
}

int cmd_coreset(const Options& o) {
  if (!(o.eps > 0.0)) throw InvalidInput("--eps must be positive");
  const PointCloud cloud = read_points(o.input);
  CoresetResult r;
  if (o.kind == "radius") r = o.exact ? radius_coreset_min(cloud, o.eps) : radius_coreset_greedy(cloud, o.eps);
  else if (o.kind == "meb") r = o.exact ? meb_coreset_min(cloud, o.eps) : meb_coreset(cloud, o.eps);
  else throw InvalidInput("--kind must be radius or meb");
  const bool valid = r.kind == CoresetKind::Radius ? is_radius_coreset(cloud, r.subset, o.eps)
                                                    : is_meb_coreset(cloud, r.subset, o.eps);
  emit({{"kind", o.kind},
        {"eps", o.eps},
        {"subset", r.subset},
        {"size", r.subset.size()},
        {"factor", number_or_inf(r.achieved_factor)},
        {"valid", valid}},
       o.out);
  return 0;
}

json check(const std::string& name, bool passed, json detail = json::object()) {
  return {{"name", name}, {"passed", passed}, {"detail", std::move(detail)}};
}

int cmd_validate(const Options& o) {
  require_eps_unit(o.eps);
  const PointCloud raw = read_points(o.input);
  const Quadtree qt(normalize(raw));
  const int n = qt.cloud().size();
  const int d = qt.dim();
  std::mt19937_64 rng(o.seed);
  json checks = json::array();

  const WSSD w = build_wssd(qt, o.eps, d);
  {
    long long heights = 0;
    long long balls = 0;
    for (const auto& g : w.gammas)
      for (const WST& t : g) {
        if (!wst_height_bound(t, o.eps)) ++heights;
        if (!wst_ball_property_check(t, o.eps, o.trials, rng)) ++balls;
      }
    checks.push_back(check("wst_height_bound", heights == 0, {{"violations", heights}}));
    checks.push_back(check("wst_ball_property", balls == 0, {{"violations", balls}, {"trials", o.trials}}));
    if (n <= 12) {
      bool ok = true;
      json per = json::array();
      for (int k = 1; k <= d; ++k) {
        const CoverageReport c = coverage(qt, w, k);
        ok = ok && c.covered == c.total;
        per.push_back({{"k", k}, {"simplices", c.total}, {"covered", c.covered}});
      }
      checks.push_back(check("wssd_covering", ok, per));
    }
  }

  const WSSD w12 = build_wssd(qt, o.eps / 12.0, d);
  const auto [lo, hi] = default_ell_range(qt.cloud(), o.eps);
  const ApproxTower t = build_tower(qt, w12, o.eps, lo, hi);
  {
    long long closure = 0;
    long long g_bad = 0;
    for (size_t i = 0; i < t.levels.size(); ++i) {
      closure += static_cast<long long>(face_closure_violations(t.levels[i].complex).size());
      if (i + 1 < t.levels.size() && !is_simplicial(t.tower.maps[i], t.levels[i].complex, t.levels[i + 1].complex))
        ++g_bad;
    }
    checks.push_back(check("approx_face_closure", closure == 0, {{"violations", closure}}));
    checks.push_back(check("map_g_simplicial", g_bad == 0, {{"violations", g_bad}}));
  }
  if (n <= 12) {
    const Filtration cech = cech_filtration(qt.cloud().points, n - 1);
    long long phi_bad = 0;
    long long psi_bad = 0;
    long long contiguity_bad = 0;
    for (const ApproxComplex& a : t.levels) {
      const double alpha = a.params.alpha;
      const Complex lower = sublevel(cech, alpha / (1.0 + o.eps));
      const Complex upper = sublevel(cech, alpha);
      const VertexMap phi = map_phi(qt, a);
      const VertexMap psi = map_psi(qt, a);
      if (!is_simplicial(phi, lower, a.complex)) ++phi_bad;
      if (!is_simplicial(psi, a.complex, upper)) ++psi_bad;
      if (is_simplicial(phi, lower, a.complex) && !check_contiguous(compose(psi, phi), identity_map(n), lower, upper))
        ++contiguity_bad;
    }
    checks.push_back(check("map_phi_simplicial", phi_bad == 0, {{"violations", phi_bad}}));
    checks.push_back(check("map_psi_simplicial", psi_bad == 0, {{"violations", psi_bad}}));
    checks.push_back(check("psi_phi_contiguous", contiguity_bad == 0, {{"violations", contiguity_bad}}));

    const int pmax = std::min(o.pmax, d - 1);
    const PersistenceDiagram exact = persist_filtration(cech_filtration(raw, std::min(pmax + 1, n - 1)), pmax);
    const PersistenceDiagram approx = tower_diagram_all(t.tower, pmax, true);
    const double dist = bottleneck_log(exact, approx);
    checks.push_back(check("tower_approximates_cech", dist <= std::log1p(o.eps) + 1e-9,
                           {{"log_bottleneck", number_or_inf(dist)}, {"bound", std::log1p(o.eps)}}));

    const SandwichReport s = check_completion_sandwich(raw, o.eps, {});
    checks.push_back(check("completion_sandwich", s.violations.empty(),
                           {{"delta", s.delta}, {"violations", s.violations.size()}}));
  }
  if (n <= kMaxEnumeration) {
    const JungReport j = jung_check(raw);
    checks.push_back(check("jung_inequalities", j.all_hold, {{"rad", j.rad}, {"diam", j.diam}}));
  }

  bool all = true;
  for (const auto& c : checks) {
    all = all && c["passed"].get<bool>();
    table(o) << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "\n";
  }
  for (const std::string& msg : t.warnings) std::cerr << "warning: " << msg << "\n";
  emit({{"eps", o.eps}, {"seed", o.seed}, {"checks", checks}, {"passed", all}}, o.out);
  return all ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cech persistence approximation toolkit"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the JSON result to this file");
    sub->add_option("--seed", o.seed, "Seed for randomized checks");
  };
  const auto add_input = [&](CLI::App* sub) { sub->add_option("file", o.input, "Point file")->required(); };

  auto* wssd = app.add_subcommand("wssd", "Build a well-separated simplicial decomposition and validate it");
  add_input(wssd);
  add_common(wssd);
  wssd->add_option("--eps", o.eps, "Separation parameter in (0, 1)");
  wssd->add_option("--kmax", o.kmax, "Largest tuple order (default: dimension)");
  wssd->add_option("--trials", o.trials, "Random balls per tuple");
  wssd->add_flag("--dump", o.dump, "Include every tuple in the output");

  std::vector<std::pair<std::string, CLI::App*>> filtrations;
  for (const char* name : {"cech", "rips", "completion"}) {
    auto* sub = app.add_subcommand(name, std::string("Persistence diagram of the ") + name + " filtration");
    add_input(sub);
    add_common(sub);
    sub->add_option("--kmax", o.kmax, "Largest simplex dimension (default: pmax + 1)");
    sub->add_option("--pmax", o.pmax, "Largest homology dimension");
    sub->add_option("--filtration", o.filtration_out, "Also write the filtration as text");
    filtrations.emplace_back(name, sub);
  }
  filtrations[2].second->add_option("--eps", o.eps, "Completion index i = delta(eps) - 1");
  filtrations[2].second->add_option("--i", o.i, "Completion index (overrides --eps)");

  auto* approx = app.add_subcommand("approx", "Persistence diagram of the approximation tower");
  add_input(approx);
  add_common(approx);
  approx->add_option("--eps", o.eps, "Approximation quality in (0, 1)");
  approx->add_option("--pmax", o.pmax, "Largest homology dimension");
  approx->add_option("--ell-min", o.ell_min, "First scale exponent");
  approx->add_option("--ell-max", o.ell_max, "Last scale exponent");

  auto* compare = app.add_subcommand("compare", "Log-scale bottleneck distance of two diagram files");
  compare->add_option("first", o.input, "Diagram JSON")->required();
  compare->add_option("second", o.second, "Diagram JSON")->required();
  add_common(compare);
  compare->add_option("--eps", o.eps, "Also report whether the distance is within log(1 + eps)");

  auto* coreset = app.add_subcommand("coreset", "Radius- or meb-coreset of a point set");
  add_input(coreset);
  add_common(coreset);
  coreset->add_option("--kind", o.kind, "radius or meb");
  coreset->add_option("--eps", o.eps, "Approximation parameter");
  coreset->add_flag("--exact", o.exact, "Exhaustive minimum instead of the heuristic");

  auto* validate = app.add_subcommand("validate", "Run the structural checks on one point set");
  add_input(validate);
  add_common(validate);
  validate->add_option("--eps", o.eps, "Approximation quality in (0, 1)");
  validate->add_option("--pmax", o.pmax, "Largest homology dimension");
  validate->add_option("--trials", o.trials, "Random balls per tuple");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }
  o.have_ell_min = approx->count("--ell-min") > 0;
  o.have_ell_max = approx->count("--ell-max") > 0;
  if (compare->parsed() && compare->count("--eps") == 0) o.eps = 0.0;

  try {
    if (wssd->parsed()) return cmd_wssd(o);
    for (const auto& [name, sub] : filtrations)
      if (sub->parsed()) return cmd_filtration(o, name);
    if (approx->parsed()) return cmd_approx(o);
    if (compare->parsed()) return cmd_compare(o);
    if (coreset->parsed()) return cmd_coreset(o);
    if (validate->parsed()) return cmd_validate(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DegenerateInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
