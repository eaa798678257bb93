#include "cechx/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace cechx {

PointCloud parse_points(std::istream& in) {
  PointCloud out;
  std::string line;
  int lineno = 0;
  int dim = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream tokens(line);
    std::string tok;
    Vec coords;
    while (tokens >> tok) {
      double v = 0.0;
      const char* first = tok.data() + (tok.size() > 1 && tok[0] == '+' ? 1 : 0);
      const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(lineno) + ": cannot parse '" + tok + "' as a number", lineno);
      if (!std::isfinite(v))
        throw ParseError("line " + std::to_string(lineno) + ": non-finite coordinate", lineno);
      coords.push_back(v);
    }
    if (coords.empty()) continue;
    if (dim < 0) dim = static_cast<int>(coords.size());
    if (static_cast<int>(coords.size()) != dim)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) + " coordinates, got " +
                           std::to_string(coords.size()),
                       lineno);
    if (dim > kMaxDim)
      throw ParseError("line " + std::to_string(lineno) + ": dimension exceeds " + std::to_string(kMaxDim), lineno);
    out.push_back(Point{std::move(coords), static_cast<int>(out.size())});
  }
  if (out.empty()) throw ParseError("input contains no points", 0);
  return out;
}

PointCloud read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_points(in);
}

nlohmann::json diagram_to_json(const std::vector<PersistencePoint>& points, int p) {
  nlohmann::json pts = nlohmann::json::array();
  std::vector<PersistencePoint> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& q : sorted) {
    if (q.infinite()) pts.push_back({q.birth, "inf"});
    else pts.push_back({q.birth, q.death});
  }
  return {{"p", p}, {"points", pts}};
}

nlohmann::json diagram_to_json(const PersistenceDiagram& d) {
  nlohmann::json arr = nlohmann::json::array();
  for (int p = 0; p <= d.pmax(); ++p) arr.push_back(diagram_to_json(d.at(p), p));
  return arr;
}

namespace {

void read_dimension(const nlohmann::json& obj, PersistenceDiagram& d) {
  if (!obj.is_object() || !obj.contains("p") || !obj.contains("points") || !obj["p"].is_number_integer() ||
      !obj["points"].is_array())
    throw ParseError("diagram JSON: expected {\"p\": int, \"points\": [...]}", 0);
  const int p = obj["p"].get<int>();
  if (p < 0) throw ParseError("diagram JSON: negative dimension", 0);
  if (static_cast<int>(d.dims.size()) <= p) d.dims.resize(static_cast<size_t>(p) + 1);
  for (const auto& pt : obj["points"]) {
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number())
      throw ParseError("diagram JSON: each point must be [birth, death]", 0);
    PersistencePoint q;
    q.birth = pt[0].get<double>();
    if (pt[1].is_string() && pt[1].get<std::string>() == "inf") q.death = std::numeric_limits<double>::infinity();
    else if (pt[1].is_number()) q.death = pt[1].get<double>();
    else throw ParseError("diagram JSON: death must be a number or \"inf\"", 0);
    d.dims[static_cast<size_t>(p)].push_back(q);
  }
}

}  // namespace

PersistenceDiagram diagram_from_json(const nlohmann::json& j) {
  PersistenceDiagram d;
  if (j.is_array()) {
    for (const auto& obj : j) read_dimension(obj, d);
  } else {
    read_dimension(j, d);
  }
  d.canonical_sort();
  return d;
}

void write_filtration(std::ostream& out, const Filtration& filt) {
  std::ostringstream buf;
  buf.precision(17);
  for (const auto& e : filt.entries) {
    for (size_t i = 0; i < e.simplex.size(); ++i) buf << (i ? " " : "") << e.simplex[i];
    buf << " ; " << e.value << '\n';
  }
  out << buf.str();
}

nlohmann::json wst_to_json(const WST& t) {
  nlohmann::json cells = nlohmann::json::array();
  for (const Cell& c : t.cells) {
    nlohmann::json row = nlohmann::json::array();
    row.push_back(c.height);
    for (int i = 0; i < c.dim; ++i) row.push_back(c.index[static_cast<size_t>(i)]);
    cells.push_back(row);
  }
  return {{"k", t.k()}, {"cells", cells}, {"rad", t.rad}};
}

}  // namespace cechx
