#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cechx/complex.hpp"
#include "cechx/geometry.hpp"
#include "cechx/homology.hpp"
#include "cechx/wssd.hpp"

namespace cechx {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }  // 1-based; 0 when not tied to a line

 private:
  int line_;
};

// One point per line, coordinates separated by whitespace and/or commas;
// '#' starts a comment. The first data line fixes the dimension. Point ids
// are assigned in file order. Throws ParseError, including for input with no
// points.
PointCloud parse_points(std::istream& in);
PointCloud read_points(const std::string& path);

// {"p": p, "points": [[birth, death | "inf"], ...]}
nlohmann::json diagram_to_json(const std::vector<PersistencePoint>& points, int p);
// Array of per-dimension objects, p = 0..pmax.
nlohmann::json diagram_to_json(const PersistenceDiagram& d);
// Accepts either form above. Throws ParseError on schema violations.
PersistenceDiagram diagram_from_json(const nlohmann::json& j);

// Lines "v0 v1 ... vk ; value" in stored order.
void write_filtration(std::ostream& out, const Filtration& filt);

// {"k": k, "cells": [[h, i0, ..., i(d-1)], ...], "rad": rad}
nlohmann::json wst_to_json(const WST& t);

}  // namespace cechx
