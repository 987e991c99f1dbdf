#pragma once

// JSON persistence for measurement patterns.
//
// Document layout:
// {
//   "name": "example",
//   "graph": { "n": 3, "edges": [[0,1],[1,2]] },
//   "inputs": { "0": "+" },                       // optional, '+' by default
//   "steps": [
//     { "site": 0, "basis": { "angle": 0.0 } },   // equatorial B(angle)
//     { "site": 1, "basis": "Z" }                 // computational
//   ],
//   "outputs": [2],
//   "byproducts": { "out": { "x": ["s1"], "z": ["s0"] } },   // optional
//   "relabel": { "bit": ["s0", "s1"] }                       // optional
// }
//
// Angles are radians. A JSON number is taken literally; a string with a "pi"
// suffix is a multiple of pi, e.g. "0.5pi" or "-pi". Serialization always
// writes numbers, and parse(serialize(p)) reproduces p exactly.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "oneway/pattern.hpp"

namespace oneway {

using ordered_json = nlohmann::ordered_json;

// "0.5pi", "-pi", "2" -> radians.
inline double parse_angle(const std::string& text) {
  std::string body = text;
  double scale = 1.0;
  if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
    scale = std::numbers::pi;
    body = body.substr(0, body.size() - 2);
    if (body.empty() || body == "+") return scale;
    if (body == "-") return -scale;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    throw error("cannot parse angle '" + text + "'");
  }
  if (used != body.size()) throw error("cannot parse angle '" + text + "'");
  return value * scale;
}

namespace detail {

inline const ordered_json& require_field(const ordered_json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw parse_error("expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) throw parse_error("missing field '" + key + "'", path);
  return *it;
}

inline int as_int(const ordered_json& j, const std::string& path) {
  if (!j.is_number_integer()) throw parse_error("expected an integer", path);
  return j.get<int>();
}

inline std::string as_string(const ordered_json& j, const std::string& path) {
  if (!j.is_string()) throw parse_error("expected a string", path);
  return j.get<std::string>();
}

inline double as_angle(const ordered_json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_angle(j.get<std::string>());
    } catch (const error& e) {
      throw parse_error(e.what(), path);
    }
  }
  throw parse_error("expected an angle (number or \"..pi\" string)", path);
}

inline std::vector<std::string> as_label_list(const ordered_json& j, const std::string& path) {
  if (!j.is_array()) throw parse_error("expected an array of outcome labels", path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

inline MeasurementPattern pattern_from_json(const ordered_json& doc) {
  using detail::as_angle;
  using detail::as_int;
  using detail::as_label_list;
  using detail::as_string;
  using detail::require_field;

  MeasurementPattern p;
  p.name = as_string(require_field(doc, "name", "$"), "$.name");

  const ordered_json& jg = require_field(doc, "graph", "$");
  const int n = as_int(require_field(jg, "n", "$.graph"), "$.graph.n");
  const ordered_json& jedges = require_field(jg, "edges", "$.graph");
  if (!jedges.is_array()) throw parse_error("expected an array of edges", "$.graph.edges");
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string path = "$.graph.edges[" + std::to_string(i) + "]";
    if (!jedges[i].is_array() || jedges[i].size() != 2) throw parse_error("expected an [a, b] pair", path);
    edges.emplace_back(as_int(jedges[i][0], path), as_int(jedges[i][1], path));
  }
  try {
    p.graph = Graph(n, std::move(edges));
  } catch (const error& e) {
    throw parse_error(e.what(), "$.graph");
  }

  if (doc.contains("inputs")) {
    const ordered_json& jin = doc["inputs"];
    if (!jin.is_object()) throw parse_error("expected an object keyed by site", "$.inputs");
    for (auto it = jin.begin(); it != jin.end(); ++it) {
      const std::string path = "$.inputs." + it.key();
      int site = 0;
      try {
        std::size_t used = 0;
        site = std::stoi(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument(it.key());
      } catch (const std::exception&) {
        throw parse_error("input key must be a site index", path);
      }
      const std::string prep = as_string(it.value(), path);
      if (prep.size() != 1) throw parse_error("preparation must be one of +, -, 0, 1", path);
      p.inputs[site] = prep[0];
    }
  }

  const ordered_json& jsteps = require_field(doc, "steps", "$");
  if (!jsteps.is_array()) throw parse_error("expected an array of steps", "$.steps");
  for (std::size_t i = 0; i < jsteps.size(); ++i) {
    const std::string path = "$.steps[" + std::to_string(i) + "]";
    Step step;
    step.site = as_int(require_field(jsteps[i], "site", path), path + ".site");
    const ordered_json& jb = require_field(jsteps[i], "basis", path);
    if (jb.is_string()) {
      if (jb.get<std::string>() != "Z") throw parse_error("basis must be \"Z\" or an angle object", path + ".basis");
      step.computational = true;
    } else if (jb.is_object()) {
      step.computational = false;
      step.angle.base = as_angle(require_field(jb, "angle", path + ".basis"), path + ".basis.angle");
      if (jb.contains("sign_deps")) step.angle.sign_deps = as_label_list(jb["sign_deps"], path + ".basis.sign_deps");
      if (jb.contains("offsets")) {
        const ordered_json& jo = jb["offsets"];
        const std::string opath = path + ".basis.offsets";
        if (!jo.is_array()) throw parse_error("expected an array of [label, angle] pairs", opath);
        for (std::size_t k = 0; k < jo.size(); ++k) {
          const std::string kpath = opath + "[" + std::to_string(k) + "]";
          if (!jo[k].is_array() || jo[k].size() != 2) throw parse_error("expected a [label, angle] pair", kpath);
          step.angle.offsets.emplace_back(as_string(jo[k][0], kpath), as_angle(jo[k][1], kpath));
        }
      }
    } else {
      throw parse_error("basis must be \"Z\" or an angle object", path + ".basis");
    }
    p.steps.push_back(std::move(step));
  }

  const ordered_json& jout = require_field(doc, "outputs", "$");
  if (!jout.is_array()) throw parse_error("expected an array of sites", "$.outputs");
  for (std::size_t i = 0; i < jout.size(); ++i) {
    p.outputs.push_back(as_int(jout[i], "$.outputs[" + std::to_string(i) + "]"));
  }

  if (doc.contains("byproducts")) {
    const ordered_json& jb = doc["byproducts"];
    if (!jb.is_object()) throw parse_error("expected an object keyed by logical output", "$.byproducts");
    for (auto it = jb.begin(); it != jb.end(); ++it) {
      const std::string path = "$.byproducts." + it.key();
      if (!it.value().is_object()) throw parse_error("expected { \"x\": [...], \"z\": [...] }", path);
      ByproductExpr expr;
      if (it.value().contains("x")) expr.x = as_label_list(it.value()["x"], path + ".x");
      if (it.value().contains("z")) expr.z = as_label_list(it.value()["z"], path + ".z");
      p.byproducts.emplace_back(it.key(), std::move(expr));
    }
  }

  if (doc.contains("relabel")) {
    const ordered_json& jr = doc["relabel"];
    if (!jr.is_object()) throw parse_error("expected an object keyed by classical output", "$.relabel");
    for (auto it = jr.begin(); it != jr.end(); ++it) {
      p.relabel.emplace_back(it.key(), as_label_list(it.value(), "$.relabel." + it.key()));
    }
  }

  try {
    p.validate();
  } catch (const error& e) {
    throw parse_error(e.what(), "$");
  }
  return p;
}

inline MeasurementPattern parse_pattern(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Convert the byte offset into a line number for the locus.
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw parse_error(e.what(), "line " + std::to_string(line));
  }
  return pattern_from_json(doc);
}

inline ordered_json pattern_to_json(const MeasurementPattern& p) {
  ordered_json doc;
  doc["name"] = p.name;
  doc["graph"]["n"] = p.graph.num_sites();
  doc["graph"]["edges"] = ordered_json::array();
  for (auto [a, b] : p.graph.edges()) doc["graph"]["edges"].push_back({a, b});
  if (!p.inputs.empty()) {
    doc["inputs"] = ordered_json::object();
    for (auto [site, prep] : p.inputs) doc["inputs"][std::to_string(site)] = std::string(1, prep);
  }
  doc["steps"] = ordered_json::array();
  for (const Step& step : p.steps) {
    ordered_json js;
    js["site"] = step.site;
    if (step.computational) {
      js["basis"] = "Z";
    } else {
      js["basis"]["angle"] = step.angle.base;
      if (!step.angle.sign_deps.empty()) js["basis"]["sign_deps"] = step.angle.sign_deps;
      if (!step.angle.offsets.empty()) {
        js["basis"]["offsets"] = ordered_json::array();
        for (const auto& [label, offset] : step.angle.offsets) js["basis"]["offsets"].push_back({label, offset});
      }
    }
    doc["steps"].push_back(std::move(js));
  }
  doc["outputs"] = p.outputs;
  if (!p.byproducts.empty()) {
    doc["byproducts"] = ordered_json::object();
    for (const auto& [logical, expr] : p.byproducts) {
      doc["byproducts"][logical]["x"] = expr.x;
      doc["byproducts"][logical]["z"] = expr.z;
    }
  }
  if (!p.relabel.empty()) {
    doc["relabel"] = ordered_json::object();
    for (const auto& [logical, labels] : p.relabel) doc["relabel"][logical] = labels;
  }
  return doc;
}

inline std::string pattern_to_string(const MeasurementPattern& p) { return pattern_to_json(p).dump(2) + "\n"; }

inline MeasurementPattern load_pattern(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open pattern file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_pattern(buffer.str());
  } catch (parse_error& e) {
    throw parse_error(std::string("in ") + path + ": " + e.what(), e.locus);
  }
}

inline void save_pattern(const MeasurementPattern& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot write pattern file '" + path + "'");
  out << pattern_to_string(p);
}

}  // namespace oneway
