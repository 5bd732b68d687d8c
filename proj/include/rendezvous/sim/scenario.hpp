#pragma once

// Scenario files (JSON) and deterministic initial-position generators.
//
// Uniform generator, stable across platforms: std::mt19937_64 seeded with
// `seed`; positions are drawn agent by agent, axis by axis, each coordinate
// consuming one 64-bit output x mapped to lo + (hi - lo) * (x >> 11) * 2^-53.

#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rendezvous/control.hpp"
#include "rendezvous/geometry.hpp"
#include "rendezvous/netcore.hpp"

namespace rendezvous::sim {

inline constexpr const char* kScenarioSchema = "rendezvous-scenario/1";

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Axis-aligned sampling region; one interval per axis.
using Rectangle = std::vector<Interval>;

inline std::vector<Point> generate_positions(const Rectangle& rect, std::size_t n, std::uint64_t seed) {
  if (rect.empty()) throw std::domain_error("rectangle needs at least one axis");
  for (std::size_t a = 0; a < rect.size(); ++a) {
    if (!(rect[a].lo < rect[a].hi)) throw std::domain_error("rectangle axis " + std::to_string(a) + " has lo >= hi");
  }
  std::mt19937_64 engine(seed);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p(rect.size());
    for (std::size_t a = 0; a < rect.size(); ++a) {
      const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      p[a] = rect[a].lo + (rect[a].hi - rect[a].lo) * unit;
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Agents evenly spaced along the first axis starting at the origin.
inline std::vector<Point> line_positions(std::size_t n, std::size_t d, double spacing) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    Point p(d);
    p[0] = spacing * static_cast<double>(i);
    out.push_back(std::move(p));
  }
  return out;
}

struct GeneratorSpec {
  enum class Kind { uniform, line };
  Kind kind = Kind::uniform;
  Rectangle rectangle;
  std::uint64_t seed = 0;
  double spacing = 1.0;
};

enum class TrajectoryFormat { csv, jsonl };

struct OutputOptions {
  TrajectoryFormat format = TrajectoryFormat::jsonl;
  bool plot = true;
};

struct Scenario {
  std::string name = "scenario";
  NetworkConfig network;
  LawVariant law = LawVariant::meb;
  std::vector<Point> positions;  // explicit positions; empty when generated
  std::optional<GeneratorSpec> generator;
  std::optional<std::size_t> max_rounds;
  std::optional<std::size_t> rounds_required;
  double geometry_tol = kDefaultTol;
  bool allow_disconnected = false;
  OutputOptions output;
};

inline std::vector<Point> resolve_positions(const Scenario& s) {
  if (!s.positions.empty()) return s.positions;
  if (!s.generator) throw ScenarioError("scenario has neither positions nor a generator");
  const GeneratorSpec& g = *s.generator;
  if (g.kind == GeneratorSpec::Kind::line) return line_positions(s.network.n, s.network.d, g.spacing);
  return generate_positions(g.rectangle, s.network.n, g.seed);
}

inline const char* to_string(LawVariant v) { return v == LawVariant::meb ? "meb" : "meo"; }
inline const char* to_string(EdgeMap m) {
  switch (m) {
    case EdgeMap::disk:
      return "disk";
    case EdgeMap::cube:
      return "cube";
    case EdgeMap::complete:
      return "complete";
  }
  return "?";
}
inline const char* to_string(InputSet s) { return s == InputSet::ball_bound ? "ball" : "cube"; }
inline const char* to_string(TrajectoryFormat f) { return f == TrajectoryFormat::csv ? "csv" : "jsonl"; }

inline LawVariant parse_law(const std::string& s) {
  if (s == "meb") return LawVariant::meb;
  if (s == "meo") return LawVariant::meo;
  throw ScenarioError("law: expected \"meb\" or \"meo\", got \"" + s + "\"");
}
inline EdgeMap parse_edge_map(const std::string& s) {
  if (s == "disk") return EdgeMap::disk;
  if (s == "cube") return EdgeMap::cube;
  if (s == "complete") return EdgeMap::complete;
  throw ScenarioError("edge_map: expected disk, cube or complete, got \"" + s + "\"");
}
inline InputSet parse_input_set(const std::string& s) {
  if (s == "ball") return InputSet::ball_bound;
  if (s == "cube") return InputSet::cube_bound;
  throw ScenarioError("input_set: expected ball or cube, got \"" + s + "\"");
}
inline TrajectoryFormat parse_format(const std::string& s) {
  if (s == "csv") return TrajectoryFormat::csv;
  if (s == "jsonl") return TrajectoryFormat::jsonl;
  throw ScenarioError("format: expected csv or jsonl, got \"" + s + "\"");
}

namespace detail {

using nlohmann::json;

inline const json& require(const json& j, const char* field) {
  if (!j.contains(field)) throw ScenarioError(std::string(field) + ": required field missing");
  return j.at(field);
}

inline double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ScenarioError(field + ": expected a number");
  return j.get<double>();
}

inline std::size_t count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ScenarioError(field + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) throw ScenarioError(field + ": expected a string");
  return j.get<std::string>();
}

inline Rectangle parse_rectangle(const json& j) {
  if (!j.is_array() || j.empty()) throw ScenarioError("generator.rectangle: expected [[lo, hi], ...]");
  Rectangle rect;
  for (std::size_t a = 0; a < j.size(); ++a) {
    const std::string f = "generator.rectangle[" + std::to_string(a) + "]";
    if (!j[a].is_array() || j[a].size() != 2) throw ScenarioError(f + ": expected [lo, hi]");
    Interval iv{number(j[a][0], f), number(j[a][1], f)};
    if (!(iv.lo < iv.hi)) throw ScenarioError(f + ": lo must be < hi");
    rect.push_back(iv);
  }
  return rect;
}

}  // namespace detail

/// Parses and validates a scenario. Errors name the offending field.
inline Scenario scenario_from_json(const nlohmann::json& j) {
  using detail::count;
  using detail::number;
  using detail::require;
  using detail::text;
  if (!j.is_object()) throw ScenarioError("scenario: expected a JSON object");
  if (j.contains("schema") && text(j.at("schema"), "schema") != kScenarioSchema) {
    throw ScenarioError("schema: unsupported \"" + j.at("schema").get<std::string>() + "\"");
  }

  Scenario s;
  if (j.contains("name")) s.name = text(j.at("name"), "name");
  s.network.n = count(require(j, "n"), "n");
  s.network.d = count(require(j, "d"), "d");
  if (s.network.n < 1) throw ScenarioError("n: must be >= 1");
  if (s.network.d < 1) throw ScenarioError("d: must be >= 1");
  s.network.r_cmm = number(require(j, "r_cmm"), "r_cmm");
  s.network.r_ctr = number(require(j, "r_ctr"), "r_ctr");
  if (!(s.network.r_cmm > 0.0)) throw ScenarioError("r_cmm: must be positive");
  if (!(s.network.r_ctr > 0.0)) throw ScenarioError("r_ctr: must be positive");
  s.law = parse_law(text(require(j, "law"), "law"));

  // Default pairing: ball law on the disk graph with a 2-norm bound, box law
  // on the cube graph with an inf-norm bound.
  s.network.edge_map = s.law == LawVariant::meb ? EdgeMap::disk : EdgeMap::cube;
  s.network.input_set = s.law == LawVariant::meb ? InputSet::ball_bound : InputSet::cube_bound;
  if (j.contains("edge_map")) s.network.edge_map = parse_edge_map(text(j.at("edge_map"), "edge_map"));
  if (j.contains("input_set")) s.network.input_set = parse_input_set(text(j.at("input_set"), "input_set"));
  if (j.contains("rendezvous_tol")) {
    s.network.rendezvous_tol = number(j.at("rendezvous_tol"), "rendezvous_tol");
    if (!(s.network.rendezvous_tol >= 0.0)) throw ScenarioError("rendezvous_tol: must be >= 0");
  }
  if (j.contains("geometry_tol")) {
    s.geometry_tol = number(j.at("geometry_tol"), "geometry_tol");
    if (!(s.geometry_tol >= 0.0)) throw ScenarioError("geometry_tol: must be >= 0");
  }
  if (j.contains("max_rounds") && !j.at("max_rounds").is_null()) {
    s.max_rounds = count(j.at("max_rounds"), "max_rounds");
    if (*s.max_rounds < 1) throw ScenarioError("max_rounds: must be >= 1");
  }
  if (j.contains("rounds_required") && !j.at("rounds_required").is_null()) {
    s.rounds_required = count(j.at("rounds_required"), "rounds_required");
    if (*s.rounds_required < 1) throw ScenarioError("rounds_required: must be >= 1");
  }
  if (j.contains("allow_disconnected")) {
    if (!j.at("allow_disconnected").is_boolean()) throw ScenarioError("allow_disconnected: expected a boolean");
    s.allow_disconnected = j.at("allow_disconnected").get<bool>();
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    if (!o.is_object()) throw ScenarioError("output: expected an object");
    if (o.contains("format")) s.output.format = parse_format(text(o.at("format"), "output.format"));
    if (o.contains("plot")) {
      if (!o.at("plot").is_boolean()) throw ScenarioError("output.plot: expected a boolean");
      s.output.plot = o.at("plot").get<bool>();
    }
  }

  const bool has_positions = j.contains("positions");
  const bool has_generator = j.contains("generator");
  if (has_positions == has_generator) throw ScenarioError("positions/generator: exactly one must be given");

  if (has_positions) {
    const auto& arr = j.at("positions");
    if (!arr.is_array()) throw ScenarioError("positions: expected an array of points");
    if (arr.size() != s.network.n) {
      throw ScenarioError("positions: expected " + std::to_string(s.network.n) + " agents, got " +
                          std::to_string(arr.size()));
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string f = "positions[" + std::to_string(i) + "]";
      if (!arr[i].is_array()) throw ScenarioError(f + ": expected an array of coordinates");
      if (arr[i].size() != s.network.d) {
        throw ScenarioError(f + ": agent " + std::to_string(i) + " has " + std::to_string(arr[i].size()) +
                            " coordinates, expected d = " + std::to_string(s.network.d));
      }
      std::vector<double> c;
      for (const auto& v : arr[i]) c.push_back(number(v, f));
      s.positions.emplace_back(std::move(c));
    }
  } else {
    const auto& g = j.at("generator");
    if (!g.is_object()) throw ScenarioError("generator: expected an object");
    GeneratorSpec spec;
    const std::string kind = g.contains("kind") ? text(g.at("kind"), "generator.kind") : "uniform";
    if (kind == "uniform") {
      spec.kind = GeneratorSpec::Kind::uniform;
      spec.rectangle = detail::parse_rectangle(require(g, "rectangle"));
      if (spec.rectangle.size() != s.network.d) {
        throw ScenarioError("generator.rectangle: has " + std::to_string(spec.rectangle.size()) +
                            " axes, expected d = " + std::to_string(s.network.d));
      }
      const auto& seed = require(g, "seed");
      if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
        throw ScenarioError("generator.seed: expected a nonnegative integer");
      }
      spec.seed = seed.get<std::uint64_t>();
    } else if (kind == "line") {
      spec.kind = GeneratorSpec::Kind::line;
      spec.spacing = number(require(g, "spacing"), "generator.spacing");
      if (!(spec.spacing > 0.0)) throw ScenarioError("generator.spacing: must be positive");
    } else {
      throw ScenarioError("generator.kind: expected uniform or line, got \"" + kind + "\"");
    }
    s.generator = std::move(spec);
  }
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open scenario file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(path + ": " + e.what());
  }
  return scenario_from_json(j);
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["schema"] = kScenarioSchema;
  j["name"] = s.name;
  j["n"] = s.network.n;
  j["d"] = s.network.d;
  j["r_cmm"] = s.network.r_cmm;
  j["r_ctr"] = s.network.r_ctr;
  j["law"] = to_string(s.law);
  j["edge_map"] = to_string(s.network.edge_map);
  j["input_set"] = to_string(s.network.input_set);
  j["rendezvous_tol"] = s.network.rendezvous_tol;
  j["geometry_tol"] = s.geometry_tol;
  j["max_rounds"] = s.max_rounds ? nlohmann::json(*s.max_rounds) : nlohmann::json(nullptr);
  j["rounds_required"] = s.rounds_required ? nlohmann::json(*s.rounds_required) : nlohmann::json(nullptr);
  j["allow_disconnected"] = s.allow_disconnected;
  j["output"] = {{"format", to_string(s.output.format)}, {"plot", s.output.plot}};
  if (!s.positions.empty()) {
    auto arr = nlohmann::json::array();
    for (const Point& p : s.positions) arr.push_back(std::vector<double>(p.begin(), p.end()));
    j["positions"] = arr;
  } else if (s.generator) {
    const auto& g = *s.generator;
    if (g.kind == GeneratorSpec::Kind::line) {
      j["generator"] = {{"kind", "line"}, {"spacing", g.spacing}};
    } else {
      auto rect = nlohmann::json::array();
      for (const auto& iv : g.rectangle) rect.push_back({iv.lo, iv.hi});
      j["generator"] = {{"kind", "uniform"}, {"rectangle", rect}, {"seed", g.seed}};
    }
  }
  return j;
}

}  // namespace rendezvous::sim
