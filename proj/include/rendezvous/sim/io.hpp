#pragma once

// File formats written by the simulator.
//
// Trajectory, JSON lines (schema "rendezvous-trajectory/1"):
//   line 1   {"schema", "type":"header", "law", "n", "d", "consensus_round", "rendezvous_round"}
//   line t+2 {"type":"round", "round", "connected", "global_consensus", "edges":[[i,j],...],
//             "agents":[{"p", "u", "c", "r"?, "lo"?, "hi"?, "k", "flag", "blocked"}, ...]}
//   p position, u applied control ([] in the last round), c local shape center,
//   r ball radius (ball law), lo/hi box corners (box law), k stored points,
//   flag local consensus flag, blocked empty motion-constraint indicator.
//   Doubles are written in shortest round-trip form, so re-import is bit-exact.
//
// Trajectory, CSV (schema "rendezvous-trajectory-csv/1"): a "# schema law=.. n=.. d=.."
// comment line, then one row per (round, agent):
//   round,agent,x0..x{d-1},u0..,c0..,radius,lo0..,hi0..,stored_points,consensus_flag,blocked
//   Unused cells are left empty.
//
// Plot data, CSV (2-D only): round,agent,x,y,center_x,center_y,radius,lo_x,lo_y,hi_x,hi_y,consensus_flag

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rendezvous/sim/run.hpp"
#include "rendezvous/sim/scenario.hpp"

namespace rendezvous::sim {

inline constexpr const char* kTrajectorySchema = "rendezvous-trajectory/1";
inline constexpr const char* kTrajectoryCsvSchema = "rendezvous-trajectory-csv/1";
inline constexpr const char* kSummarySchema = "rendezvous-summary/1";

class UnsupportedDimension : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline nlohmann::json optional_json(const std::optional<std::size_t>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::optional<std::size_t> optional_count(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::size_t>();
}

inline nlohmann::json coords(const Point& p) { return std::vector<double>(p.begin(), p.end()); }

inline Point point_from(const nlohmann::json& j) { return Point(j.get<std::vector<double>>()); }

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes through a temporary sibling and renames it into place.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline nlohmann::json summary_to_json(const RunSummary& s) {
  nlohmann::json j;
  j["schema"] = kSummarySchema;
  j["name"] = s.name;
  j["law"] = to_string(s.law);
  j["n"] = s.n;
  j["d"] = s.d;
  j["r_cmm"] = s.r_cmm;
  j["r_ctr"] = s.r_ctr;
  j["seed"] = s.seed ? nlohmann::json(*s.seed) : nlohmann::json(nullptr);
  j["consensus_round"] = detail::optional_json(s.consensus_round);
  j["rendezvous_round"] = detail::optional_json(s.rendezvous_round);
  j["t_star"] = s.t_star;
  j["t_floodmeo"] = detail::optional_json(s.t_floodmeo);
  j["meo_time_bound"] = detail::optional_json(s.meo_time_bound);
  j["initial_diameter"] = s.initial_diameter;
  j["final_dispersion"] = s.final_dispersion;
  j["final_center_error"] = s.final_center_error;
  j["rendezvous_point"] = detail::coords(s.rendezvous_point);
  j["rounds_executed"] = s.rounds_executed;
  j["max_rounds"] = s.max_rounds;
  j["blocked_events"] = s.blocked_events;
  j["achieved"] = s.achieved;
  j["connected"] = s.connected;
  return j;
}

inline RunSummary summary_from_json(const nlohmann::json& j) {
  RunSummary s;
  s.name = j.at("name").get<std::string>();
  s.law = parse_law(j.at("law").get<std::string>());
  s.n = j.at("n").get<std::size_t>();
  s.d = j.at("d").get<std::size_t>();
  s.r_cmm = j.at("r_cmm").get<double>();
  s.r_ctr = j.at("r_ctr").get<double>();
  if (!j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
  s.consensus_round = detail::optional_count(j.at("consensus_round"));
  s.rendezvous_round = detail::optional_count(j.at("rendezvous_round"));
  s.t_star = j.at("t_star").get<std::size_t>();
  s.t_floodmeo = detail::optional_count(j.at("t_floodmeo"));
  s.meo_time_bound = detail::optional_count(j.at("meo_time_bound"));
  s.initial_diameter = j.at("initial_diameter").get<double>();
  s.final_dispersion = j.at("final_dispersion").get<double>();
  s.final_center_error = j.at("final_center_error").get<double>();
  s.rendezvous_point = detail::point_from(j.at("rendezvous_point"));
  s.rounds_executed = j.at("rounds_executed").get<std::size_t>();
  s.max_rounds = j.at("max_rounds").get<std::size_t>();
  s.blocked_events = j.at("blocked_events").get<std::size_t>();
  s.achieved = j.at("achieved").get<bool>();
  s.connected = j.at("connected").get<std::vector<bool>>();
  return s;
}

inline void write_summary(const RunSummary& s, const std::filesystem::path& path) {
  detail::write_atomically(path, summary_to_json(s).dump(2) + "\n");
}

inline std::string trajectory_jsonl(const RunRecord& rec) {
  std::ostringstream out;
  nlohmann::json header{{"schema", kTrajectorySchema},
                        {"type", "header"},
                        {"law", to_string(rec.law)},
                        {"n", rec.n},
                        {"d", rec.d},
                        {"consensus_round", detail::optional_json(rec.consensus_round)},
                        {"rendezvous_round", detail::optional_json(rec.rendezvous_round)}};
  out << header.dump() << "\n";
  for (const RoundFrame& f : rec.rounds) {
    nlohmann::json agents = nlohmann::json::array();
    for (const AgentFrame& a : f.agents) {
      nlohmann::json o{{"p", detail::coords(a.position)},
                       {"u", detail::coords(a.control)},
                       {"c", detail::coords(a.shape_center)},
                       {"k", a.stored_points},
                       {"flag", a.consensus_flag},
                       {"blocked", a.blocked}};
      if (a.radius) o["r"] = *a.radius;
      if (a.box) {
        o["lo"] = detail::coords(a.box->lo);
        o["hi"] = detail::coords(a.box->hi);
      }
      agents.push_back(std::move(o));
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [i, j] : f.edges) edges.push_back({i, j});
    nlohmann::json line{{"type", "round"},
                        {"round", f.round},
                        {"connected", f.connected},
                        {"global_consensus", f.global_consensus},
                        {"edges", edges},
                        {"agents", agents}};
    out << line.dump() << "\n";
  }
  return out.str();
}

inline std::string trajectory_csv(const RunRecord& rec) {
  std::ostringstream out;
  out << "# " << kTrajectoryCsvSchema << " law=" << to_string(rec.law) << " n=" << rec.n << " d=" << rec.d << "\n";
  out << "round,agent";
  for (const char* prefix : {"x", "u", "c"}) {
    for (std::size_t a = 0; a < rec.d; ++a) out << "," << prefix << a;
  }
  out << ",radius";
  for (const char* prefix : {"lo", "hi"}) {
    for (std::size_t a = 0; a < rec.d; ++a) out << "," << prefix << a;
  }
  out << ",stored_points,consensus_flag,blocked\n";

  auto cells = [&](const Point& p) {
    for (std::size_t a = 0; a < rec.d; ++a) out << "," << (p.dim() == rec.d ? detail::fmt(p[a]) : "");
  };
  for (const RoundFrame& f : rec.rounds) {
    for (std::size_t i = 0; i < f.agents.size(); ++i) {
      const AgentFrame& a = f.agents[i];
      out << f.round << "," << i;
      cells(a.position);
      cells(a.control);
      cells(a.shape_center);
      out << "," << (a.radius ? detail::fmt(*a.radius) : "");
      cells(a.box ? a.box->lo : Point());
      cells(a.box ? a.box->hi : Point());
      out << "," << a.stored_points << "," << (a.consensus_flag ? 1 : 0) << "," << (a.blocked ? 1 : 0) << "\n";
    }
  }
  return out.str();
}

inline void export_trajectory(const RunRecord& rec, const std::filesystem::path& path, TrajectoryFormat format) {
  detail::write_atomically(path, format == TrajectoryFormat::csv ? trajectory_csv(rec) : trajectory_jsonl(rec));
}

inline RunRecord import_trajectory_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open trajectory");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty trajectory file");
  const auto header = nlohmann::json::parse(line);
  if (header.value("schema", "") != kTrajectorySchema) {
    throw std::runtime_error(path.string() + ": not a " + std::string(kTrajectorySchema) + " file");
  }
  RunRecord rec;
  rec.law = parse_law(header.at("law").get<std::string>());
  rec.n = header.at("n").get<std::size_t>();
  rec.d = header.at("d").get<std::size_t>();
  rec.consensus_round = detail::optional_count(header.at("consensus_round"));
  rec.rendezvous_round = detail::optional_count(header.at("rendezvous_round"));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    RoundFrame f;
    f.round = j.at("round").get<std::size_t>();
    f.connected = j.at("connected").get<bool>();
    f.global_consensus = j.at("global_consensus").get<bool>();
    for (const auto& e : j.at("edges")) f.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    for (const auto& o : j.at("agents")) {
      AgentFrame a;
      a.position = detail::point_from(o.at("p"));
      a.control = detail::point_from(o.at("u"));
      a.shape_center = detail::point_from(o.at("c"));
      if (o.contains("r")) a.radius = o.at("r").get<double>();
      if (o.contains("lo")) a.box = Orthotope{detail::point_from(o.at("lo")), detail::point_from(o.at("hi"))};
      a.stored_points = o.at("k").get<std::size_t>();
      a.consensus_flag = o.at("flag").get<bool>();
      a.blocked = o.at("blocked").get<bool>();
      f.agents.push_back(std::move(a));
    }
    rec.rounds.push_back(std::move(f));
  }
  return rec;
}

/// Agent traces plus each agent's local shape per round, for external plotting.
inline std::string plot_data_csv(const RunRecord& rec) {
  if (rec.d != 2) throw UnsupportedDimension("plot data needs d = 2, got d = " + std::to_string(rec.d));
  std::ostringstream out;
  out << "round,agent,x,y,center_x,center_y,radius,lo_x,lo_y,hi_x,hi_y,consensus_flag\n";
  for (const RoundFrame& f : rec.rounds) {
    for (std::size_t i = 0; i < f.agents.size(); ++i) {
      const AgentFrame& a = f.agents[i];
      out << f.round << "," << i << "," << detail::fmt(a.position[0]) << "," << detail::fmt(a.position[1]) << ","
          << detail::fmt(a.shape_center[0]) << "," << detail::fmt(a.shape_center[1]) << ","
          << (a.radius ? detail::fmt(*a.radius) : "");
      if (a.box) {
        out << "," << detail::fmt(a.box->lo[0]) << "," << detail::fmt(a.box->lo[1]) << ","
            << detail::fmt(a.box->hi[0]) << "," << detail::fmt(a.box->hi[1]);
      } else {
        out << ",,,,";
      }
      out << "," << (a.consensus_flag ? 1 : 0) << "\n";
    }
  }
  return out.str();
}

inline void emit_plot_data(const RunRecord& rec, const std::filesystem::path& path) {
  detail::write_atomically(path, plot_data_csv(rec));
}

}  // namespace rendezvous::sim
