#pragma once

// Executes a scenario and condenses the typed trajectory into a law-agnostic
// record plus a run summary.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rendezvous/consensus.hpp"
#include "rendezvous/control.hpp"
#include "rendezvous/geometry.hpp"
#include "rendezvous/netcore.hpp"
#include "rendezvous/proxgraph.hpp"
#include "rendezvous/sim/scenario.hpp"

namespace rendezvous::sim {

class DisconnectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One agent in one round. Ball laws fill `radius`; box laws fill `box`.
struct AgentFrame {
  Point position;
  Point control;  // empty in the final round
  Point shape_center;
  std::optional<double> radius;
  std::optional<Orthotope> box;
  std::size_t stored_points = 0;
  bool consensus_flag = false;
  bool blocked = false;

  friend bool operator==(const AgentFrame& a, const AgentFrame& b) {
    auto box_eq = [](const std::optional<Orthotope>& x, const std::optional<Orthotope>& y) {
      if (x.has_value() != y.has_value()) return false;
      return !x || (x->lo == y->lo && x->hi == y->hi);
    };
    return a.position == b.position && a.control == b.control && a.shape_center == b.shape_center &&
           a.radius == b.radius && box_eq(a.box, b.box) && a.stored_points == b.stored_points &&
           a.consensus_flag == b.consensus_flag && a.blocked == b.blocked;
  }
};

struct RoundFrame {
  std::size_t round = 0;
  std::vector<AgentFrame> agents;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool connected = true;
  bool global_consensus = false;  // every agent holds the global shape

  friend bool operator==(const RoundFrame&, const RoundFrame&) = default;
};

/// Serializable trajectory of one evolution.
struct RunRecord {
  LawVariant law = LawVariant::meb;
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<RoundFrame> rounds;
  std::optional<std::size_t> consensus_round;
  std::optional<std::size_t> rendezvous_round;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunSummary {
  std::string name;
  LawVariant law = LawVariant::meb;
  std::size_t n = 0;
  std::size_t d = 0;
  double r_cmm = 0.0;
  double r_ctr = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> consensus_round;
  std::optional<std::size_t> rendezvous_round;
  std::size_t t_star = 0;
  /// Exact FloodMEO round count on the initial graph (when connected).
  std::optional<std::size_t> t_floodmeo;
  /// ceil(diam / r_ctr) + T_FloodMEO, diam in the input-set norm.
  std::optional<std::size_t> meo_time_bound;
  double initial_diameter = 0.0;
  double final_dispersion = 0.0;
  /// Largest distance from a final position to the analytic rendezvous point.
  double final_center_error = 0.0;
  Point rendezvous_point;
  std::size_t rounds_executed = 0;
  std::size_t max_rounds = 0;
  std::size_t blocked_events = 0;
  bool achieved = false;
  std::vector<bool> connected;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunResult {
  RunRecord record;
  RunSummary summary;
};

namespace detail {

template <class Flood>
AgentFrame frame_of(const AgentState<AgentLogic<Flood>>& s) {
  AgentFrame f;
  f.position = s.position;
  const auto& shape = shape_of(s.logic.flood);
  f.shape_center = shape_center(shape);
  if constexpr (std::is_same_v<Flood, MebLogicState>) {
    f.radius = shape.radius;
    f.stored_points = s.logic.flood.stored_points();
  } else {
    f.box = shape;
    f.stored_points = 2 * shape.dim();
  }
  f.consensus_flag = s.logic.consensus;
  return f;
}

template <class Flood>
RunResult run_typed(const Scenario& scenario, const std::vector<Point>& positions) {
  using Logic = AgentLogic<Flood>;
  const NetworkConfig& config = scenario.network;
  const double tol = scenario.geometry_tol;
  const auto law = assemble_law<Flood>(config, scenario.rounds_required, tol);
  const std::size_t max_rounds = scenario.max_rounds.value_or(default_max_rounds(positions, config));
  const auto traj = evolve(initial_agents<Flood>(positions), config, law, rendezvous_predicate<Logic>(config), max_rounds);

  const auto global = FloodTraits<Flood>::global(positions);
  RunResult out;
  RunRecord& rec = out.record;
  rec.law = scenario.law;
  rec.n = config.n;
  rec.d = config.d;
  rec.rendezvous_round = traj.rendezvous_round;

  std::size_t blocked_events = 0;
  for (std::size_t t = 0; t < traj.snapshots.size(); ++t) {
    const auto& snap = traj.snapshots[t];
    RoundFrame frame;
    frame.round = t;
    frame.edges = snap.graph.edges();
    frame.connected = is_connected(snap.graph);
    frame.global_consensus = true;
    for (std::size_t i = 0; i < snap.states.size(); ++i) {
      AgentFrame a = frame_of<Flood>(snap.states[i]);
      if (!snap.controls.empty()) a.control = snap.controls[i];
      if (!snap.blocked.empty()) {
        a.blocked = snap.blocked[i];
        blocked_events += a.blocked ? 1 : 0;
      }
      frame.global_consensus = frame.global_consensus && same_shape(shape_of(snap.states[i].logic.flood), global, tol);
      frame.agents.push_back(std::move(a));
    }
    if (frame.global_consensus && !rec.consensus_round) rec.consensus_round = t;
    rec.rounds.push_back(std::move(frame));
  }

  RunSummary& sum = out.summary;
  sum.name = scenario.name;
  sum.law = scenario.law;
  sum.n = config.n;
  sum.d = config.d;
  sum.r_cmm = config.r_cmm;
  sum.r_ctr = config.r_ctr;
  if (scenario.positions.empty() && scenario.generator &&
      scenario.generator->kind == GeneratorSpec::Kind::uniform) {
    sum.seed = scenario.generator->seed;
  }
  sum.consensus_round = rec.consensus_round;
  sum.rendezvous_round = rec.rendezvous_round;
  const CentralizedSolution central = centralized_solution(positions, config.input_set, config.r_ctr);
  sum.t_star = central.t_star;
  const Norm input = input_norm(config.input_set);
  sum.initial_diameter = pointset_diameter(positions, input);
  const Graph& g0 = traj.snapshots.front().graph;
  if (is_connected(g0)) {
    sum.t_floodmeo = floodmeo_min_rounds(g0, positions);
    sum.meo_time_bound = static_cast<std::size_t>(std::ceil(sum.initial_diameter / config.r_ctr)) + *sum.t_floodmeo;
  }
  const auto final_positions = traj.positions(traj.rounds());
  sum.final_dispersion = pointset_diameter(final_positions, input);
  sum.rendezvous_point = shape_center(global);
  for (const Point& p : final_positions) {
    sum.final_center_error = std::max(sum.final_center_error, distance(p, sum.rendezvous_point, input));
  }
  sum.rounds_executed = traj.rounds();
  sum.max_rounds = max_rounds;
  sum.blocked_events = blocked_events;
  sum.achieved = traj.rendezvous_round.has_value();
  for (const auto& f : rec.rounds) sum.connected.push_back(f.connected);
  return out;
}

}  // namespace detail

/// Runs a scenario. Refuses initially disconnected networks unless the
/// scenario allows them, since the convergence guarantees assume connectivity.
inline RunResult run(const Scenario& scenario) {
  scenario.network.validate();
  const std::vector<Point> positions = resolve_positions(scenario);
  if (positions.size() != scenario.network.n) {
    throw ScenarioError("positions: expected " + std::to_string(scenario.network.n) + " agents, got " +
                        std::to_string(positions.size()));
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i].dim() != scenario.network.d) {
      throw ScenarioError("positions[" + std::to_string(i) + "]: wrong dimension");
    }
  }
  const Graph g0 = communication_graph(scenario.network.edge_map, positions, scenario.network.r_cmm);
  if (!scenario.allow_disconnected && !is_connected(g0)) {
    throw DisconnectedError("initial communication graph is disconnected (" + std::to_string(g0.edge_count()) +
                            " edges over " + std::to_string(positions.size()) +
                            " agents); rerun with --allow-disconnected to simulate anyway");
  }
  if (scenario.law == LawVariant::meb) return detail::run_typed<MebLogicState>(scenario, positions);
  return detail::run_typed<MeoLogicState>(scenario, positions);
}

}  // namespace rendezvous::sim
