#pragma once

// Synchronous robotic network: first-order integrator agents executing a
// (message-generation, state-transition, control) law in lock-step rounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rendezvous/geometry.hpp"
#include "rendezvous/proxgraph.hpp"

namespace rendezvous {

/// Admissible control set: 2-norm ball or inf-norm cube of radius r_ctr.
enum class InputSet { ball_bound, cube_bound };

inline Norm input_norm(InputSet s) noexcept { return s == InputSet::ball_bound ? Norm::two : Norm::inf; }

inline Norm edge_norm(EdgeMap m) noexcept { return m == EdgeMap::cube ? Norm::inf : Norm::two; }

struct NetworkConfig {
  std::size_t n = 1;
  std::size_t d = 2;
  double r_cmm = 1.0;
  double r_ctr = 0.1;
  EdgeMap edge_map = EdgeMap::disk;
  InputSet input_set = InputSet::ball_bound;
  double rendezvous_tol = kDefaultTol;

  void validate() const {
    if (n < 1) throw std::domain_error("network needs at least one agent");
    if (d < 1) throw std::domain_error("dimension must be >= 1");
    if (!(r_cmm > 0.0)) throw std::domain_error("r_cmm must be positive");
    if (!(r_ctr > 0.0)) throw std::domain_error("r_ctr must be positive");
    if (!(rendezvous_tol >= 0.0)) throw std::domain_error("rendezvous_tol must be nonnegative");
  }
};

template <class Logic>
struct AgentState {
  Point position;
  Logic logic;
};

/// A message is either null (std::nullopt) or a law-specific payload.
template <class Payload>
using Message = std::optional<Payload>;

/// Output of a control function. `blocked` reports that the motion
/// constraint set was empty and the agent stayed put.
struct ControlDecision {
  Point u;
  bool blocked = false;
};

template <class Logic, class Payload>
struct LawBundle {
  std::function<Message<Payload>(const Point& position, const Logic& logic, std::size_t receiver)> msg;
  std::function<Logic(const Logic& own, std::span<const Message<Payload>> received)> stf;
  std::function<ControlDecision(const Point& position, const Logic& updated,
                                std::span<const Message<Payload>> received)>
      ctl;
};

/// Projects u onto the input set: radial scaling for the ball, per-axis clamp
/// for the cube.
inline Point saturate(Point u, InputSet set, double r_ctr) {
  if (set == InputSet::ball_bound) {
    const double len = norm(u);
    if (len > r_ctr) u *= r_ctr / len;
    return u;
  }
  for (std::size_t a = 0; a < u.dim(); ++a) u[a] = std::clamp(u[a], -r_ctr, r_ctr);
  return u;
}

/// True iff every pair of communicating agents is within `tol` of each other.
inline bool rendezvous_task(std::span<const Point> positions, const Graph& graph, double tol,
                            Norm which = Norm::two) {
  for (const auto& [i, j] : graph.edges()) {
    if (distance(positions[i], positions[j], which) > tol) return false;
  }
  return true;
}

template <class Logic>
std::vector<Point> positions_of(std::span<const AgentState<Logic>> states) {
  std::vector<Point> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.position);
  return out;
}

template <class Logic>
struct StepResult {
  std::vector<AgentState<Logic>> states;
  Graph graph;
  std::vector<Point> controls;
  std::vector<bool> blocked;
};

/// One synchronous round on an already computed communication graph.
template <class Logic, class Payload>
StepResult<Logic> step_on_graph(std::span<const AgentState<Logic>> states, const Graph& graph,
                                const NetworkConfig& config, const LawBundle<Logic, Payload>& law) {
  const std::size_t n = states.size();
  StepResult<Logic> out;
  out.graph = graph;
  out.states.reserve(n);
  out.controls.reserve(n);
  out.blocked.reserve(n);

  std::vector<Message<Payload>> received(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(received.begin(), received.end(), std::nullopt);
    for (std::size_t j : graph.neighbors(i)) {
      received[j] = law.msg(states[j].position, states[j].logic, i);
    }
    Logic next = law.stf(states[i].logic, received);
    ControlDecision decision = law.ctl(states[i].position, next, received);
    if (decision.u.dim() != states[i].position.dim()) {
      throw std::domain_error("control of agent " + std::to_string(i) + " has dimension " +
                              std::to_string(decision.u.dim()) + ", expected " +
                              std::to_string(states[i].position.dim()));
    }
    Point u = saturate(std::move(decision.u), config.input_set, config.r_ctr);
    out.states.push_back({states[i].position + u, std::move(next)});
    out.controls.push_back(std::move(u));
    out.blocked.push_back(decision.blocked);
  }
  return out;
}

template <class Logic, class Payload>
StepResult<Logic> step(std::span<const AgentState<Logic>> states, const NetworkConfig& config,
                       const LawBundle<Logic, Payload>& law) {
  const auto positions = positions_of(states);
  return step_on_graph(states, communication_graph(config.edge_map, positions, config.r_cmm), config, law);
}

template <class Logic>
struct Snapshot {
  std::vector<AgentState<Logic>> states;
  Graph graph;                  // graph of this round's positions
  std::vector<Point> controls;  // applied during this round; empty for the last snapshot
  std::vector<bool> blocked;
};

template <class Logic>
struct Trajectory {
  std::vector<Snapshot<Logic>> snapshots;
  std::optional<std::size_t> consensus_round;
  std::optional<std::size_t> rendezvous_round;

  std::size_t rounds() const noexcept { return snapshots.empty() ? 0 : snapshots.size() - 1; }
  std::vector<Point> positions(std::size_t t) const { return positions_of<Logic>(snapshots.at(t).states); }
};

template <class Logic>
using StopPredicate = std::function<bool(const Snapshot<Logic>&)>;

/// Stop predicate for the rendezvous task, measured in the input-set norm.
template <class Logic>
StopPredicate<Logic> rendezvous_predicate(const NetworkConfig& config) {
  const double tol = config.rendezvous_tol;
  const Norm which = input_norm(config.input_set);
  return [tol, which](const Snapshot<Logic>& s) {
    return rendezvous_task(positions_of<Logic>(s.states), s.graph, tol, which);
  };
}

/// Rounds after which a harness gives up: 10 ceil(diam / r_ctr) + 10 n.
inline std::size_t default_max_rounds(std::span<const Point> positions, const NetworkConfig& config) {
  const double diam = pointset_diameter(positions, input_norm(config.input_set));
  return 10 * static_cast<std::size_t>(std::ceil(diam / config.r_ctr)) + 10 * positions.size();
}

/// Runs rounds until `stop` holds (recorded as rendezvous_round) or
/// `max_rounds` rounds have executed.
template <class Logic, class Payload>
Trajectory<Logic> evolve(std::vector<AgentState<Logic>> initial, const NetworkConfig& config,
                         const LawBundle<Logic, Payload>& law, const StopPredicate<Logic>& stop,
                         std::size_t max_rounds) {
  config.validate();
  if (max_rounds < 1) throw std::domain_error("max_rounds must be >= 1");
  if (initial.size() != config.n) {
    throw std::domain_error("expected " + std::to_string(config.n) + " agents, got " +
                            std::to_string(initial.size()));
  }
  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (initial[i].position.dim() != config.d) {
      throw std::domain_error("agent " + std::to_string(i) + " position has dimension " +
                              std::to_string(initial[i].position.dim()));
    }
  }

  Trajectory<Logic> traj;
  auto graph_of = [&](std::span<const AgentState<Logic>> s) {
    return communication_graph(config.edge_map, positions_of(s), config.r_cmm);
  };
  Graph g0 = graph_of(initial);
  traj.snapshots.push_back({std::move(initial), std::move(g0), {}, {}});
  if (stop && stop(traj.snapshots.back())) {
    traj.rendezvous_round = 0;
    return traj;
  }

  for (std::size_t t = 0; t < max_rounds; ++t) {
    auto& current = traj.snapshots.back();
    StepResult<Logic> res = step_on_graph<Logic, Payload>(current.states, current.graph, config, law);
    current.controls = std::move(res.controls);
    current.blocked = std::move(res.blocked);
    Graph g = graph_of(res.states);
    traj.snapshots.push_back({std::move(res.states), std::move(g), {}, {}});
    if (stop && stop(traj.snapshots.back())) {
      traj.rendezvous_round = t + 1;
      break;
    }
  }
  return traj;
}

}  // namespace rendezvous
