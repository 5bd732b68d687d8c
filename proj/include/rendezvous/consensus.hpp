#pragma once

// Flooding consensus on the minimal enclosing ball (FloodMEB) and the minimal
// enclosing orthotope (FloodMEO) of the agents' initial positions, the exact
// FloodMEO round count, and the local "unchanged for k rounds" detector.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rendezvous/geometry.hpp"
#include "rendezvous/proxgraph.hpp"

namespace rendezvous {

/// Boundary support of the locally known ball plus the agent's own initial
/// position. `ball` caches the enclosing ball of both.
struct MebLogicState {
  std::vector<Point> boundary;
  Point origin;
  Ball ball;

  std::size_t dim() const noexcept { return origin.dim(); }
  std::size_t stored_points() const noexcept { return boundary.size() + 1; }
};

/// Per-axis (min, max) bounds, stored as a box.
struct MeoLogicState {
  Orthotope box;

  std::size_t dim() const noexcept { return box.dim(); }
};

inline MebLogicState floodmeb_init(const Point& p0) {
  if (p0.dim() == 0) throw std::domain_error("initial position must have dimension >= 1");
  return {{p0}, p0, Ball{p0, 0.0}};
}

inline MebLogicState floodmeb_stf(const MebLogicState& own, std::span<const std::optional<MebLogicState>> received,
                                  double tol = kDefaultTol) {
  std::vector<Point> pool;
  auto add = [&](const Point& p) {
    if (p.dim() != own.dim()) {
      throw std::domain_error("received point of dimension " + std::to_string(p.dim()) + ", expected " +
                              std::to_string(own.dim()));
    }
    if (std::find(pool.begin(), pool.end(), p) == pool.end()) pool.push_back(p);
  };
  for (const Point& p : own.boundary) add(p);
  add(own.origin);
  bool heard = false;
  for (const auto& msg : received) {
    if (!msg) continue;
    heard = true;
    for (const Point& p : msg->boundary) add(p);
    add(msg->origin);
  }
  if (!heard) return own;

  MebLogicState next;
  next.boundary = meb_boundary(pool, tol);
  next.origin = own.origin;
  std::vector<Point> all = next.boundary;
  all.push_back(next.origin);
  next.ball = minimal_enclosing_ball(all);
  return next;
}

inline MeoLogicState floodmeo_init(const Point& p0) {
  if (p0.dim() == 0) throw std::domain_error("initial position must have dimension >= 1");
  return {Orthotope{p0, p0}};
}

inline MeoLogicState floodmeo_stf(const MeoLogicState& own, std::span<const std::optional<MeoLogicState>> received) {
  MeoLogicState next = own;
  for (const auto& msg : received) {
    if (!msg) continue;
    if (msg->dim() != own.dim()) {
      throw std::domain_error("received box of dimension " + std::to_string(msg->dim()) + ", expected " +
                              std::to_string(own.dim()));
    }
    for (std::size_t a = 0; a < own.dim(); ++a) {
      next.box.lo[a] = std::min(next.box.lo[a], msg->box.lo[a]);
      next.box.hi[a] = std::max(next.box.hi[a], msg->box.hi[a]);
    }
  }
  return next;
}

/// Exact number of rounds FloodMEO needs on a static connected graph: the
/// largest hop distance from any agent to its nearest agent attaining an
/// axis extreme.
inline std::size_t floodmeo_min_rounds(const Graph& graph, std::span<const Point> positions) {
  if (graph.size() != positions.size()) throw std::domain_error("graph and positions disagree on agent count");
  const std::size_t d = detail::checked_dim(positions);
  const std::size_t n = positions.size();

  std::vector<std::vector<std::optional<std::size_t>>> hops;
  hops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) hops.push_back(hop_distances(graph, i));
  for (const auto& h : hops.front()) {
    if (!h) throw std::domain_error("floodmeo_min_rounds requires a connected graph");
  }

  const Orthotope box = minimal_enclosing_orthotope(positions);
  std::size_t rounds = 0;
  for (std::size_t a = 0; a < d; ++a) {
    for (double extreme : {box.lo[a], box.hi[a]}) {
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t nearest = n;
        for (std::size_t e = 0; e < n; ++e) {
          if (positions[e][a] == extreme) nearest = std::min(nearest, *hops[i][e]);
        }
        rounds = std::max(rounds, nearest);
      }
    }
  }
  return rounds;
}

inline const Ball& shape_of(const MebLogicState& s) noexcept { return s.ball; }
inline const Orthotope& shape_of(const MeoLogicState& s) noexcept { return s.box; }

inline bool same_shape(const Ball& a, const Ball& b, double tol = kDefaultTol) { return same_ball(a, b, tol); }
inline bool same_shape(const Orthotope& a, const Orthotope& b, double tol = kDefaultTol) {
  return same_orthotope(a, b, tol);
}

inline Point shape_center(const Ball& b) { return b.center; }
inline Point shape_center(const Orthotope& box) { return orthotope_center(box); }

/// True iff the last `rounds_required` rounds left the shape unchanged, i.e.
/// the final rounds_required + 1 entries of `history` agree.
template <class Shape>
bool termination_detector(std::span<const Shape> history, std::size_t rounds_required, double tol = kDefaultTol) {
  if (rounds_required < 1) throw std::domain_error("rounds_required must be >= 1");
  if (history.size() < rounds_required + 1) return false;
  const Shape& last = history.back();
  for (std::size_t k = history.size() - rounds_required - 1; k + 1 < history.size(); ++k) {
    if (!same_shape(history[k], last, tol)) return false;
  }
  return true;
}

/// Streaming form of termination_detector: feed one shape per round.
template <class Shape>
class StabilityCounter {
 public:
  explicit StabilityCounter(std::size_t rounds_required, double tol = kDefaultTol)
      : rounds_required_(rounds_required), tol_(tol) {
    if (rounds_required < 1) throw std::domain_error("rounds_required must be >= 1");
  }

  bool observe(const Shape& s) {
    if (last_ && same_shape(*last_, s, tol_)) {
      ++stable_;
    } else {
      stable_ = 0;
    }
    last_ = s;
    return fired();
  }

  bool fired() const noexcept { return stable_ >= rounds_required_; }
  std::size_t stable_rounds() const noexcept { return stable_; }

 private:
  std::size_t rounds_required_;
  double tol_;
  std::size_t stable_ = 0;
  std::optional<Shape> last_;
};

/// Static-law bindings so the simulation layer can be written once for both
/// flooding algorithms.
template <class State>
struct FloodTraits;

template <>
struct FloodTraits<MebLogicState> {
  using Shape = Ball;
  static constexpr const char* name = "meb";
  static MebLogicState init(const Point& p0) { return floodmeb_init(p0); }
  static MebLogicState stf(const MebLogicState& own, std::span<const std::optional<MebLogicState>> received,
                           double tol) {
    return floodmeb_stf(own, received, tol);
  }
  static Ball global(std::span<const Point> positions) { return minimal_enclosing_ball(positions); }
};

template <>
struct FloodTraits<MeoLogicState> {
  using Shape = Orthotope;
  static constexpr const char* name = "meo";
  static MeoLogicState init(const Point& p0) { return floodmeo_init(p0); }
  static MeoLogicState stf(const MeoLogicState& own, std::span<const std::optional<MeoLogicState>> received,
                           double) {
    return floodmeo_stf(own, received);
  }
  static Orthotope global(std::span<const Point> positions) { return minimal_enclosing_orthotope(positions); }
};

template <class State>
struct StaticFloodRun {
  std::vector<std::vector<State>> rounds;  // rounds[t][i]: agent i after t rounds
  std::optional<std::size_t> consensus_round;
};

/// Runs a flooding algorithm on a fixed graph with fixed positions until every
/// agent holds the global shape (unless `stop_at_consensus` is false) or
/// `max_rounds` elapse.
template <class State>
StaticFloodRun<State> run_static_flood(const Graph& graph, std::span<const Point> positions, std::size_t max_rounds,
                                       double tol = kDefaultTol, bool stop_at_consensus = true) {
  using Traits = FloodTraits<State>;
  if (graph.size() != positions.size()) throw std::domain_error("graph and positions disagree on agent count");
  const auto target = Traits::global(positions);
  auto agreed = [&](const std::vector<State>& states) {
    return std::all_of(states.begin(), states.end(),
                       [&](const State& s) { return same_shape(shape_of(s), target, tol); });
  };

  StaticFloodRun<State> run;
  std::vector<State> states;
  for (const Point& p : positions) states.push_back(Traits::init(p));
  run.rounds.push_back(states);
  if (agreed(states)) run.consensus_round = 0;

  std::vector<std::optional<State>> received(positions.size());
  for (std::size_t t = 1; t <= max_rounds && !(stop_at_consensus && run.consensus_round); ++t) {
    const auto& prev = run.rounds.back();
    std::vector<State> next;
    next.reserve(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) {
      std::fill(received.begin(), received.end(), std::nullopt);
      for (std::size_t j : graph.neighbors(i)) received[j] = prev[j];
      next.push_back(Traits::stf(prev[i], received, tol));
    }
    if (!run.consensus_round && agreed(next)) run.consensus_round = t;
    run.rounds.push_back(std::move(next));
  }
  return run;
}

}  // namespace rendezvous
