#pragma once

// Move-toward-center control laws (ball center for FloodMEB, box center for
// FloodMEO) with pairwise connectivity maintenance, and the centralized
// minimum-time rendezvous solutions they are measured against.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <type_traits>
#include <variant>
#include <vector>

#include "rendezvous/consensus.hpp"
#include "rendezvous/geometry.hpp"
#include "rendezvous/netcore.hpp"
#include "rendezvous/proxgraph.hpp"

namespace rendezvous {

enum class LawVariant { meb, meo };

struct ControlParams {
  double r_ctr = 0.1;
  double r_cmm = 1.0;
  InputSet input_set = InputSet::ball_bound;
  EdgeMap edge_map = EdgeMap::disk;

  static ControlParams from(const NetworkConfig& c) { return {c.r_ctr, c.r_cmm, c.input_set, c.edge_map}; }
};

/// Connectivity maintenance before local consensus: the next position must
/// stay within r_cmm / 2 of the midpoint to every current neighbor (2-norm
/// balls for the disk graph, inf-norm cubes for the cube graph).
struct ConnectivityConstraint {
  enum class Mode { pairwise_midpoint, none };
  Mode mode = Mode::pairwise_midpoint;
  bool active = true;
};

/// Midpoint-constraint radius. Slightly below r_cmm / 2 so that two agents
/// each sitting on their constraint boundary stay strictly within range after
/// rounding.
inline double constraint_radius(double r_cmm) noexcept { return 0.5 * r_cmm * (1.0 - 1e-9); }

namespace detail {

struct Interval {
  double lo;
  double hi;
  bool empty() const noexcept { return lo > hi; }
};

inline Interval intersect(Interval a, Interval b) noexcept { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// {lambda : ||offset + lambda * u||_2 <= rho}; lambda = 0 counts as feasible when
// offset is within the unshrunk radius r_cmm / 2, so a pair starting exactly
// r_cmm apart is not blocked by the safety margin.
inline Interval ball_scale_interval(const Point& offset, const Point& u, double rho) {
  const double a = dot(u, u);
  const double b = dot(offset, u);
  const double c = dot(offset, offset) - rho * rho;
  const double slack = 4e-9 * rho * rho;
  const bool origin_ok = c <= slack;
  if (a == 0.0) return origin_ok ? Interval{-INFINITY, INFINITY} : Interval{1.0, 0.0};
  const double disc = b * b - a * c;
  if (disc < 0.0) return origin_ok ? Interval{0.0, 0.0} : Interval{1.0, 0.0};
  const double s = std::sqrt(disc);
  Interval out{(-b - s) / a, (-b + s) / a};
  if (origin_ok) {
    out.lo = std::min(out.lo, 0.0);
    out.hi = std::max(out.hi, 0.0);
  }
  return out;
}

// {lambda : |offset + lambda * u| <= rho} on one axis.
inline Interval axis_scale_interval(double offset, double u, double rho) {
  const double slack = 2e-9 * rho;
  if (u == 0.0) return std::abs(offset) <= rho + slack ? Interval{-INFINITY, INFINITY} : Interval{1.0, 0.0};
  double lo = (-rho - offset) / u;
  double hi = (rho - offset) / u;
  if (lo > hi) std::swap(lo, hi);
  if (std::abs(offset) <= rho + slack) {
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
  }
  return {lo, hi};
}

}  // namespace detail

/// Largest lambda in [0, 1] with p + lambda u inside every neighbor's
/// midpoint ball (Norm::two) or cube (Norm::inf); nullopt when no lambda in
/// [0, 1] is feasible.
inline std::optional<double> max_step_scale(const Point& p, const Point& u, std::span<const Point> neighbors,
                                            double r_cmm, Norm geometry) {
  const double rho = constraint_radius(r_cmm);
  detail::Interval feasible{0.0, 1.0};
  for (const Point& q : neighbors) {
    const Point offset = (p - q) * 0.5;  // p - midpoint(p, q)
    if (geometry == Norm::two) {
      feasible = detail::intersect(feasible, detail::ball_scale_interval(offset, u, rho));
    } else {
      for (std::size_t a = 0; a < p.dim(); ++a) {
        feasible = detail::intersect(feasible, detail::axis_scale_interval(offset[a], u[a], rho));
      }
    }
    if (feasible.empty()) return std::nullopt;
  }
  return feasible.hi;
}

/// Per-axis variant for box-shaped constraints: each coordinate of the step is
/// scaled independently. nullopt when some axis has no feasible scale.
inline std::optional<std::vector<double>> max_step_scale_per_axis(const Point& p, const Point& u,
                                                                  std::span<const Point> neighbors, double r_cmm) {
  const double rho = constraint_radius(r_cmm);
  std::vector<double> scale(p.dim());
  for (std::size_t a = 0; a < p.dim(); ++a) {
    detail::Interval feasible{0.0, 1.0};
    for (const Point& q : neighbors) {
      feasible = detail::intersect(feasible, detail::axis_scale_interval(0.5 * (p[a] - q[a]), u[a], rho));
    }
    if (feasible.empty()) return std::nullopt;
    scale[a] = feasible.hi;
  }
  return scale;
}

/// Pursuit of the locally known ball center. Before local consensus the step
/// is shrunk by the connectivity scale; afterwards it is the saturated
/// pursuit step.
inline ControlDecision ctl_meb(const Point& p, const MebLogicState& w, std::span<const Point> neighbors,
                               const ControlParams& params, bool consensus_flag) {
  if (w.dim() != p.dim()) throw std::domain_error("logic state and position dimensions differ");
  Point u = saturate(w.ball.center - p, params.input_set, params.r_ctr);
  if (consensus_flag || params.edge_map == EdgeMap::complete || neighbors.empty()) return {std::move(u)};
  const auto lambda = max_step_scale(p, u, neighbors, params.r_cmm, edge_norm(params.edge_map));
  if (!lambda) return {Point(p.dim()), true};
  return {u * *lambda};
}

/// Per-axis pursuit of the locally known box center, each coordinate clamped
/// to r_ctr.
inline ControlDecision ctl_meo(const Point& p, const MeoLogicState& w, std::span<const Point> neighbors,
                               const ControlParams& params, bool consensus_flag) {
  if (w.dim() != p.dim()) throw std::domain_error("logic state and position dimensions differ");
  Point u = orthotope_center(w.box) - p;
  for (std::size_t a = 0; a < u.dim(); ++a) u[a] = std::clamp(u[a], -params.r_ctr, params.r_ctr);
  u = saturate(std::move(u), params.input_set, params.r_ctr);
  if (consensus_flag || params.edge_map == EdgeMap::complete || neighbors.empty()) return {std::move(u)};
  if (params.edge_map == EdgeMap::cube) {
    const auto scale = max_step_scale_per_axis(p, u, neighbors, params.r_cmm);
    if (!scale) return {Point(p.dim()), true};
    for (std::size_t a = 0; a < u.dim(); ++a) u[a] *= (*scale)[a];
    return {std::move(u)};
  }
  const auto lambda = max_step_scale(p, u, neighbors, params.r_cmm, Norm::two);
  if (!lambda) return {Point(p.dim()), true};
  return {u * *lambda};
}

/// Number of r_ctr-steps needed to cover `dist`. A relative slack of 1e-9
/// absorbs rounding in quotients that are integers in exact arithmetic.
inline std::size_t rounds_to_cover(double dist, double r_ctr) {
  const double q = dist / r_ctr;
  if (q <= 1e-9) return 0;
  return static_cast<std::size_t>(std::ceil(q * (1.0 - 1e-9)));
}

struct CentralizedSolution {
  std::size_t t_star = 0;
  Point target;
  /// Set of optimal rendezvous points for the inf-norm bound; empty for the
  /// 2-norm bound.
  std::optional<Orthotope> target_region;
};

/// Minimum-time rendezvous under ||u||_2 <= r_ctr on the complete graph:
/// everybody heads to the ball center.
inline CentralizedSolution centralized_mtr_ball(std::span<const Point> positions, double r_ctr) {
  if (!(r_ctr > 0.0)) throw std::domain_error("r_ctr must be positive");
  const Ball meb = minimal_enclosing_ball(positions);
  return {rounds_to_cover(meb.radius, r_ctr), meb.center, std::nullopt};
}

/// Minimum-time rendezvous under ||u||_inf <= r_ctr: any point of the region
/// prod_a [c_a - (l_max - l_a)/2, c_a + (l_max - l_a)/2] is optimal; the box
/// center is returned as the representative target.
inline CentralizedSolution centralized_mtr_cube(std::span<const Point> positions, double r_ctr) {
  if (!(r_ctr > 0.0)) throw std::domain_error("r_ctr must be positive");
  const Orthotope meo = minimal_enclosing_orthotope(positions);
  const Point center = orthotope_center(meo);
  const double l_max = meo.max_side();
  Orthotope region{center, center};
  for (std::size_t a = 0; a < meo.dim(); ++a) {
    const double slack = 0.5 * (l_max - meo.side(a));
    region.lo[a] = center[a] - slack;
    region.hi[a] = center[a] + slack;
  }
  return {rounds_to_cover(0.5 * l_max, r_ctr), center, region};
}

inline CentralizedSolution centralized_solution(std::span<const Point> positions, InputSet input_set, double r_ctr) {
  return input_set == InputSet::ball_bound ? centralized_mtr_ball(positions, r_ctr)
                                           : centralized_mtr_cube(positions, r_ctr);
}

/// Logic variables of the rendezvous law: the flooding state plus the local
/// termination detector driving the consensus flag.
template <class Flood>
struct AgentLogic {
  Flood flood;
  std::size_t stable_rounds = 0;
  bool consensus = false;
};

/// Standard message map: position and logic.
template <class Flood>
struct AgentMessage {
  Point position;
  Flood flood;
};

template <class Flood>
using RendezvousLaw = LawBundle<AgentLogic<Flood>, AgentMessage<Flood>>;

template <class Flood>
ControlDecision pursue(const Point& p, const Flood& w, std::span<const Point> neighbors, const ControlParams& params,
                       bool consensus_flag) {
  if constexpr (std::is_same_v<Flood, MebLogicState>) {
    return ctl_meb(p, w, neighbors, params, consensus_flag);
  } else {
    return ctl_meo(p, w, neighbors, params, consensus_flag);
  }
}

/// Rounds a local shape must stay unchanged before an agent declares
/// consensus when the graph diameter is unknown: n - 1 bounds it.
inline std::size_t default_rounds_required(std::size_t n) noexcept { return std::max<std::size_t>(1, n - 1); }

template <class Flood>
RendezvousLaw<Flood> assemble_law(const NetworkConfig& config, std::optional<std::size_t> rounds_required = std::nullopt,
                                  double tol = kDefaultTol) {
  config.validate();
  using Logic = AgentLogic<Flood>;
  using Payload = AgentMessage<Flood>;
  const std::size_t required = rounds_required.value_or(default_rounds_required(config.n));
  if (required < 1) throw std::domain_error("rounds_required must be >= 1");
  const ControlParams params = ControlParams::from(config);

  RendezvousLaw<Flood> law;
  law.msg = [](const Point& x, const Logic& w, std::size_t) -> Message<Payload> { return Payload{x, w.flood}; };
  law.stf = [required, tol](const Logic& own, std::span<const Message<Payload>> received) {
    std::vector<std::optional<Flood>> floods(received.size());
    for (std::size_t j = 0; j < received.size(); ++j) {
      if (received[j]) floods[j] = received[j]->flood;
    }
    Logic next;
    next.flood = FloodTraits<Flood>::stf(own.flood, floods, tol);
    next.stable_rounds = same_shape(shape_of(next.flood), shape_of(own.flood), tol) ? own.stable_rounds + 1 : 0;
    next.consensus = own.consensus || next.stable_rounds >= required;
    return next;
  };
  law.ctl = [params](const Point& x, const Logic& w, std::span<const Message<Payload>> received) {
    std::vector<Point> neighbors;
    for (const auto& m : received) {
      if (m) neighbors.push_back(m->position);
    }
    return pursue(x, w.flood, neighbors, params, w.consensus);
  };
  return law;
}

using AnyRendezvousLaw = std::variant<RendezvousLaw<MebLogicState>, RendezvousLaw<MeoLogicState>>;

inline AnyRendezvousLaw assemble_law(LawVariant variant, const NetworkConfig& config,
                                     std::optional<std::size_t> rounds_required = std::nullopt) {
  if (variant == LawVariant::meb) return assemble_law<MebLogicState>(config, rounds_required);
  return assemble_law<MeoLogicState>(config, rounds_required);
}

template <class Flood>
std::vector<AgentState<AgentLogic<Flood>>> initial_agents(std::span<const Point> positions) {
  std::vector<AgentState<AgentLogic<Flood>>> out;
  out.reserve(positions.size());
  for (const Point& p : positions) out.push_back({p, {FloodTraits<Flood>::init(p), 0, false}});
  return out;
}

}  // namespace rendezvous
