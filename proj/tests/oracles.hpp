#pragma once

// Independent reference implementations used only by the tests. None of these
// call into the library's algorithms beyond plain data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rendezvous/geometry.hpp"
#include "rendezvous/proxgraph.hpp"

namespace oracle {

using rendezvous::Point;

struct RefBall {
  std::vector<double> center;
  double radius = 0.0;
};

// Smallest ball through the points of `subset` centered in their affine hull,
// via the Gram system solved with Eigen. nullopt for affinely dependent sets.
inline std::optional<RefBall> circumscribed(const std::vector<Point>& pts, const std::vector<std::size_t>& subset) {
  const std::size_t d = pts.front().dim();
  const Point& p0 = pts[subset[0]];
  const auto k = static_cast<Eigen::Index>(subset.size() - 1);
  RefBall out;
  out.center.assign(p0.begin(), p0.end());
  if (k == 0) return out;
  Eigen::MatrixXd v(static_cast<Eigen::Index>(d), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (std::size_t a = 0; a < d; ++a) v(static_cast<Eigen::Index>(a), j) = pts[subset[j + 1]][a] - p0[a];
  }
  const Eigen::MatrixXd gram = 2.0 * v.transpose() * v;
  const Eigen::VectorXd rhs = v.colwise().squaredNorm().transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  lu.setThreshold(1e-12);
  if (lu.rank() < k) return std::nullopt;
  const Eigen::VectorXd lambda = lu.solve(rhs);
  const Eigen::VectorXd offset = v * lambda;
  for (std::size_t a = 0; a < d; ++a) out.center[a] += offset(static_cast<Eigen::Index>(a));
  out.radius = offset.norm();
  return out;
}

// Minimal enclosing ball by exhaustive search over all subsets of size <= d+1.
inline RefBall brute_force_meb(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  const std::size_t d = pts.front().dim();
  RefBall best;
  best.radius = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> subset;
  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    if (!subset.empty()) {
      if (auto b = circumscribed(pts, subset); b && b->radius < best.radius) {
        bool encloses = true;
        for (const Point& p : pts) {
          double s = 0.0;
          for (std::size_t a = 0; a < d; ++a) s += (p[a] - b->center[a]) * (p[a] - b->center[a]);
          if (std::sqrt(s) > b->radius * (1.0 + 1e-12) + 1e-12) {
            encloses = false;
            break;
          }
        }
        if (encloses) best = *b;
      }
    }
    if (subset.size() == d + 1) return;
    for (std::size_t i = start; i < n; ++i) {
      subset.push_back(i);
      visit(i + 1);
      subset.pop_back();
    }
  };
  visit(0);
  return best;
}

inline std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, std::size_t d, double lo = -5.0,
                                        double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    Point p(d);
    for (std::size_t a = 0; a < d; ++a) p[a] = u(rng);
    out.push_back(p);
  }
  return out;
}

// Integer coordinates in a small range so that ties and coincident points occur.
inline std::vector<Point> lattice_points(std::mt19937_64& rng, std::size_t n, std::size_t d, int range = 3) {
  std::uniform_int_distribution<int> u(-range, range);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    Point p(d);
    for (std::size_t a = 0; a < d; ++a) p[a] = u(rng);
    out.push_back(p);
  }
  return out;
}

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

inline rendezvous::Graph make_graph(std::size_t n, const EdgeList& edges) {
  rendezvous::Graph g(n);
  for (auto [i, j] : edges) g.add_edge(i, j);
  return g;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

inline bool connected_uf(std::size_t n, const EdgeList& edges) {
  UnionFind uf(n);
  for (auto [i, j] : edges) uf.unite(i, j);
  for (std::size_t i = 1; i < n; ++i) {
    if (uf.find(i) != uf.find(0)) return false;
  }
  return true;
}

// Every labeled connected graph on n vertices (n <= 6 keeps this small).
inline std::vector<EdgeList> all_connected_graphs(std::size_t n) {
  EdgeList all;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
  }
  std::vector<EdgeList> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    EdgeList e;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (mask >> k & 1) e.push_back(all[k]);
    }
    if (connected_uf(n, e)) out.push_back(std::move(e));
  }
  return out;
}

// Random spanning tree plus extra random edges.
inline EdgeList random_connected_graph(std::mt19937_64& rng, std::size_t n, double extra_density) {
  EdgeList e;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 1; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    const std::size_t parent = order[pick(rng)];
    e.emplace_back(std::min(order[k], parent), std::max(order[k], parent));
  }
  std::bernoulli_distribution coin(extra_density);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) e.emplace_back(i, j);
    }
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  e.erase(std::remove_if(e.begin(), e.end(), [](auto p) { return p.first == p.second; }), e.end());
  return e;
}

// Shortest path length by exhaustive enumeration of simple paths.
inline std::optional<std::size_t> exhaustive_distance(std::size_t n, const EdgeList& edges, std::size_t s,
                                                      std::size_t t) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [i, j] : edges) adj[i][j] = adj[j][i] = true;
  std::optional<std::size_t> best;
  std::vector<bool> on_path(n, false);
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t v, std::size_t len) {
    if (v == t) {
      if (!best || len < *best) best = len;
      return;
    }
    on_path[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (adj[v][w] && !on_path[w]) walk(w, len + 1);
    }
    on_path[v] = false;
  };
  walk(s, 0);
  return best;
}

// Direct per-axis max/min flooding on plain arrays: the first round at which
// every agent knows every coordinate extreme.
inline std::size_t flood_extremes_rounds(std::size_t n, const EdgeList& edges, const std::vector<Point>& pos) {
  const std::size_t d = pos.front().dim();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<std::vector<double>> lo(n, std::vector<double>(d)), hi(n, std::vector<double>(d));
  std::vector<double> glo(d, std::numeric_limits<double>::infinity()), ghi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      lo[i][a] = hi[i][a] = pos[i][a];
      glo[a] = std::min(glo[a], pos[i][a]);
      ghi[a] = std::max(ghi[a], pos[i][a]);
    }
  }
  auto done = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (lo[i] != glo || hi[i] != ghi) return false;
    }
    return true;
  };
  std::size_t t = 0;
  while (!done()) {
    auto nlo = lo;
    auto nhi = hi;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : adj[i]) {
        for (std::size_t a = 0; a < d; ++a) {
          nlo[i][a] = std::min(nlo[i][a], lo[j][a]);
          nhi[i][a] = std::max(nhi[i][a], hi[j][a]);
        }
      }
    }
    lo = std::move(nlo);
    hi = std::move(nhi);
    ++t;
  }
  return t;
}

// Minimum-time rendezvous for 1-D agents with |u| <= k grid cells per round,
// found by growing each agent's reachable cell set one round at a time until
// the sets share a cell. Positions are given in grid cells. Also returns the
// set of shared cells at that round.
struct GridRendezvous {
  std::size_t rounds = 0;
  std::vector<long> meeting_cells;
};

inline GridRendezvous grid_rendezvous_1d(const std::vector<long>& cells, long k) {
  const long lo = *std::min_element(cells.begin(), cells.end());
  const long hi = *std::max_element(cells.begin(), cells.end());
  const long width = hi - lo + 1;
  std::vector<std::vector<bool>> reach(cells.size(), std::vector<bool>(static_cast<std::size_t>(width), false));
  for (std::size_t i = 0; i < cells.size(); ++i) reach[i][static_cast<std::size_t>(cells[i] - lo)] = true;
  for (std::size_t t = 0;; ++t) {
    GridRendezvous out{t, {}};
    for (long c = 0; c < width; ++c) {
      bool all = true;
      for (const auto& r : reach) all = all && r[static_cast<std::size_t>(c)];
      if (all) out.meeting_cells.push_back(c + lo);
    }
    if (!out.meeting_cells.empty()) return out;
    for (auto& r : reach) {
      std::vector<bool> next(r.size(), false);
      for (long c = 0; c < width; ++c) {
        if (!r[static_cast<std::size_t>(c)]) continue;
        for (long s = std::max(0L, c - k); s <= std::min(width - 1, c + k); ++s) next[static_cast<std::size_t>(s)] = true;
      }
      r = std::move(next);
    }
  }
}

// 2-D variant with inf-norm steps (Chebyshev dilation per round).
struct GridRendezvous2d {
  std::size_t rounds = 0;
  std::vector<std::pair<long, long>> meeting_cells;
};

inline GridRendezvous2d grid_rendezvous_2d_inf(const std::vector<std::pair<long, long>>& cells, long k) {
  long x0 = cells[0].first, x1 = x0, y0 = cells[0].second, y1 = y0;
  for (auto [x, y] : cells) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  const auto w = static_cast<std::size_t>(x1 - x0 + 1);
  const auto h = static_cast<std::size_t>(y1 - y0 + 1);
  using Grid = std::vector<std::vector<bool>>;
  std::vector<Grid> reach(cells.size(), Grid(w, std::vector<bool>(h, false)));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    reach[i][static_cast<std::size_t>(cells[i].first - x0)][static_cast<std::size_t>(cells[i].second - y0)] = true;
  }
  for (std::size_t t = 0;; ++t) {
    GridRendezvous2d out{t, {}};
    for (std::size_t x = 0; x < w; ++x) {
      for (std::size_t y = 0; y < h; ++y) {
        bool all = true;
        for (const auto& r : reach) all = all && r[x][y];
        if (all) out.meeting_cells.emplace_back(static_cast<long>(x) + x0, static_cast<long>(y) + y0);
      }
    }
    if (!out.meeting_cells.empty()) return out;
    for (auto& r : reach) {
      Grid next(w, std::vector<bool>(h, false));
      for (long x = 0; x < static_cast<long>(w); ++x) {
        for (long y = 0; y < static_cast<long>(h); ++y) {
          if (!r[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) continue;
          for (long sx = std::max(0L, x - k); sx <= std::min(static_cast<long>(w) - 1, x + k); ++sx) {
            for (long sy = std::max(0L, y - k); sy <= std::min(static_cast<long>(h) - 1, y + k); ++sy) {
              next[static_cast<std::size_t>(sx)][static_cast<std::size_t>(sy)] = true;
            }
          }
        }
      }
      r = std::move(next);
    }
  }
}

}  // namespace oracle
