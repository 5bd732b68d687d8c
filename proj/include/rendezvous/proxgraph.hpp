#pragma once

// State-dependent proximity graphs over agent positions and hop-distance
// queries. Agents are identified by 0-based indices.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rendezvous/geometry.hpp"

namespace rendezvous {

enum class EdgeMap { disk, cube, complete };

/// Undirected simple graph on {0..n-1}.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t size() const noexcept { return adj_.size(); }

  void add_edge(std::size_t i, std::size_t j) {
    check_id(i);
    check_id(j);
    if (i == j) throw std::domain_error("self-loop on agent " + std::to_string(i));
    if (has_edge(i, j)) return;
    adj_[i].insert(std::lower_bound(adj_[i].begin(), adj_[i].end(), j), j);
    adj_[j].insert(std::lower_bound(adj_[j].begin(), adj_[j].end(), i), i);
  }

  bool has_edge(std::size_t i, std::size_t j) const {
    check_id(i);
    check_id(j);
    return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
  }

  /// Sorted neighbor list of agent i.
  std::span<const std::size_t> neighbors(std::size_t i) const {
    check_id(i);
    return adj_[i];
  }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& row : adj_) twice += row.size();
    return twice / 2;
  }

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      for (std::size_t j : adj_[i]) {
        if (i < j) out.emplace_back(i, j);
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_id(std::size_t i) const {
    if (i >= adj_.size()) {
      throw std::domain_error("agent id " + std::to_string(i) + " out of range for graph of size " +
                              std::to_string(adj_.size()));
    }
  }

  std::vector<std::vector<std::size_t>> adj_;
};

namespace detail {

inline Graph proximity_graph(std::span<const Point> positions, double r_cmm, Norm which) {
  if (!(r_cmm > 0.0)) throw std::domain_error("communication radius must be positive");
  Graph g(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      // Closed condition, exact comparison.
      if (distance(positions[i], positions[j], which) <= r_cmm) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace detail

inline Graph disk_graph(std::span<const Point> positions, double r_cmm) {
  return detail::proximity_graph(positions, r_cmm, Norm::two);
}

inline Graph cube_graph(std::span<const Point> positions, double r_cmm) {
  return detail::proximity_graph(positions, r_cmm, Norm::inf);
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

inline Graph communication_graph(EdgeMap map, std::span<const Point> positions, double r_cmm) {
  switch (map) {
    case EdgeMap::disk:
      return disk_graph(positions, r_cmm);
    case EdgeMap::cube:
      return cube_graph(positions, r_cmm);
    case EdgeMap::complete:
      return complete_graph(positions.size());
  }
  throw std::domain_error("unknown edge map");
}

/// BFS hop counts from `source`; nullopt marks unreachable agents.
inline std::vector<std::optional<std::size_t>> hop_distances(const Graph& g, std::size_t source) {
  if (source >= g.size()) {
    throw std::domain_error("agent id " + std::to_string(source) + " out of range");
  }
  std::vector<std::optional<std::size_t>> dist(g.size());
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : g.neighbors(u)) {
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

inline std::optional<std::size_t> topological_distance(const Graph& g, std::size_t i, std::size_t j) {
  if (j >= g.size()) throw std::domain_error("agent id " + std::to_string(j) + " out of range");
  return hop_distances(g, i)[j];
}

/// Maximum pairwise hop distance; nullopt when the graph is disconnected.
inline std::optional<std::size_t> graph_diameter(const Graph& g) {
  std::size_t diam = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& d : hop_distances(g, i)) {
      if (!d) return std::nullopt;
      diam = std::max(diam, *d);
    }
  }
  return diam;
}

inline bool is_connected(const Graph& g) {
  if (g.size() <= 1) return true;
  const auto dist = hop_distances(g, 0);
  return std::all_of(dist.begin(), dist.end(), [](const auto& d) { return d.has_value(); });
}

}  // namespace rendezvous
