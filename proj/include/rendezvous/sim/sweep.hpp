#pragma once

// Cartesian parameter sweeps over a scenario template. Runs are independent
// and execute on a small thread pool; results keep grid order.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "rendezvous/sim/io.hpp"
#include "rendezvous/sim/run.hpp"
#include "rendezvous/sim/scenario.hpp"

namespace rendezvous::sim {

/// Axes left empty keep the template's value; `laws` must be nonempty.
struct SweepGrid {
  std::vector<LawVariant> laws;
  std::vector<double> r_ctr;
  std::vector<std::size_t> n;
  std::vector<std::uint64_t> seeds;
};

struct SweepPoint {
  LawVariant law = LawVariant::meb;
  double r_ctr = 0.0;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
};

struct SweepEntry {
  SweepPoint point;
  std::optional<RunSummary> summary;
  std::string error;  // set when the run failed
};

inline std::vector<SweepPoint> expand_grid(const Scenario& base, const SweepGrid& grid) {
  if (grid.laws.empty()) throw std::invalid_argument("sweep grid needs at least one law variant");
  const std::vector<double> r_ctr = grid.r_ctr.empty() ? std::vector<double>{base.network.r_ctr} : grid.r_ctr;
  const std::vector<std::size_t> ns = grid.n.empty() ? std::vector<std::size_t>{base.network.n} : grid.n;
  std::vector<std::optional<std::uint64_t>> seeds;
  if (grid.seeds.empty()) {
    seeds.push_back(base.generator && base.generator->kind == GeneratorSpec::Kind::uniform
                        ? std::optional<std::uint64_t>(base.generator->seed)
                        : std::nullopt);
  } else {
    seeds.assign(grid.seeds.begin(), grid.seeds.end());
  }

  std::vector<SweepPoint> out;
  for (LawVariant law : grid.laws) {
    for (double r : r_ctr) {
      for (std::size_t n : ns) {
        for (const auto& seed : seeds) out.push_back({law, r, n, seed});
      }
    }
  }
  return out;
}

/// The template with one grid point applied. Changing the law without an
/// explicit edge map / input set in the template keeps the template's pairing.
inline Scenario instantiate(const Scenario& base, const SweepPoint& p) {
  Scenario s = base;
  s.law = p.law;
  s.network.r_ctr = p.r_ctr;
  if (p.n != base.network.n) {
    if (!base.positions.empty()) throw ScenarioError("n: cannot vary agent count with explicit positions");
    s.network.n = p.n;
  }
  if (p.seed) {
    if (!s.generator || s.generator->kind != GeneratorSpec::Kind::uniform) {
      throw ScenarioError("seed: sweeping seeds needs a uniform generator");
    }
    s.generator->seed = *p.seed;
  }
  return s;
}

inline std::vector<SweepEntry> sweep(const Scenario& base, const SweepGrid& grid, unsigned threads = 0) {
  const auto points = expand_grid(base, grid);
  std::vector<SweepEntry> out(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) out[k].point = points[k];

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      try {
        out[k].summary = run(instantiate(base, points[k])).summary;
      } catch (const std::exception& e) {
        out[k].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

inline nlohmann::json sweep_to_json(const std::vector<SweepEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j{{"law", to_string(e.point.law)}, {"r_ctr", e.point.r_ctr}, {"n", e.point.n}};
    j["seed"] = e.point.seed ? nlohmann::json(*e.point.seed) : nlohmann::json(nullptr);
    if (e.summary) {
      j["summary"] = summary_to_json(*e.summary);
    } else {
      j["error"] = e.error;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace rendezvous::sim
