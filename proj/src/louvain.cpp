#include <algorithm>
#include <map>
#include <random>

#include "commspread/partition.hpp"
#include "commspread/random.hpp"

namespace commspread {

namespace {

constexpr double kGainEpsilon = 1e-12;

// Weighted graph used between aggregation levels. Self-loop weight counts
// each internal edge once; node strength counts it twice.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
  std::vector<double> self_loops;
  std::vector<double> strength;
  double total_weight = 0.0;  // 2m

  [[nodiscard]] std::size_t size() const { return adjacency.size(); }
};

LevelGraph from_graph(const Graph& g) {
  LevelGraph lg;
  lg.adjacency.resize(g.node_count());
  lg.self_loops.assign(g.node_count(), 0.0);
  lg.strength.assign(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId w : g.neighbors(v)) lg.adjacency[v].emplace_back(w, 1.0);
    lg.strength[v] = static_cast<double>(g.degree(v));
    lg.total_weight += lg.strength[v];
  }
  return lg;
}

std::vector<std::size_t> seeded_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  shuffle(order, rng);
  return order;
}

// One level of local moves. Returns true if any node changed community.
bool local_moves(const LevelGraph& lg, std::vector<std::size_t>& community, std::mt19937_64& rng) {
  const auto n = lg.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) tot[community[v]] += lg.strength[v];

  bool any_move = false;
  auto order = seeded_order(n, rng);
  std::map<std::size_t, double> links;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto v : order) {
      const auto own = community[v];
      const double k = lg.strength[v];
      links.clear();
      links[own] = 0.0;
      for (const auto& [w, weight] : lg.adjacency[v])
        if (w != v) links[community[w]] += weight;

      tot[own] -= k;
      const double scale = k / lg.total_weight;
      const double own_gain = links[own] - tot[own] * scale;
      std::size_t best = own;
      double best_gain = own_gain;
      // Ascending community id, so the first strictly better candidate at a
      // given gain level is the lowest id.
      for (const auto& [c, weight] : links) {
        if (c == own) continue;
        const double gain = weight - tot[c] * scale;
        if (gain > best_gain + kGainEpsilon) {
          best = c;
          best_gain = gain;
        }
      }
      tot[best] += k;
      if (best != own) {
        community[v] = best;
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::size_t>& community, std::size_t count) {
  LevelGraph next;
  next.adjacency.resize(count);
  next.self_loops.assign(count, 0.0);
  next.strength.assign(count, 0.0);
  next.total_weight = lg.total_weight;
  std::vector<std::map<std::size_t, double>> merged(count);
  for (std::size_t v = 0; v < lg.size(); ++v) {
    const auto cv = community[v];
    next.strength[cv] += lg.strength[v];
    next.self_loops[cv] += lg.self_loops[v];
    for (const auto& [w, weight] : lg.adjacency[v]) {
      const auto cw = community[w];
      if (cv == cw) {
        if (v < w) next.self_loops[cv] += weight;
      } else {
        merged[cv][cw] += weight;
      }
    }
  }
  for (std::size_t c = 0; c < count; ++c)
    for (const auto& [d, weight] : merged[c]) next.adjacency[c].emplace_back(d, weight);
  return next;
}

}  // namespace

LouvainResult louvain_partition(const Graph& g, std::uint64_t seed) {
  const auto n = g.node_count();
  std::vector<std::uint64_t> node_community(n);
  for (std::size_t v = 0; v < n; ++v) node_community[v] = v;

  if (g.edge_count() == 0) {
    auto p = Partition::relabel(g, node_community);
    return {std::move(p), 0.0};
  }

  std::mt19937_64 rng(seed);
  LevelGraph level = from_graph(g);
  while (true) {
    std::vector<std::size_t> community(level.size());
    for (std::size_t v = 0; v < level.size(); ++v) community[v] = v;
    if (!local_moves(level, community, rng)) break;

    // Dense renumbering by first appearance in level-node order.
    std::vector<std::size_t> dense(level.size(), static_cast<std::size_t>(-1));
    std::size_t count = 0;
    for (auto& c : community) {
      if (dense[c] == static_cast<std::size_t>(-1)) dense[c] = count++;
      c = dense[c];
    }
    for (auto& c : node_community) c = community[c];
    if (count == level.size()) break;
    level = aggregate(level, community, count);
  }

  auto p = Partition::relabel(g, node_community);
  const double q = modularity(g, p);
  return {std::move(p), q};
}

}  // namespace commspread
