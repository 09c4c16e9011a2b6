#include "commspread/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "commspread/error.hpp"
#include "commspread/random.hpp"

namespace commspread {

namespace {

// Inverse-CDF draw from a continuous power law p(x) ~ x^-exponent on [lo, hi].
double power_law(std::mt19937_64& rng, double lo, double hi, double exponent) {
  const double u = uniform01(rng);
  if (std::abs(exponent - 1.0) < 1e-12) return lo * std::pow(hi / lo, u);
  const double a = std::pow(lo, 1.0 - exponent);
  const double b = std::pow(hi, 1.0 - exponent);
  return std::pow(a + u * (b - a), 1.0 / (1.0 - exponent));
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (uniform01(rng) < p) edges.push_back({u, v});
  return Graph(n, edges);
}

PlantedGraph planted_partition(std::span<const std::size_t> community_sizes, double p_in, double p_out,
                               std::uint64_t seed) {
  std::vector<CommunityId> assignment;
  for (CommunityId c = 0; c < community_sizes.size(); ++c)
    assignment.insert(assignment.end(), community_sizes[c], c);
  const auto n = assignment.size();
  if (n == 0) throw UsageError("planted partition needs at least one node");

  std::mt19937_64 rng(splitmix64(seed));
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (uniform01(rng) < (assignment[u] == assignment[v] ? p_in : p_out)) edges.push_back({u, v});
  Graph g(n, edges);
  Partition p(g, std::move(assignment));
  return {std::move(g), std::move(p)};
}

PlantedGraph lfr_like_benchmark(const BenchmarkSpec& spec) {
  if (spec.nodes < spec.min_community || spec.min_community == 0 || spec.max_community < spec.min_community)
    throw UsageError("benchmark community sizes inconsistent with node count");
  if (!(spec.mixing >= 0.0 && spec.mixing <= 1.0)) throw UsageError("benchmark mixing must lie in [0, 1]");
  std::mt19937_64 rng(splitmix64(spec.seed));
  const auto n = spec.nodes;

  // Expected degrees, rescaled to the requested mean.
  std::vector<double> weight(n);
  const double min_degree = std::max(1.0, spec.mean_degree / 3.0);
  for (auto& w : weight) w = power_law(rng, min_degree, spec.max_degree, spec.degree_exponent);
  const double scale = spec.mean_degree * static_cast<double>(n) / std::accumulate(weight.begin(), weight.end(), 0.0);
  for (auto& w : weight) w *= scale;

  // Community sizes until the nodes are used up; the remainder joins the last one.
  std::vector<std::size_t> sizes;
  std::size_t assigned = 0;
  while (assigned < n) {
    auto s = static_cast<std::size_t>(std::lround(power_law(rng, static_cast<double>(spec.min_community),
                                                            static_cast<double>(spec.max_community),
                                                            spec.community_exponent)));
    s = std::clamp(s, spec.min_community, spec.max_community);
    const auto remaining = n - assigned;
    if (s >= remaining || remaining - s < spec.min_community) s = remaining;
    sizes.push_back(s);
    assigned += s;
  }
  std::vector<CommunityId> assignment;
  for (CommunityId c = 0; c < sizes.size(); ++c) assignment.insert(assignment.end(), sizes[c], c);
  shuffle(assignment, rng);

  std::vector<double> community_weight(sizes.size(), 0.0);
  for (std::size_t v = 0; v < n; ++v) community_weight[assignment[v]] += weight[v];
  const double total_weight = std::accumulate(weight.begin(), weight.end(), 0.0);

  // Chung-Lu style pair probabilities within and across communities.
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const auto cu = assignment[u];
      const auto cv = assignment[v];
      double p;
      if (cu == cv) {
        p = (1.0 - spec.mixing) * weight[u] * weight[v] / community_weight[cu];
      } else {
        const double outside_u = total_weight - community_weight[cu];
        const double outside_v = total_weight - community_weight[cv];
        p = spec.mixing * weight[u] * weight[v] * 0.5 * (1.0 / outside_u + 1.0 / outside_v);
      }
      if (uniform01(rng) < p) edges.push_back({u, v});
    }
  }
  if (edges.empty()) throw UsageError("benchmark produced no edges");

  Graph full(n, edges);
  auto keep = largest_component_nodes(full);
  Graph g = full.induced_subgraph(keep);
  std::vector<std::uint64_t> raw;
  raw.reserve(keep.size());
  for (auto v : keep) raw.push_back(assignment[v]);
  Partition p = Partition::relabel(g, raw);
  return {std::move(g), std::move(p)};
}

}  // namespace commspread
