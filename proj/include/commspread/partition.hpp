#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commspread/graph.hpp"

namespace commspread {

using CommunityId = std::uint32_t;

/// Links from one node into one community.
struct CommunityLinks {
  CommunityId community;
  std::size_t links;
};

/// Hard node-to-community assignment together with the per-community and
/// per-node link aggregates every community-aware measure is built from.
class Partition {
 public:
  Partition() = default;

  /// `assignment[v]` is the community of node v. Community ids must be dense
  /// (every id in 0..C-1 used); see `Partition::relabel` for arbitrary ids.
  Partition(const Graph& g, std::vector<CommunityId> assignment);

  /// Accepts arbitrary ids and renumbers them densely by first appearance
  /// in node order.
  static Partition relabel(const Graph& g, std::span<const std::uint64_t> raw_assignment);

  [[nodiscard]] std::size_t node_count() const noexcept { return assignment_.size(); }
  [[nodiscard]] std::size_t community_count() const noexcept { return sizes_.size(); }

  [[nodiscard]] CommunityId community(NodeId v) const noexcept { return assignment_[v]; }
  [[nodiscard]] const std::vector<CommunityId>& assignment() const noexcept { return assignment_; }

  /// n_c: node count of community c.
  [[nodiscard]] std::size_t size(CommunityId c) const noexcept { return sizes_[c]; }
  /// d_c: sum of total degrees of the members of c.
  [[nodiscard]] std::size_t total_degree(CommunityId c) const noexcept { return total_degree_[c]; }
  /// l_c: edges with both endpoints in c.
  [[nodiscard]] std::size_t internal_edges(CommunityId c) const noexcept { return internal_edges_[c]; }
  /// Edges with exactly one endpoint in c.
  [[nodiscard]] std::size_t boundary_edges(CommunityId c) const noexcept { return boundary_edges_[c]; }
  /// Edges whose endpoints lie in different communities.
  [[nodiscard]] std::size_t inter_community_edges() const noexcept { return inter_edges_; }

  [[nodiscard]] std::size_t intra_degree(NodeId v) const noexcept { return intra_[v]; }
  [[nodiscard]] std::size_t inter_degree(NodeId v) const noexcept { return inter_[v]; }

  /// Sparse k_{v,c} for every community c that v has a link into, ascending by c.
  [[nodiscard]] std::span<const CommunityLinks> links_by_community(NodeId v) const noexcept {
    return {by_community_.data() + by_offsets_[v], by_community_.data() + by_offsets_[v + 1]};
  }
  /// Number of foreign communities containing at least one neighbour of v.
  [[nodiscard]] std::size_t foreign_community_count(NodeId v) const noexcept;

  [[nodiscard]] std::vector<std::vector<NodeId>> members() const;

 private:
  std::vector<CommunityId> assignment_;
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> total_degree_;
  std::vector<std::size_t> internal_edges_;
  std::vector<std::size_t> boundary_edges_;
  std::size_t inter_edges_ = 0;
  std::vector<std::size_t> intra_;
  std::vector<std::size_t> inter_;
  std::vector<std::size_t> by_offsets_;
  std::vector<CommunityLinks> by_community_;
};

struct PartitionLoadOptions {
  std::string source_name = "<partition>";
  /// Skip lines naming nodes absent from the graph instead of failing
  /// (used when the graph was restricted to its largest component).
  bool ignore_unknown_nodes = false;
};

/// Reads "node_label community_label" lines ('#' and '%' comments).
Partition load_partition(std::istream& in, const Graph& g, const PartitionLoadOptions& options = {});
Partition load_partition_file(const std::string& path, const Graph& g, PartitionLoadOptions options = {});

struct LouvainResult {
  Partition partition;
  double modularity = 0.0;
};

/// Greedy multi-level modularity optimisation. Node visit order is a shuffle
/// seeded by `seed`; equal-gain moves go to the lowest community id.
LouvainResult louvain_partition(const Graph& g, std::uint64_t seed);

/// Newman modularity Q = sum_c [ l_c/M - (d_c/2M)^2 ]. Throws ComputationError if M = 0.
double modularity(const Graph& g, const Partition& p);

/// Mixing parameter mu = sum_i k_i^inter / sum_i k_i. Throws ComputationError if M = 0.
double mixing_parameter(const Graph& g, const Partition& p);

enum class StrengthCategory { Strong, Medium, Weak };

struct StrengthThresholds {
  double strong_max = 0.084;  // mu <= strong_max -> Strong
  double weak_min = 0.410;    // mu >= weak_min  -> Weak
};

StrengthCategory strength_category(double mu, const StrengthThresholds& thresholds = {});
std::string_view to_string(StrengthCategory category) noexcept;

}  // namespace commspread
