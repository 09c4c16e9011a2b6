#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace commspread {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
};

/// Immutable simple undirected unweighted graph over dense node ids 0..N-1.
///
/// Adjacency lists are sorted and symmetric; self-loops and parallel edges are
/// rejected at construction. Original node labels are kept so that every output
/// can re-emit them.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from dense-id edges. Throws DataError on self-loops,
  /// duplicates or out-of-range endpoints. When `labels` is empty the labels
  /// default to the decimal node ids.
  Graph(std::size_t node_count, std::span<const Edge> edges, std::vector<std::string> labels = {});

  [[nodiscard]] std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  [[nodiscard]] std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  [[nodiscard]] bool has_edge(NodeId u, NodeId v) const noexcept;

  [[nodiscard]] const std::string& label(NodeId v) const noexcept { return labels_[v]; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] std::optional<NodeId> find(std::string_view label) const;

  /// Every edge once, with u < v, in (u, v) lexicographic order.
  [[nodiscard]] std::vector<Edge> edges() const;

  /// Induced subgraph on `keep` (ascending ids are renumbered densely in order).
  [[nodiscard]] Graph induced_subgraph(std::span<const NodeId> keep) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

struct LoaderOptions {
  /// Field separator; std::nullopt splits on any run of whitespace.
  std::optional<char> delimiter;
  /// Restrict the loaded graph to its largest connected component.
  bool lcc_only = false;
  /// Name used in parse error messages.
  std::string source_name = "<input>";
};

struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
  /// Nodes discarded by the `lcc_only` restriction.
  std::size_t nodes_outside_lcc = 0;
};

struct LoadedGraph {
  Graph graph;
  LoadReport report;
};

/// Parses an edge list. Lines starting with '#' or '%' are comments; every
/// other non-blank line needs at least two fields (extra fields are ignored).
/// Labels are mapped to dense ids in first-seen order.
LoadedGraph load_edge_list(std::istream& in, const LoaderOptions& options = {});
LoadedGraph load_edge_list_file(const std::string& path, LoaderOptions options = {});

/// Size of the largest connected component after deleting `removed`.
std::size_t largest_connected_component(const Graph& g, std::span<const NodeId> removed = {});

/// Node ids of one largest connected component (smallest id wins ties), ascending.
std::vector<NodeId> largest_component_nodes(const Graph& g);

struct DegreeMoments {
  double mean = 0.0;         // <k>
  double mean_square = 0.0;  // <k^2>
};

DegreeMoments mean_degree_moments(const Graph& g);

}  // namespace commspread
