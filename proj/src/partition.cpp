#include "commspread/partition.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_map>

#include "commspread/error.hpp"

namespace commspread {

Partition::Partition(const Graph& g, std::vector<CommunityId> assignment) : assignment_(std::move(assignment)) {
  const auto n = g.node_count();
  if (assignment_.size() != n) throw DataError("partition size does not match node count");
  if (n == 0) throw DataError("partition has no communities");

  const CommunityId c_count = *std::max_element(assignment_.begin(), assignment_.end()) + 1;
  sizes_.assign(c_count, 0);
  total_degree_.assign(c_count, 0);
  internal_edges_.assign(c_count, 0);
  boundary_edges_.assign(c_count, 0);
  intra_.assign(n, 0);
  inter_.assign(n, 0);
  by_offsets_.assign(n + 1, 0);

  for (NodeId v = 0; v < n; ++v) {
    ++sizes_[assignment_[v]];
    total_degree_[assignment_[v]] += g.degree(v);
  }
  for (CommunityId c = 0; c < c_count; ++c)
    if (sizes_[c] == 0) throw DataError("community ids are not contiguous: id " + std::to_string(c) + " is empty");

  std::map<CommunityId, std::size_t> counts;
  for (NodeId v = 0; v < n; ++v) {
    counts.clear();
    const auto own = assignment_[v];
    for (NodeId w : g.neighbors(v)) {
      ++counts[assignment_[w]];
      if (assignment_[w] == own) {
        ++intra_[v];
        if (v < w) ++internal_edges_[own];
      } else {
        ++inter_[v];
        ++boundary_edges_[own];
        if (v < w) ++inter_edges_;
      }
    }
    for (const auto& [c, k] : counts) by_community_.push_back({c, k});
    by_offsets_[v + 1] = by_community_.size();
  }
}

Partition Partition::relabel(const Graph& g, std::span<const std::uint64_t> raw_assignment) {
  std::unordered_map<std::uint64_t, CommunityId> dense;
  std::vector<CommunityId> assignment;
  assignment.reserve(raw_assignment.size());
  for (auto raw : raw_assignment) {
    auto [it, inserted] = dense.emplace(raw, static_cast<CommunityId>(dense.size()));
    assignment.push_back(it->second);
  }
  return Partition(g, std::move(assignment));
}

std::size_t Partition::foreign_community_count(NodeId v) const noexcept {
  auto links = links_by_community(v);
  return static_cast<std::size_t>(std::count_if(links.begin(), links.end(),
                                                [&](const CommunityLinks& l) { return l.community != assignment_[v]; }));
}

std::vector<std::vector<NodeId>> Partition::members() const {
  std::vector<std::vector<NodeId>> out(community_count());
  for (NodeId v = 0; v < assignment_.size(); ++v) out[assignment_[v]].push_back(v);
  return out;
}

Partition load_partition(std::istream& in, const Graph& g, const PartitionLoadOptions& options) {
  constexpr CommunityId kUnassigned = static_cast<CommunityId>(-1);
  std::vector<CommunityId> assignment(g.node_count(), kUnassigned);
  std::unordered_map<std::string, CommunityId> community_ids;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || view[first] == '#' || view[first] == '%') continue;

    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < view.size()) {
      while (i < view.size() && (view[i] == ' ' || view[i] == '\t' || view[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < view.size() && view[j] != ' ' && view[j] != '\t' && view[j] != '\r') ++j;
      if (j > i) fields.push_back(view.substr(i, j - i));
      i = j;
    }
    if (fields.size() < 2)
      throw ParseError(options.source_name, line_no, "expected 'node_label community_label'");

    auto node = g.find(fields[0]);
    if (!node) {
      if (options.ignore_unknown_nodes) continue;
      throw ParseError(options.source_name, line_no, "node label '" + std::string(fields[0]) + "' is not in the graph");
    }
    // Dense ids are handed out only for communities that keep at least one node.
    auto [it, inserted] =
        community_ids.emplace(std::string(fields[1]), static_cast<CommunityId>(community_ids.size()));
    if (assignment[*node] != kUnassigned && assignment[*node] != it->second)
      throw ParseError(options.source_name, line_no,
                       "node '" + std::string(fields[0]) + "' is assigned to two communities");
    assignment[*node] = it->second;
  }
  if (community_ids.empty()) throw DataError(options.source_name + ": empty community set");
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (assignment[v] == kUnassigned) throw DataError(options.source_name + ": unassigned node '" + g.label(v) + "'");

  // Communities are renumbered by first appearance in node order so that ids
  // are contiguous even if some labels only named ignored nodes.
  std::vector<std::uint64_t> raw(assignment.begin(), assignment.end());
  return Partition::relabel(g, raw);
}

Partition load_partition_file(const std::string& path, const Graph& g, PartitionLoadOptions options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open partition '" + path + "'");
  options.source_name = path;
  return load_partition(in, g, options);
}

double modularity(const Graph& g, const Partition& p) {
  const auto m = static_cast<double>(g.edge_count());
  if (g.edge_count() == 0) throw ComputationError("modularity undefined on a graph without edges");
  double q = 0.0;
  for (CommunityId c = 0; c < p.community_count(); ++c) {
    const double share = static_cast<double>(p.total_degree(c)) / (2.0 * m);
    q += static_cast<double>(p.internal_edges(c)) / m - share * share;
  }
  return q;
}

double mixing_parameter(const Graph& g, const Partition& p) {
  if (g.edge_count() == 0) throw ComputationError("mixing parameter undefined on a graph without edges");
  std::size_t inter = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) inter += p.inter_degree(v);
  return static_cast<double>(inter) / (2.0 * static_cast<double>(g.edge_count()));
}

StrengthCategory strength_category(double mu, const StrengthThresholds& thresholds) {
  if (!(thresholds.strong_max < thresholds.weak_min))
    throw UsageError("strength thresholds out of order: strong_max must be below weak_min");
  if (mu <= thresholds.strong_max) return StrengthCategory::Strong;
  if (mu >= thresholds.weak_min) return StrengthCategory::Weak;
  return StrengthCategory::Medium;
}

std::string_view to_string(StrengthCategory category) noexcept {
  switch (category) {
    case StrengthCategory::Strong: return "strong";
    case StrengthCategory::Medium: return "medium";
    case StrengthCategory::Weak: return "weak";
  }
  return "unknown";
}

}  // namespace commspread
