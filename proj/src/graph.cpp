#include "commspread/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "commspread/error.hpp"

namespace commspread {

Graph::Graph(std::size_t node_count, std::span<const Edge> edges, std::vector<std::string> labels)
    : offsets_(node_count + 1, 0), labels_(std::move(labels)) {
  if (labels_.empty()) {
    labels_.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != node_count) throw DataError("label count does not match node count");

  for (const auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count) throw DataError("edge endpoint out of range");
    if (e.u == e.v) throw DataError("self-loop on node " + labels_[e.u]);
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

  targets_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges) {
    targets_[cursor[e.u]++] = e.v;
    targets_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last)
      throw DataError("duplicate edge at node " + labels_[v]);
  }

  index_.reserve(node_count);
  for (std::size_t v = 0; v < node_count; ++v) {
    if (!index_.emplace(labels_[v], static_cast<NodeId>(v)).second)
      throw DataError("duplicate node label " + labels_[v]);
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  auto nb = degree(u) <= degree(v) ? neighbors(u) : neighbors(v);
  NodeId other = degree(u) <= degree(v) ? v : u;
  return std::binary_search(nb.begin(), nb.end(), other);
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.push_back({u, v});
  return out;
}

Graph Graph::induced_subgraph(std::span<const NodeId> keep) const {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(node_count(), kAbsent);
  std::vector<NodeId> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::string> labels;
  labels.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    remap[sorted[i]] = static_cast<NodeId>(i);
    labels.push_back(labels_[sorted[i]]);
  }
  std::vector<Edge> sub;
  for (const auto& e : edges())
    if (remap[e.u] != kAbsent && remap[e.v] != kAbsent) sub.push_back({remap[e.u], remap[e.v]});
  return Graph(sorted.size(), sub, std::move(labels));
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line, std::optional<char> delimiter) {
  std::vector<std::string_view> fields;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  auto trim = [&](std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
  };
  if (delimiter) {
    std::size_t start = 0;
    while (start <= line.size()) {
      auto pos = line.find(*delimiter, start);
      if (pos == std::string_view::npos) pos = line.size();
      auto field = trim(line.substr(start, pos - start));
      if (!field.empty()) fields.push_back(field);
      start = pos + 1;
    }
    return fields;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const LoaderOptions& options) {
  LoadReport report;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;

  auto intern = [&](std::string_view label) {
    auto [it, inserted] = ids.emplace(std::string(label), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#' || view[first] == '%') continue;
    ++report.lines_read;

    auto fields = split_fields(view, options.delimiter);
    if (fields.size() < 2)
      throw ParseError(options.source_name, line_no, "expected two endpoint labels, got '" + line + "'");

    NodeId u = intern(fields[0]);
    NodeId v = intern(fields[1]);
    if (u == v) {
      ++report.self_loops;
      continue;
    }
    auto key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    if (!seen.insert(key).second) {
      ++report.duplicate_edges;
      continue;
    }
    edges.push_back({u, v});
  }
  if (edges.empty()) throw DataError(options.source_name + ": graph has no edges");

  const auto node_count = labels.size();
  Graph g(node_count, edges, std::move(labels));
  if (options.lcc_only) {
    auto keep = largest_component_nodes(g);
    report.nodes_outside_lcc = g.node_count() - keep.size();
    if (report.nodes_outside_lcc > 0) g = g.induced_subgraph(keep);
  }
  return {std::move(g), report};
}

LoadedGraph load_edge_list_file(const std::string& path, LoaderOptions options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list '" + path + "'");
  options.source_name = path;
  return load_edge_list(in, options);
}

namespace {

// BFS component labelling over non-removed nodes; returns per-node component id
// (or -1 for removed) and component sizes.
std::pair<std::vector<std::int64_t>, std::vector<std::size_t>> components(
    const Graph& g, const std::vector<bool>& removed) {
  std::vector<std::int64_t> comp(g.node_count(), -1);
  std::vector<std::size_t> sizes;
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (removed[s] || comp[s] >= 0) continue;
    auto id = static_cast<std::int64_t>(sizes.size());
    comp[s] = id;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId w : g.neighbors(queue[head])) {
        if (removed[w] || comp[w] >= 0) continue;
        comp[w] = id;
        queue.push_back(w);
      }
    }
    sizes.push_back(queue.size());
  }
  return {std::move(comp), std::move(sizes)};
}

}  // namespace

std::size_t largest_connected_component(const Graph& g, std::span<const NodeId> removed) {
  std::vector<bool> mask(g.node_count(), false);
  for (NodeId v : removed) mask[v] = true;
  auto [comp, sizes] = components(g, mask);
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

std::vector<NodeId> largest_component_nodes(const Graph& g) {
  auto [comp, sizes] = components(g, std::vector<bool>(g.node_count(), false));
  if (sizes.empty()) return {};
  auto best = static_cast<std::int64_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> nodes;
  nodes.reserve(sizes[static_cast<std::size_t>(best)]);
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (comp[v] == best) nodes.push_back(v);
  return nodes;
}

DegreeMoments mean_degree_moments(const Graph& g) {
  const auto n = g.node_count();
  if (n == 0) return {};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    auto k = static_cast<double>(g.degree(v));
    sum += k;
    sum_sq += k * k;
  }
  return {sum / static_cast<double>(n), sum_sq / static_cast<double>(n)};
}

}  // namespace commspread
