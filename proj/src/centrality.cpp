#include "commspread/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "commspread/error.hpp"

namespace commspread {

std::string_view measure_name(Measure m) noexcept {
  switch (m) {
    case Measure::Degree: return "degree";
    case Measure::CommunityHubBridge: return "chb";
    case Measure::ParticipationCoefficient: return "pc";
    case Measure::CommunityBasedMediator: return "cbm";
    case Measure::CommCentrality: return "comm";
    case Measure::ModularityVitalityHubs: return "mv_plus";
    case Measure::ModularityVitalityBridges: return "mv_minus";
    case Measure::CommunityBasedCentrality: return "cbc";
    case Measure::KShellWithCommunity: return "ksc";
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) noexcept {
  for (auto m : kAllMeasures)
    if (measure_name(m) == name) return m;
  return std::nullopt;
}

void validate(const MeasureConfig& cfg) {
  if (!(cfg.comm_r > 0.0)) throw UsageError("comm R must be positive");
  if (!(cfg.ks_delta >= 0.0 && cfg.ks_delta <= 1.0)) throw UsageError("k-shell delta must lie in [0, 1]");
}

std::vector<NodeId> rank_descending(std::span<const double> scores) {
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<NodeId> rank_ascending(std::span<const double> scores) {
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return scores[a] < scores[b]; });
  return order;
}

namespace {

ScoreVector make_scores(Measure m, std::vector<double> scores) {
  ScoreVector sv;
  sv.measure = m;
  sv.ranking = m == Measure::ModularityVitalityBridges ? rank_ascending(scores) : rank_descending(scores);
  sv.scores = std::move(scores);
  return sv;
}

}  // namespace

ScoreVector degree_centrality(const Graph& g, const Partition&) {
  std::vector<double> s(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) s[v] = static_cast<double>(g.degree(v));
  return make_scores(Measure::Degree, std::move(s));
}

ScoreVector community_hub_bridge(const Graph& g, const Partition& p) {
  std::vector<double> s(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto own_size = static_cast<double>(p.size(p.community(v)));
    s[v] = own_size * static_cast<double>(p.intra_degree(v)) +
           static_cast<double>(p.foreign_community_count(v)) * static_cast<double>(p.inter_degree(v));
  }
  return make_scores(Measure::CommunityHubBridge, std::move(s));
}

ScoreVector participation_coefficient(const Graph& g, const Partition& p) {
  std::vector<double> s(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto k = static_cast<double>(g.degree(v));
    if (k == 0.0) continue;
    double concentration = 0.0;
    for (const auto& l : p.links_by_community(v)) {
      const double share = static_cast<double>(l.links) / k;
      concentration += share * share;
    }
    s[v] = 1.0 - concentration;
  }
  return make_scores(Measure::ParticipationCoefficient, std::move(s));
}

ScoreVector community_based_mediator(const Graph& g, const Partition& p) {
  std::vector<double> s(g.node_count(), 0.0);
  const double degree_sum = 2.0 * static_cast<double>(g.edge_count());
  auto plogp = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto k = static_cast<double>(g.degree(v));
    if (k == 0.0) continue;
    const double entropy =
        -plogp(static_cast<double>(p.intra_degree(v)) / k) - plogp(static_cast<double>(p.inter_degree(v)) / k);
    s[v] = entropy * k / degree_sum;
  }
  return make_scores(Measure::CommunityBasedMediator, std::move(s));
}

ScoreVector comm_centrality(const Graph& g, const Partition& p, const MeasureConfig& cfg) {
  validate(cfg);
  const auto c_count = p.community_count();
  std::vector<std::size_t> max_intra(c_count, 0);
  std::vector<std::size_t> max_inter(c_count, 0);
  std::vector<NodeId> representative(c_count, 0);
  for (NodeId v = g.node_count(); v-- > 0;) {
    const auto c = p.community(v);
    max_intra[c] = std::max(max_intra[c], p.intra_degree(v));
    max_inter[c] = std::max(max_inter[c], p.inter_degree(v));
    representative[c] = v;
  }
  if (cfg.comm_undefined == CommUndefinedPolicy::Fail) {
    for (CommunityId c = 0; c < c_count; ++c) {
      if (max_intra[c] == 0 || max_inter[c] == 0) {
        throw MeasureUndefined("comm centrality undefined: community " + std::to_string(c) + " (containing node '" +
                               g.label(representative[c]) + "') has no " +
                               (max_inter[c] == 0 ? "inter" : "intra") + "-community links");
      }
    }
  }

  std::vector<double> s(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto c = p.community(v);
    const auto incident = p.internal_edges(c) + p.boundary_edges(c);
    const double mu_c =
        incident == 0 ? 0.0 : static_cast<double>(p.boundary_edges(c)) / static_cast<double>(incident);
    const double chi = max_intra[c] == 0 ? 0.0
                                         : static_cast<double>(p.intra_degree(v)) /
                                               static_cast<double>(max_intra[c]) * cfg.comm_r;
    const double phi = max_inter[c] == 0 ? 0.0
                                          : static_cast<double>(p.inter_degree(v)) /
                                                static_cast<double>(max_inter[c]) * cfg.comm_r;
    s[v] = (1.0 + mu_c) * chi + (1.0 - mu_c) * phi * phi;
  }
  return make_scores(Measure::CommCentrality, std::move(s));
}

ScoreVector modularity_vitality(const Graph& g, const Partition& p, VitalityOrder order) {
  if (g.edge_count() == 0) throw ComputationError("modularity vitality undefined on a graph without edges");
  const auto m = static_cast<std::int64_t>(g.edge_count());
  const auto c_count = p.community_count();

  // Integer aggregates keep Q(G \ {i}) exact up to the final division.
  std::int64_t internal_sum = 0;
  std::int64_t degree_sq_sum = 0;
  for (CommunityId c = 0; c < c_count; ++c) {
    internal_sum += static_cast<std::int64_t>(p.internal_edges(c));
    const auto d = static_cast<std::int64_t>(p.total_degree(c));
    degree_sq_sum += d * d;
  }
  const double q_full = modularity(g, p);

  std::vector<double> s(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto k = static_cast<std::int64_t>(g.degree(v));
    if (k == 0) continue;
    const auto own = p.community(v);
    const auto k_intra = static_cast<std::int64_t>(p.intra_degree(v));
    const auto m_after = m - k;
    if (m_after == 0) {
      s[v] = q_full;
      continue;
    }

    std::int64_t sq_after = degree_sq_sum;
    bool own_seen = false;
    for (const auto& l : p.links_by_community(v)) {
      const auto d = static_cast<std::int64_t>(p.total_degree(l.community));
      auto d_after = d - static_cast<std::int64_t>(l.links);
      if (l.community == own) {
        d_after -= k;
        own_seen = true;
      }
      sq_after += d_after * d_after - d * d;
    }
    if (!own_seen) {
      const auto d = static_cast<std::int64_t>(p.total_degree(own));
      sq_after += (d - k) * (d - k) - d * d;
    }

    const auto md = static_cast<double>(m_after);
    const double q_after = static_cast<double>(internal_sum - k_intra) / md -
                           static_cast<double>(sq_after) / (4.0 * md * md);
    s[v] = q_full - q_after;
  }
  return make_scores(order == VitalityOrder::HubsFirst ? Measure::ModularityVitalityHubs
                                                       : Measure::ModularityVitalityBridges,
                     std::move(s));
}

ScoreVector community_based_centrality(const Graph& g, const Partition& p) {
  std::vector<double> s(g.node_count(), 0.0);
  const auto n = static_cast<double>(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    double total = 0.0;
    for (const auto& l : p.links_by_community(v))
      total += static_cast<double>(l.links) * (static_cast<double>(p.size(l.community)) / n);
    s[v] = total;
  }
  return make_scores(Measure::CommunityBasedCentrality, std::move(s));
}

std::vector<std::size_t> kshell_decomposition(const Graph& g) {
  // Batagelj-Zaversnik bucket peeling, O(N + M).
  const auto n = g.node_count();
  std::vector<std::size_t> degree(n);
  std::size_t max_degree = 0;
  for (NodeId v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    max_degree = std::max(max_degree, degree[v]);
  }
  std::vector<std::size_t> bin(max_degree + 1, 0);
  for (auto d : degree) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const auto count = b;
    b = start;
    start += count;
  }
  std::vector<NodeId> vert(n);
  std::vector<std::size_t> pos(n);
  for (NodeId v = 0; v < n; ++v) {
    pos[v] = bin[degree[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_degree; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = vert[i];
    for (NodeId u : g.neighbors(v)) {
      if (degree[u] > degree[v]) {
        const auto du = degree[u];
        const auto pu = pos[u];
        const auto pw = bin[du];
        const NodeId w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --degree[u];
      }
    }
  }
  return degree;
}

ScoreVector kshell_with_community(const Graph& g, const Partition& p, const MeasureConfig& cfg) {
  validate(cfg);
  std::vector<Edge> intra;
  std::vector<Edge> inter;
  for (const auto& e : g.edges()) (p.community(e.u) == p.community(e.v) ? intra : inter).push_back(e);
  const auto intra_shell = kshell_decomposition(Graph(g.node_count(), intra));
  const auto inter_shell = kshell_decomposition(Graph(g.node_count(), inter));

  std::vector<double> s(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    s[v] = cfg.ks_delta * static_cast<double>(intra_shell[v]) +
           (1.0 - cfg.ks_delta) * static_cast<double>(inter_shell[v]);
  return make_scores(Measure::KShellWithCommunity, std::move(s));
}

ScoreVector compute_measure(Measure m, const Graph& g, const Partition& p, const MeasureConfig& cfg) {
  switch (m) {
    case Measure::Degree: return degree_centrality(g, p);
    case Measure::CommunityHubBridge: return community_hub_bridge(g, p);
    case Measure::ParticipationCoefficient: return participation_coefficient(g, p);
    case Measure::CommunityBasedMediator: return community_based_mediator(g, p);
    case Measure::CommCentrality: return comm_centrality(g, p, cfg);
    case Measure::ModularityVitalityHubs: return modularity_vitality(g, p, VitalityOrder::HubsFirst);
    case Measure::ModularityVitalityBridges: return modularity_vitality(g, p, VitalityOrder::BridgesFirst);
    case Measure::CommunityBasedCentrality: return community_based_centrality(g, p);
    case Measure::KShellWithCommunity: return kshell_with_community(g, p, cfg);
  }
  throw UsageError("unknown measure");
}

}  // namespace commspread
