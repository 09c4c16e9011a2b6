#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "commspread/graph.hpp"
#include "commspread/partition.hpp"

namespace commspread {

enum class Measure {
  Degree,
  CommunityHubBridge,        // chb
  ParticipationCoefficient,  // pc
  CommunityBasedMediator,    // cbm
  CommCentrality,            // comm
  ModularityVitalityHubs,    // mv_plus
  ModularityVitalityBridges, // mv_minus
  CommunityBasedCentrality,  // cbc
  KShellWithCommunity,       // ksc
};

inline constexpr std::array<Measure, 9> kAllMeasures = {
    Measure::Degree,
    Measure::CommunityHubBridge,
    Measure::ParticipationCoefficient,
    Measure::CommunityBasedMediator,
    Measure::CommCentrality,
    Measure::ModularityVitalityHubs,
    Measure::ModularityVitalityBridges,
    Measure::CommunityBasedCentrality,
    Measure::KShellWithCommunity,
};

/// The seven community-aware measures reported by default (hub-first vitality only).
inline constexpr std::array<Measure, 7> kCommunityMeasures = {
    Measure::ModularityVitalityHubs,
    Measure::CommCentrality,
    Measure::CommunityBasedMediator,
    Measure::CommunityHubBridge,
    Measure::ParticipationCoefficient,
    Measure::KShellWithCommunity,
    Measure::CommunityBasedCentrality,
};

std::string_view measure_name(Measure m) noexcept;
std::optional<Measure> parse_measure(std::string_view name) noexcept;

/// Per-node scores of one measure plus the node ranking derived from them.
struct ScoreVector {
  Measure measure = Measure::Degree;
  std::vector<double> scores;
  /// Node ids, most central first.
  std::vector<NodeId> ranking;
};

enum class CommUndefinedPolicy {
  Fail,      // throw MeasureUndefined
  ZeroTerm,  // treat a 0/0 ratio as 0
};

struct MeasureConfig {
  double comm_r = 1.0;
  double ks_delta = 0.5;
  CommUndefinedPolicy comm_undefined = CommUndefinedPolicy::Fail;
};

void validate(const MeasureConfig& cfg);

/// Score descending, then node id ascending.
std::vector<NodeId> rank_descending(std::span<const double> scores);
/// Score ascending, then node id ascending.
std::vector<NodeId> rank_ascending(std::span<const double> scores);

ScoreVector degree_centrality(const Graph& g, const Partition& p);
ScoreVector community_hub_bridge(const Graph& g, const Partition& p);
ScoreVector participation_coefficient(const Graph& g, const Partition& p);
ScoreVector community_based_mediator(const Graph& g, const Partition& p);
ScoreVector comm_centrality(const Graph& g, const Partition& p, const MeasureConfig& cfg = {});

enum class VitalityOrder { HubsFirst, BridgesFirst };

/// Q(G) - Q(G \ {i}) for every node, from the community aggregates alone.
ScoreVector modularity_vitality(const Graph& g, const Partition& p, VitalityOrder order = VitalityOrder::HubsFirst);
ScoreVector community_based_centrality(const Graph& g, const Partition& p);
ScoreVector kshell_with_community(const Graph& g, const Partition& p, const MeasureConfig& cfg = {});

/// k-shell index of every node (isolated nodes have shell 0).
std::vector<std::size_t> kshell_decomposition(const Graph& g);

ScoreVector compute_measure(Measure m, const Graph& g, const Partition& p, const MeasureConfig& cfg = {});

}  // namespace commspread
