#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "commspread/centrality.hpp"
#include "commspread/graph.hpp"
#include "commspread/partition.hpp"
#include "commspread/sir.hpp"
#include "commspread/stats.hpp"

namespace commspread {

struct NetworkSpec {
  std::string id;
  std::string graph_path;
  std::optional<std::string> partition_path;
  std::optional<std::uint64_t> louvain_seed;
  bool lcc_only = false;
  std::optional<char> delimiter;
};

std::vector<double> default_fo_grid();
std::vector<double> default_dismantle_fractions();

struct ExperimentSpec {
  std::vector<NetworkSpec> networks;
  std::vector<Measure> measures{kCommunityMeasures.begin(), kCommunityMeasures.end()};
  std::vector<double> fo_grid = default_fo_grid();
  /// lambda is ignored; each sweep uses epidemic_threshold * multiplier.
  SirConfig sir;
  std::vector<double> lambda_multipliers{1.0};
  MeasureConfig measure_config;
  std::vector<double> dismantle_fractions = default_dismantle_fractions();
  bool run_sir = true;
  bool run_dismantling = true;
  std::string output_dir = ".";
};

void validate(const ExperimentSpec& spec);

/// A (network, measure) cell or analysis step left out of the report.
struct Skip {
  std::string network_id;
  std::string item;
  std::string reason;
};

struct NetworkInput {
  std::string id;
  Graph graph;
  Partition partition;
  LoadReport load_report;
  std::string partition_source;
};

NetworkInput load_network(const NetworkSpec& spec);

/// Scores for every requested measure, computed concurrently. Measures that are
/// undefined on this network are left out and recorded in `skips`.
std::vector<ScoreVector> compute_measures(const std::string& network_id, const Graph& g, const Partition& p,
                                          std::span<const Measure> measures, const MeasureConfig& cfg,
                                          std::vector<Skip>& skips);

/// Pairwise tau-b over the given score vectors (raw scores, ties kept).
CorrelationMatrix correlation_heatmap(const std::string& network_id, std::span<const ScoreVector> scores);

/// Measures whose pairwise tau-b values are averaged per network: the
/// community-aware measures other than modularity vitality.
inline constexpr std::array<Measure, 6> kMeanTauMeasures = {
    Measure::CommunityHubBridge,     Measure::ParticipationCoefficient, Measure::CommunityBasedMediator,
    Measure::CommCentrality,         Measure::CommunityBasedCentrality, Measure::KShellWithCommunity,
};

/// Mean off-diagonal tau-b among the kMeanTauMeasures present in the heatmap;
/// nullopt when fewer than two of them are present.
std::optional<double> mean_community_tau(const CorrelationMatrix& heatmap);

struct NetworkCorrelation {
  std::vector<std::string> network_ids;
  std::vector<double> values;  // row-major
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[i * network_ids.size() + j]; }
};

/// Pearson correlation between the flattened upper triangles of each pair of
/// heatmaps (all heatmaps must share the same measure order).
NetworkCorrelation cross_network_pearson(std::span<const CorrelationMatrix> heatmaps);

/// OLS of per-network mean tau-b on per-network mixing parameter.
RegressionResult mu_regression(std::span<const double> mixing, std::span<const double> mean_tau);

struct DeltaRPoint {
  double fo = 0.0;
  std::size_t seed_count = 0;
  std::optional<double> delta_r;  // nullopt when the baseline outbreak is 0
  double mean_r_measure = 0.0;
  double mean_r_baseline = 0.0;
  double std_r_measure = 0.0;
};

struct DeltaRCurve {
  std::string network_id;
  Measure measure = Measure::Degree;
  double lambda_multiplier = 1.0;
  double lambda = 0.0;
  std::vector<DeltaRPoint> points;
};

/// Relative outbreak gain (R_c - R_b) / R_b of each measure over the degree
/// baseline at every seed fraction. Measure and baseline share the run-indexed
/// random streams of `sir`, so identical seed sets give identical outcomes.
std::vector<DeltaRCurve> delta_r_sweep(const std::string& network_id, const Graph& g,
                                       std::span<const ScoreVector> measures, const ScoreVector& baseline,
                                       std::span<const double> fo_grid, const SirConfig& sir,
                                       double lambda_multiplier = 1.0);

struct DismantlingPoint {
  double fraction = 0.0;
  std::size_t removed = 0;
  std::size_t lcc = 0;
};

struct DismantlingCurve {
  std::string network_id;
  Measure measure = Measure::Degree;
  std::vector<DismantlingPoint> points;
};

/// Number of nodes removed at fraction f: floor(f * N).
std::size_t removal_count(double fraction, std::size_t node_count);

/// Static-ranking attack: remove the top floor(f * N) nodes and measure the
/// largest remaining component, for every f in `fractions`.
DismantlingCurve lcc_dismantling(const std::string& network_id, const Graph& g, const ScoreVector& ranking,
                                 std::span<const double> fractions);

struct NetworkReport {
  std::string id;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  DegreeMoments moments;
  std::optional<double> epidemic_threshold;
  std::size_t community_count = 0;
  double modularity = 0.0;
  double mixing = 0.0;
  StrengthCategory category = StrengthCategory::Medium;
  std::string partition_source;
  LoadReport load_report;
  CorrelationMatrix heatmap;
  std::optional<double> mean_tau;
  std::vector<DeltaRCurve> delta_r;
  std::vector<DismantlingCurve> dismantling;
  bool degree_self_check = true;
};

struct ExperimentReport {
  std::vector<NetworkReport> networks;
  std::optional<NetworkCorrelation> cross_network;
  std::optional<RegressionResult> regression;
  std::vector<Skip> skips;
  std::vector<std::string> warnings;
  std::map<std::string, double> timings_ms;
};

/// Full pipeline over every network of the spec. Work runs in parallel over
/// networks, measures and SIR runs; results are independent of scheduling.
ExperimentReport run_experiment(const ExperimentSpec& spec);

}  // namespace commspread
