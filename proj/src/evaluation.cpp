#include "commspread/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include <tbb/parallel_for.h>

#include "commspread/error.hpp"

namespace commspread {

std::vector<double> default_fo_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(i / 100.0);
  return grid;
}

std::vector<double> default_dismantle_fractions() {
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(i / 100.0);
  return grid;
}

void validate(const ExperimentSpec& spec) {
  if (spec.networks.empty()) throw UsageError("experiment needs at least one network");
  std::set<std::string> ids;
  for (const auto& net : spec.networks) {
    if (net.id.empty()) throw UsageError("network id must not be empty");
    if (net.id.find_first_of("/\\ \t") != std::string::npos)
      throw UsageError("network id '" + net.id + "' must not contain path separators or whitespace");
    if (!ids.insert(net.id).second) throw UsageError("duplicate network id '" + net.id + "'");
    if (net.graph_path.empty()) throw UsageError("network '" + net.id + "' has no graph");
    if (net.partition_path.has_value() == net.louvain_seed.has_value())
      throw UsageError("network '" + net.id + "' needs exactly one of partition or louvain seed");
  }
  if (spec.measures.empty()) throw UsageError("experiment needs at least one measure");
  for (std::size_t i = 0; i < spec.fo_grid.size(); ++i) {
    const double fo = spec.fo_grid[i];
    if (!(fo > 0.0 && fo <= 1.0)) throw UsageError("f_o grid values must lie in (0, 1]");
    if (i > 0 && !(fo > spec.fo_grid[i - 1])) throw UsageError("f_o grid must be strictly increasing");
  }
  for (double f : spec.dismantle_fractions)
    if (!(f >= 0.0 && f <= 1.0)) throw UsageError("dismantling fractions must lie in [0, 1]");
  for (double m : spec.lambda_multipliers)
    if (!(m > 0.0)) throw UsageError("lambda multipliers must be positive");
  if (spec.run_sir && spec.fo_grid.empty()) throw UsageError("f_o grid is empty");
  SirConfig probe = spec.sir;
  probe.lambda = 0.0;
  validate(probe);
  validate(spec.measure_config);
}

NetworkInput load_network(const NetworkSpec& spec) {
  LoaderOptions options;
  options.delimiter = spec.delimiter;
  options.lcc_only = spec.lcc_only;
  auto loaded = load_edge_list_file(spec.graph_path, options);

  NetworkInput in;
  in.id = spec.id;
  in.load_report = loaded.report;
  in.graph = std::move(loaded.graph);
  if (spec.partition_path) {
    PartitionLoadOptions popts;
    popts.ignore_unknown_nodes = spec.lcc_only;
    in.partition = load_partition_file(*spec.partition_path, in.graph, popts);
    in.partition_source = "file:" + *spec.partition_path;
  } else {
    in.partition = louvain_partition(in.graph, *spec.louvain_seed).partition;
    in.partition_source = "louvain:" + std::to_string(*spec.louvain_seed);
  }
  return in;
}

std::vector<ScoreVector> compute_measures(const std::string& network_id, const Graph& g, const Partition& p,
                                          std::span<const Measure> measures, const MeasureConfig& cfg,
                                          std::vector<Skip>& skips) {
  std::vector<std::optional<ScoreVector>> slots(measures.size());
  std::vector<std::optional<std::string>> failures(measures.size());
  tbb::parallel_for(std::size_t{0}, measures.size(), [&](std::size_t i) {
    try {
      slots[i] = compute_measure(measures[i], g, p, cfg);
    } catch (const MeasureUndefined& e) {
      failures[i] = e.what();
    }
  });
  std::vector<ScoreVector> out;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (slots[i]) {
      out.push_back(std::move(*slots[i]));
    } else {
      skips.push_back({network_id, std::string(measure_name(measures[i])), *failures[i]});
    }
  }
  return out;
}

CorrelationMatrix correlation_heatmap(const std::string& network_id, std::span<const ScoreVector> scores) {
  CorrelationMatrix hm;
  hm.network_id = network_id;
  const auto k = scores.size();
  for (const auto& s : scores) hm.measures.push_back(s.measure);
  hm.values.assign(k * k, 0.0);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    hm.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::optional<std::string>> failures(pairs.size());
  tbb::parallel_for(std::size_t{0}, pairs.size(), [&](std::size_t idx) {
    const auto [i, j] = pairs[idx];
    try {
      const double tau = kendall_tau_b(scores[i].scores, scores[j].scores);
      hm.at(i, j) = tau;
      hm.at(j, i) = tau;
    } catch (const ComputationError& e) {
      failures[idx] = e.what();
    }
  });
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    if (failures[idx]) {
      const auto [i, j] = pairs[idx];
      throw ComputationError(network_id + ": tau-b between " + std::string(measure_name(hm.measures[i])) +
                             " and " + std::string(measure_name(hm.measures[j])) + ": " + *failures[idx]);
    }
  }
  return hm;
}

std::optional<double> mean_community_tau(const CorrelationMatrix& heatmap) {
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < heatmap.size(); ++i)
    if (std::find(kMeanTauMeasures.begin(), kMeanTauMeasures.end(), heatmap.measures[i]) != kMeanTauMeasures.end())
      index.push_back(i);
  if (index.size() < 2) return std::nullopt;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t a = 0; a < index.size(); ++a)
    for (std::size_t b = a + 1; b < index.size(); ++b) {
      sum += heatmap.at(index[a], index[b]);
      ++count;
    }
  return sum / static_cast<double>(count);
}

NetworkCorrelation cross_network_pearson(std::span<const CorrelationMatrix> heatmaps) {
  if (heatmaps.size() < 2) throw UsageError("cross-network correlation needs at least two networks");
  for (const auto& hm : heatmaps)
    if (hm.measures != heatmaps.front().measures)
      throw UsageError("heatmap of '" + hm.network_id + "' uses a different measure order");

  std::vector<std::vector<double>> vectors;
  for (const auto& hm : heatmaps) {
    vectors.push_back(hm.upper_triangle());
    const auto& v = vectors.back();
    if (v.size() < 2 || std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); }))
      throw ComputationError("correlation vector of network '" + hm.network_id + "' has zero variance");
  }

  NetworkCorrelation out;
  const auto n = heatmaps.size();
  for (const auto& hm : heatmaps) out.network_ids.push_back(hm.network_id);
  out.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double rho = pearson(vectors[i], vectors[j]);
      out.values[i * n + j] = rho;
      out.values[j * n + i] = rho;
    }
  }
  return out;
}

RegressionResult mu_regression(std::span<const double> mixing, std::span<const double> mean_tau) {
  if (mixing.size() < 3) throw ComputationError("mixing regression needs at least three networks");
  return ols_regression(mixing, mean_tau);
}

std::vector<DeltaRCurve> delta_r_sweep(const std::string& network_id, const Graph& g,
                                       std::span<const ScoreVector> measures, const ScoreVector& baseline,
                                       std::span<const double> fo_grid, const SirConfig& sir,
                                       double lambda_multiplier) {
  validate(sir);
  // Baseline outcomes are shared by every measure.
  std::vector<SirOutcome> base(fo_grid.size());
  tbb::parallel_for(std::size_t{0}, fo_grid.size(), [&](std::size_t f) {
    base[f] = run_sir(g, select_seed_set(baseline, fo_grid[f], g), sir);
  });

  std::vector<DeltaRCurve> curves(measures.size());
  for (std::size_t m = 0; m < measures.size(); ++m) {
    curves[m].network_id = network_id;
    curves[m].measure = measures[m].measure;
    curves[m].lambda_multiplier = lambda_multiplier;
    curves[m].lambda = sir.lambda;
    curves[m].points.resize(fo_grid.size());
  }
  tbb::parallel_for(std::size_t{0}, measures.size() * fo_grid.size(), [&](std::size_t job) {
    const auto m = job / fo_grid.size();
    const auto f = job % fo_grid.size();
    const auto seeds = select_seed_set(measures[m], fo_grid[f], g);
    const auto outcome = run_sir(g, seeds, sir);
    DeltaRPoint pt;
    pt.fo = fo_grid[f];
    pt.seed_count = seeds.size();
    pt.mean_r_measure = outcome.mean_recovered;
    pt.mean_r_baseline = base[f].mean_recovered;
    pt.std_r_measure = outcome.std_recovered;
    if (pt.mean_r_baseline > 0.0) pt.delta_r = (pt.mean_r_measure - pt.mean_r_baseline) / pt.mean_r_baseline;
    curves[m].points[f] = pt;
  });
  return curves;
}

std::size_t removal_count(double fraction, std::size_t node_count) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw UsageError("removal fraction must lie in [0, 1]");
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(node_count) + 1e-9));
  return std::min(count, node_count);
}

DismantlingCurve lcc_dismantling(const std::string& network_id, const Graph& g, const ScoreVector& ranking,
                                 std::span<const double> fractions) {
  const auto n = g.node_count();
  std::vector<std::size_t> lcc_after(n + 1, 0);  // lcc_after[r]: LCC with the top r nodes removed

  // Re-insert nodes from the lowest-ranked upwards, tracking components with union-find.
  std::vector<NodeId> parent(n);
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> present(n, false);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::size_t largest = 0;
  for (std::size_t r = n; r-- > 0;) {
    const NodeId v = ranking.ranking[r];
    present[v] = true;
    largest = std::max<std::size_t>(largest, 1);
    for (NodeId w : g.neighbors(v)) {
      if (!present[w]) continue;
      auto a = find(v);
      auto b = find(w);
      if (a == b) continue;
      if (size[a] < size[b]) std::swap(a, b);
      parent[b] = a;
      size[a] += size[b];
      largest = std::max(largest, size[a]);
    }
    lcc_after[r] = largest;
  }

  DismantlingCurve curve;
  curve.network_id = network_id;
  curve.measure = ranking.measure;
  for (double f : fractions) {
    const auto removed = removal_count(f, n);
    curve.points.push_back({f, removed, lcc_after[removed]});
  }
  return curve;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct NetworkResult {
  NetworkReport report;
  std::vector<Skip> skips;
  std::vector<std::string> warnings;
  std::map<std::string, double> timings_ms;
};

NetworkResult evaluate_network(const ExperimentSpec& spec, const NetworkSpec& net) {
  NetworkResult result;
  auto& rep = result.report;
  auto t0 = Clock::now();
  auto input = load_network(net);
  const auto& g = input.graph;
  const auto& p = input.partition;
  result.timings_ms["load"] = elapsed_ms(t0);

  rep.id = net.id;
  rep.node_count = g.node_count();
  rep.edge_count = g.edge_count();
  rep.moments = mean_degree_moments(g);
  rep.community_count = p.community_count();
  rep.modularity = modularity(g, p);
  rep.mixing = mixing_parameter(g, p);
  rep.category = strength_category(rep.mixing);
  rep.partition_source = input.partition_source;
  rep.load_report = input.load_report;
  try {
    rep.epidemic_threshold = epidemic_threshold(g);
  } catch (const ComputationError& e) {
    result.skips.push_back({net.id, "epidemic_threshold", e.what()});
  }

  t0 = Clock::now();
  auto scores = compute_measures(net.id, g, p, spec.measures, spec.measure_config, result.skips);
  const auto baseline = degree_centrality(g, p);
  result.timings_ms["measures"] = elapsed_ms(t0);

  t0 = Clock::now();
  rep.heatmap = correlation_heatmap(net.id, scores);
  rep.mean_tau = mean_community_tau(rep.heatmap);
  result.timings_ms["heatmap"] = elapsed_ms(t0);

  // Degree always joins the sweep and the attack curves as the reference.
  std::vector<ScoreVector> with_degree = scores;
  if (std::none_of(scores.begin(), scores.end(), [](const ScoreVector& s) { return s.measure == Measure::Degree; }))
    with_degree.insert(with_degree.begin(), baseline);

  if (spec.run_sir && rep.epidemic_threshold) {
    t0 = Clock::now();
    for (double multiplier : spec.lambda_multipliers) {
      SirConfig sir = spec.sir;
      sir.lambda = *rep.epidemic_threshold * multiplier;
      if (sir.lambda > 1.0) {
        result.skips.push_back({net.id, "sir@" + std::to_string(multiplier), "infection probability exceeds 1"});
        continue;
      }
      auto curves = delta_r_sweep(net.id, g, with_degree, baseline, spec.fo_grid, sir, multiplier);
      for (const auto& c : curves) {
        for (const auto& pt : c.points)
          if (!pt.delta_r)
            result.warnings.push_back(net.id + ": baseline outbreak is 0 at f_o=" + std::to_string(pt.fo));
        if (c.measure == Measure::Degree) {
          const bool zero = std::all_of(c.points.begin(), c.points.end(),
                                        [](const DeltaRPoint& pt) { return pt.delta_r && *pt.delta_r == 0.0; });
          if (!zero) {
            rep.degree_self_check = false;
            result.warnings.push_back(net.id + ": degree self-comparison produced a non-zero delta R");
          }
        }
      }
      rep.delta_r.insert(rep.delta_r.end(), curves.begin(), curves.end());
    }
    result.timings_ms["sir"] = elapsed_ms(t0);
  }

  if (spec.run_dismantling) {
    t0 = Clock::now();
    rep.dismantling.resize(with_degree.size());
    tbb::parallel_for(std::size_t{0}, with_degree.size(), [&](std::size_t i) {
      rep.dismantling[i] = lcc_dismantling(net.id, g, with_degree[i], spec.dismantle_fractions);
    });
    result.timings_ms["dismantling"] = elapsed_ms(t0);
  }
  return result;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  const auto start = Clock::now();
  std::vector<NetworkResult> results(spec.networks.size());
  tbb::parallel_for(std::size_t{0}, spec.networks.size(),
                    [&](std::size_t i) { results[i] = evaluate_network(spec, spec.networks[i]); });

  ExperimentReport report;
  for (auto& r : results) {
    for (const auto& [stage, ms] : r.timings_ms) report.timings_ms[r.report.id + "/" + stage] = ms;
    report.skips.insert(report.skips.end(), r.skips.begin(), r.skips.end());
    report.warnings.insert(report.warnings.end(), r.warnings.begin(), r.warnings.end());
    report.networks.push_back(std::move(r.report));
  }

  if (report.networks.size() >= 2) {
    // Compare networks on the measures every heatmap has.
    std::vector<Measure> common;
    for (auto m : spec.measures) {
      const bool everywhere = std::all_of(report.networks.begin(), report.networks.end(), [&](const NetworkReport& n) {
        return std::find(n.heatmap.measures.begin(), n.heatmap.measures.end(), m) != n.heatmap.measures.end();
      });
      if (everywhere) common.push_back(m);
    }
    if (common.size() < 3) {
      report.skips.push_back({"*", "cross_network_pearson", "fewer than three measures shared by all networks"});
    } else {
      std::vector<CorrelationMatrix> restricted;
      for (const auto& n : report.networks) restricted.push_back(n.heatmap.restricted_to(common));
      try {
        report.cross_network = cross_network_pearson(restricted);
      } catch (const ComputationError& e) {
        report.skips.push_back({"*", "cross_network_pearson", e.what()});
      }
    }
  } else {
    report.skips.push_back({"*", "cross_network_pearson", "needs at least two networks"});
  }

  std::vector<double> mixing;
  std::vector<double> mean_tau;
  for (const auto& n : report.networks) {
    if (!n.mean_tau) continue;
    mixing.push_back(n.mixing);
    mean_tau.push_back(*n.mean_tau);
  }
  if (mixing.size() >= 3) {
    try {
      report.regression = mu_regression(mixing, mean_tau);
    } catch (const ComputationError& e) {
      report.skips.push_back({"*", "mu_regression", e.what()});
    }
  } else {
    report.skips.push_back({"*", "mu_regression", "needs at least three networks with a mean tau-b"});
  }
  report.timings_ms["total"] = elapsed_ms(start);
  return report;
}

}  // namespace commspread
