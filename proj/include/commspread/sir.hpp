#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "commspread/centrality.hpp"
#include "commspread/graph.hpp"

namespace commspread {

struct SirConfig {
  double lambda = 0.0;  // per-contact, per-step infection probability
  double gamma = 1.0;   // per-step recovery probability
  std::size_t runs = 100;
  std::uint64_t master_seed = 0;
  std::size_t max_steps = 1'000'000;
};

void validate(const SirConfig& cfg);

struct SirOutcome {
  double mean_recovered = 0.0;
  /// Sample standard deviation over runs (0 for a single run).
  double std_recovered = 0.0;
  std::vector<std::size_t> per_run_recovered;
  std::size_t seed_set_size = 0;

  [[nodiscard]] double standard_error() const;
};

/// lambda_th = <k> / (<k^2> - <k>). Throws ComputationError when <k^2> <= <k>.
double epidemic_threshold(const Graph& g);

/// Number of seeds for fraction f_o of N nodes: max(1, floor(f_o * N)).
std::size_t seed_count(double fraction, std::size_t node_count);

/// The first seed_count(f_o, N) nodes of the ranking. Throws UsageError unless 0 < f_o <= 1.
std::vector<NodeId> select_seed_set(const ScoreVector& ranking, double fraction, const Graph& g);

/// Independent engine for run `run` of an experiment seeded with `master_seed`.
std::mt19937_64 run_stream(std::uint64_t master_seed, std::uint64_t run);

enum class SirState : std::uint8_t { Susceptible, Infected, Recovered };

/// Called on every state change: (node, from, to, step).
using SirTransitionObserver = std::function<void(NodeId, SirState, SirState, std::size_t)>;

/// One discrete-time synchronous SIR realisation; returns the final number of
/// recovered nodes. Nodes infected during a step start spreading (and may
/// recover) from the next step on.
std::size_t simulate_sir_once(const Graph& g, std::span<const NodeId> seeds, double lambda, double gamma,
                              std::mt19937_64& rng, std::size_t max_steps,
                              const SirTransitionObserver& observer = {});

/// cfg.runs independent realisations; run r uses run_stream(master_seed, r),
/// so results do not depend on how runs are scheduled across threads.
SirOutcome run_sir(const Graph& g, std::span<const NodeId> seeds, const SirConfig& cfg);

}  // namespace commspread
