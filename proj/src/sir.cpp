#include "commspread/sir.hpp"

#include <algorithm>
#include <cmath>

#include <tbb/parallel_for.h>

#include "commspread/error.hpp"
#include "commspread/random.hpp"

namespace commspread {

void validate(const SirConfig& cfg) {
  if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) throw UsageError("infection probability must lie in [0, 1]");
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) throw UsageError("recovery probability must lie in (0, 1]");
  if (cfg.runs < 1) throw UsageError("at least one SIR run is required");
}

double SirOutcome::standard_error() const {
  if (per_run_recovered.empty()) return 0.0;
  return std_recovered / std::sqrt(static_cast<double>(per_run_recovered.size()));
}

double epidemic_threshold(const Graph& g) {
  const auto moments = mean_degree_moments(g);
  if (!(moments.mean_square > moments.mean))
    throw ComputationError("epidemic threshold undefined: <k^2> <= <k>");
  return moments.mean / (moments.mean_square - moments.mean);
}

std::size_t seed_count(double fraction, std::size_t node_count) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw UsageError("seed fraction must lie in (0, 1]");
  // The small offset keeps e.g. 0.29 * 100 from flooring to 28.
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(node_count) + 1e-9));
  return std::clamp<std::size_t>(count, 1, node_count);
}

std::vector<NodeId> select_seed_set(const ScoreVector& ranking, double fraction, const Graph& g) {
  const auto count = seed_count(fraction, g.node_count());
  return {ranking.ranking.begin(), ranking.ranking.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::mt19937_64 run_stream(std::uint64_t master_seed, std::uint64_t run) {
  return std::mt19937_64(splitmix64(splitmix64(master_seed) ^ splitmix64(run + 0x632be59bd9b4e019ULL)));
}

std::size_t simulate_sir_once(const Graph& g, std::span<const NodeId> seeds, double lambda, double gamma,
                              std::mt19937_64& rng, std::size_t max_steps, const SirTransitionObserver& observer) {
  std::vector<SirState> state(g.node_count(), SirState::Susceptible);
  std::vector<NodeId> infected(seeds.begin(), seeds.end());
  std::sort(infected.begin(), infected.end());
  infected.erase(std::unique(infected.begin(), infected.end()), infected.end());
  for (NodeId v : infected) {
    state[v] = SirState::Infected;
    if (observer) observer(v, SirState::Susceptible, SirState::Infected, 0);
  }

  std::size_t recovered = 0;
  std::vector<NodeId> next;
  for (std::size_t step = 1; !infected.empty(); ++step) {
    if (step > max_steps) throw ComputationError("SIR step cap exceeded");
    next.clear();
    if (lambda > 0.0) {
      for (NodeId v : infected) {
        for (NodeId w : g.neighbors(v)) {
          if (state[w] != SirState::Susceptible) continue;
          if (uniform01(rng) < lambda) {
            state[w] = SirState::Infected;
            next.push_back(w);
            if (observer) observer(w, SirState::Susceptible, SirState::Infected, step);
          }
        }
      }
    }
    // Only nodes infectious at the start of the step may recover now.
    std::size_t kept = 0;
    for (NodeId v : infected) {
      if (gamma >= 1.0 || uniform01(rng) < gamma) {
        state[v] = SirState::Recovered;
        ++recovered;
        if (observer) observer(v, SirState::Infected, SirState::Recovered, step);
      } else {
        infected[kept++] = v;
      }
    }
    infected.resize(kept);
    infected.insert(infected.end(), next.begin(), next.end());
  }
  return recovered;
}

SirOutcome run_sir(const Graph& g, std::span<const NodeId> seeds, const SirConfig& cfg) {
  validate(cfg);
  if (seeds.empty()) throw UsageError("SIR needs a non-empty seed set");

  SirOutcome out;
  out.per_run_recovered.assign(cfg.runs, 0);
  std::vector<NodeId> unique_seeds(seeds.begin(), seeds.end());
  std::sort(unique_seeds.begin(), unique_seeds.end());
  unique_seeds.erase(std::unique(unique_seeds.begin(), unique_seeds.end()), unique_seeds.end());
  out.seed_set_size = unique_seeds.size();

  tbb::parallel_for(std::size_t{0}, cfg.runs, [&](std::size_t r) {
    auto rng = run_stream(cfg.master_seed, r);
    out.per_run_recovered[r] = simulate_sir_once(g, unique_seeds, cfg.lambda, cfg.gamma, rng, cfg.max_steps);
  });

  double sum = 0.0;
  for (auto r : out.per_run_recovered) sum += static_cast<double>(r);
  out.mean_recovered = sum / static_cast<double>(cfg.runs);
  if (cfg.runs > 1) {
    double ss = 0.0;
    for (auto r : out.per_run_recovered) {
      const double d = static_cast<double>(r) - out.mean_recovered;
      ss += d * d;
    }
    out.std_recovered = std::sqrt(ss / static_cast<double>(cfg.runs - 1));
  }
  return out;
}

}  // namespace commspread
