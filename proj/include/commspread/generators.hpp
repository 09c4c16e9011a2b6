#pragma once

#include <cstdint>
#include <span>

#include "commspread/graph.hpp"
#include "commspread/partition.hpp"

namespace commspread {

/// A synthetic graph together with the partition it was planted with.
struct PlantedGraph {
  Graph graph;
  Partition partition;
};

/// G(n, p) random graph.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Stochastic block model: each pair joins with p_in inside a block and
/// p_out across blocks.
PlantedGraph planted_partition(std::span<const std::size_t> community_sizes, double p_in, double p_out,
                               std::uint64_t seed);

/// Degree-heterogeneous benchmark in the spirit of LFR: power-law expected
/// degrees and power-law community sizes, with a target fraction `mixing` of
/// each node's links leaving its community. Only the largest connected
/// component is kept.
struct BenchmarkSpec {
  std::size_t nodes = 500;
  double mean_degree = 10.0;
  double max_degree = 50.0;
  double degree_exponent = 2.5;
  std::size_t min_community = 20;
  std::size_t max_community = 100;
  double community_exponent = 1.5;
  double mixing = 0.1;
  std::uint64_t seed = 1;
};

PlantedGraph lfr_like_benchmark(const BenchmarkSpec& spec);

}  // namespace commspread
