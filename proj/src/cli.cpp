#include "commspread/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>
#include <tbb/global_control.h>
#include <tbb/task_arena.h>

#include "commspread/config.hpp"
#include "commspread/error.hpp"
#include "commspread/evaluation.hpp"
#include "commspread/report_io.hpp"

namespace commspread {

namespace {

using Logger = std::shared_ptr<spdlog::logger>;

struct GlobalArgs {
  std::uint64_t seed = 42;
  int threads = 0;
  std::string log_level;
};

struct GraphArgs {
  std::string graph;
  bool lcc_only = false;
  std::string delimiter;
};

struct PartitionArgs {
  std::string partition;
  bool louvain = false;
};

struct MeasureArgs {
  std::string measures = "all";
  double comm_r = 1.0;
  double ks_delta = 0.5;
  std::string comm_undefined = "skip";
};

void add_graph_options(CLI::App* sub, GraphArgs& args) {
  sub->add_option("--graph", args.graph, "Edge list file")->required();
  sub->add_flag("--lcc-only", args.lcc_only, "Keep only the largest connected component");
  sub->add_option("--delimiter", args.delimiter, "Field separator (default: any whitespace)");
}

void add_partition_options(CLI::App* sub, PartitionArgs& args) {
  auto* file = sub->add_option("--partition", args.partition, "Partition file: 'node_label community_label' lines");
  auto* louvain = sub->add_flag("--louvain", args.louvain, "Detect communities with Louvain (seeded by --seed)");
  file->excludes(louvain);
}

void add_measure_options(CLI::App* sub, MeasureArgs& args) {
  sub->add_option("--measures", args.measures, "all | community | comma list of measure names")->capture_default_str();
  sub->add_option("--comm-r", args.comm_r, "Comm centrality standardisation constant R")->capture_default_str();
  sub->add_option("--ks-delta", args.ks_delta, "K-shell with community weight delta")->capture_default_str();
  sub->add_option("--comm-undefined", args.comm_undefined, "skip | zero-term")->capture_default_str()
      ->check(CLI::IsMember({"skip", "zero-term"}));
}

LoadedGraph load_graph(const GraphArgs& args, const Logger& log) {
  LoaderOptions options;
  options.lcc_only = args.lcc_only;
  if (!args.delimiter.empty()) {
    if (args.delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
    options.delimiter = args.delimiter[0];
  }
  auto loaded = load_edge_list_file(args.graph, options);
  const auto& r = loaded.report;
  if (r.duplicate_edges > 0 || r.self_loops > 0)
    log->info("{}: dropped {} duplicate edges and {} self-loops", args.graph, r.duplicate_edges, r.self_loops);
  if (r.nodes_outside_lcc > 0) log->info("{}: dropped {} nodes outside the largest component", args.graph, r.nodes_outside_lcc);
  return loaded;
}

std::optional<Partition> load_partition_args(const PartitionArgs& args, const GraphArgs& graph_args, const Graph& g,
                                             std::uint64_t seed, const Logger& log, bool required) {
  if (!args.partition.empty()) {
    PartitionLoadOptions options;
    options.ignore_unknown_nodes = graph_args.lcc_only;
    return load_partition_file(args.partition, g, options);
  }
  if (args.louvain) {
    auto result = louvain_partition(g, seed);
    log->info("louvain: {} communities, Q = {:.6f}", result.partition.community_count(), result.modularity);
    return std::move(result.partition);
  }
  if (required) throw UsageError("one of --partition or --louvain is required");
  return std::nullopt;
}

MeasureConfig measure_config(const MeasureArgs& args) {
  MeasureConfig cfg;
  cfg.comm_r = args.comm_r;
  cfg.ks_delta = args.ks_delta;
  cfg.comm_undefined = parse_comm_policy(args.comm_undefined);
  validate(cfg);
  return cfg;
}

std::vector<ScoreVector> scores_for(const std::string& id, const Graph& g, const Partition& p, const MeasureArgs& args,
                                    const Logger& log) {
  std::vector<Skip> skips;
  auto scores = compute_measures(id, g, p, parse_measure_list(args.measures), measure_config(args), skips);
  for (const auto& s : skips) log->warn("skipping {}: {}", s.item, s.reason);
  if (scores.empty()) throw ComputationError("no requested measure is defined on this network");
  return scores;
}

// Writes to `path`, or to `out` when path is empty.
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& writer) {
  if (path.empty()) {
    writer(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot write '" + path + "'");
  writer(file);
  if (!file) throw DataError("failed writing '" + path + "'");
}

Logger make_logger(std::ostream& err, const std::string& level_name) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  auto logger = std::make_shared<spdlog::logger>("commspread", sink);
  logger->set_pattern("[%l] %v");
  const auto level = spdlog::level::from_str(level_name);
  if (level == spdlog::level::off && level_name != "off")
    throw UsageError("unknown log level '" + level_name + "'");
  logger->set_level(level);
  return logger;
}

}  // namespace

int run_cli(std::span<const std::string> args, const std::map<std::string, std::string>& env, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Community-aware centrality, SIR spreading and dismantling analyses on undirected networks",
               "commspread"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  GlobalArgs global;
  app.add_option("--seed", global.seed, "Master random seed (Louvain and SIR)");
  app.add_option("--threads", global.threads, "Worker threads (0 = all available, 1 = sequential)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--log-level", global.log_level, "trace|debug|info|warn|error|critical|off");

  GraphArgs graph_args;
  PartitionArgs partition_args;
  MeasureArgs measure_args;
  std::string out_path;

  auto* load_check = app.add_subcommand("load-check", "Load a graph and report its topology as JSON");
  add_graph_options(load_check, graph_args);
  add_partition_options(load_check, partition_args);
  load_check->add_option("--out", out_path, "Output file (default stdout)");

  auto* centrality = app.add_subcommand("centrality", "Per-node scores and ranks for each measure (CSV)");
  add_graph_options(centrality, graph_args);
  add_partition_options(centrality, partition_args);
  add_measure_options(centrality, measure_args);
  centrality->add_option("--out", out_path, "Output CSV (default stdout)");

  std::string seeds_from;
  std::string fo_list;
  std::size_t runs = 100;
  std::optional<double> lambda;
  double lambda_multiplier = 1.0;
  double gamma = 1.0;
  std::size_t max_steps = 1'000'000;
  std::string sir_measures;
  auto* sir = app.add_subcommand("sir", "Outbreak sizes for top-ranked seed sets (CSV)");
  add_graph_options(sir, graph_args);
  sir->add_option("--seeds-from", seeds_from, "Scores CSV written by 'centrality'")->required();
  sir->add_option("--fo", fo_list, "Seed fractions: comma list or start:stop:step")->required();
  sir->add_option("--runs", runs, "Independent runs per seed set")->capture_default_str()->check(CLI::PositiveNumber);
  auto* lambda_opt = sir->add_option("--lambda", lambda, "Infection probability (default: epidemic threshold)");
  sir->add_option("--lambda-multiplier", lambda_multiplier, "Multiplier applied to the epidemic threshold")->capture_default_str()
      ->excludes(lambda_opt);
  sir->add_option("--gamma", gamma, "Recovery probability")->capture_default_str();
  sir->add_option("--max-steps", max_steps, "Step cap per run")->capture_default_str();
  sir->add_option("--measures", sir_measures, "Restrict to these ranking columns");
  sir->add_option("--out", out_path, "Output CSV (default stdout)");

  std::string config_path;
  std::string out_dir;
  std::optional<std::size_t> runs_override;
  auto* evaluate = app.add_subcommand("evaluate", "Run a full experiment described by a config file");
  evaluate->add_option("--config", config_path, "Experiment INI file")->required();
  evaluate->add_option("--out-dir", out_dir, "Override output_dir");
  evaluate->add_option("--runs", runs_override, "Override runs");

  std::string fractions = "0:0.5:0.01";
  auto* dismantle = app.add_subcommand("dismantle", "Largest component size under static top-rank removal (CSV)");
  add_graph_options(dismantle, graph_args);
  add_partition_options(dismantle, partition_args);
  add_measure_options(dismantle, measure_args);
  dismantle->add_option("--fractions", fractions, "Removal fractions: comma list or start:stop:step")->capture_default_str();
  dismantle->add_option("--out", out_path, "Output CSV (default stdout)");

  std::string regress_input;
  std::string x_column = "mixing";
  std::string y_column = "mean_tau";
  auto* regress = app.add_subcommand("regress", "OLS regression between two columns of a CSV");
  regress->add_option("--input", regress_input, "CSV file (e.g. network_summary.csv)")->required();
  regress->add_option("--x", x_column, "Independent variable column")->capture_default_str();
  regress->add_option("--y", y_column, "Dependent variable column")->capture_default_str();
  regress->add_option("--out", out_path, "Output CSV (default stdout)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> argv_storage{"commspread"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitUsage;
  }

  Logger log;
  try {
    std::string level = global.log_level;
    if (level.empty()) {
      auto it = env.find("COMMSPREAD_LOG");
      level = it != env.end() && !it->second.empty() ? it->second : "warn";
    }
    log = make_logger(err, level);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto body = [&]() {
    if (load_check->parsed()) {
      auto loaded = load_graph(graph_args, log);
      const auto& g = loaded.graph;
      auto partition = load_partition_args(partition_args, graph_args, g, global.seed, log, false);
      const auto moments = mean_degree_moments(g);
      nlohmann::ordered_json j;
      j["graph"] = graph_args.graph;
      j["nodes"] = g.node_count();
      j["edges"] = g.edge_count();
      j["mean_degree"] = moments.mean;
      j["mean_degree_sq"] = moments.mean_square;
      try {
        j["epidemic_threshold"] = epidemic_threshold(g);
      } catch (const ComputationError& e) {
        log->warn("{}", e.what());
        j["epidemic_threshold"] = nullptr;
      }
      j["duplicate_edges_dropped"] = loaded.report.duplicate_edges;
      j["self_loops_dropped"] = loaded.report.self_loops;
      j["nodes_outside_lcc"] = loaded.report.nodes_outside_lcc;
      if (partition) {
        j["communities"] = partition->community_count();
        j["modularity"] = modularity(g, *partition);
        const double mu = mixing_parameter(g, *partition);
        j["mixing"] = mu;
        j["category"] = std::string(to_string(strength_category(mu)));
      }
      emit(out_path, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
    } else if (centrality->parsed()) {
      auto loaded = load_graph(graph_args, log);
      auto partition = load_partition_args(partition_args, graph_args, loaded.graph, global.seed, log, true);
      auto scores = scores_for(graph_args.graph, loaded.graph, *partition, measure_args, log);
      emit(out_path, out, [&](std::ostream& o) { write_scores_csv(o, loaded.graph, scores); });
    } else if (sir->parsed()) {
      auto loaded = load_graph(graph_args, log);
      const auto& g = loaded.graph;
      std::ifstream ranking_file(seeds_from);
      if (!ranking_file) throw DataError("cannot open '" + seeds_from + "'");
      auto rankings = read_rankings_csv(ranking_file, g, seeds_from);
      if (!sir_measures.empty()) {
        const auto keep = parse_measure_list(sir_measures);
        std::erase_if(rankings, [&](const ScoreVector& s) {
          return std::find(keep.begin(), keep.end(), s.measure) == keep.end();
        });
        if (rankings.empty()) throw UsageError("--measures selects no ranking column of " + seeds_from);
      }
      SirConfig cfg;
      cfg.lambda = lambda ? *lambda : epidemic_threshold(g) * lambda_multiplier;
      cfg.gamma = gamma;
      cfg.runs = runs;
      cfg.master_seed = global.seed;
      cfg.max_steps = max_steps;
      validate(cfg);
      const auto grid = parse_real_list(fo_list);
      if (grid.empty()) throw UsageError("--fo is empty");
      std::vector<SirRow> rows;
      for (const auto& r : rankings) {
        for (double fo : grid) {
          const auto seeds = select_seed_set(r, fo, g);
          rows.push_back({std::string(measure_name(r.measure)), fo, cfg.lambda, run_sir(g, seeds, cfg)});
        }
      }
      emit(out_path, out, [&](std::ostream& o) { write_sir_csv(o, rows); });
    } else if (evaluate->parsed()) {
      auto spec = load_experiment_config(config_path);
      if (!out_dir.empty()) spec.output_dir = out_dir;
      if (app.count("--seed") > 0) spec.sir.master_seed = global.seed;
      if (runs_override) spec.sir.runs = *runs_override;
      log->info("evaluating {} networks", spec.networks.size());
      const auto report = run_experiment(spec);
      for (const auto& s : report.skips) log->warn("skipped {} / {}: {}", s.network_id, s.item, s.reason);
      for (const auto& w : report.warnings) log->warn("{}", w);
      const auto files = write_experiment_outputs(spec, report);
      log->info("wrote {} data files and manifest.json to {}", files.size(), spec.output_dir);
    } else if (dismantle->parsed()) {
      auto loaded = load_graph(graph_args, log);
      const auto& g = loaded.graph;
      auto partition = load_partition_args(partition_args, graph_args, g, global.seed, log, true);
      auto scores = scores_for(graph_args.graph, g, *partition, measure_args, log);
      const auto grid = parse_real_list(fractions);
      std::vector<DismantlingCurve> curves;
      for (const auto& s : scores) curves.push_back(lcc_dismantling(graph_args.graph, g, s, grid));
      emit(out_path, out, [&](std::ostream& o) { write_dismantling_csv(o, curves); });
    } else if (regress->parsed()) {
      std::ifstream in(regress_input);
      if (!in) throw DataError("cannot open '" + regress_input + "'");
      const auto table = read_csv(in, regress_input);
      const auto xc = table.column(x_column);
      const auto yc = table.column(y_column);
      std::vector<double> xs;
      std::vector<double> ys;
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row[xc].empty() || row[yc].empty()) continue;
        try {
          xs.push_back(std::stod(row[xc]));
          ys.push_back(std::stod(row[yc]));
        } catch (const std::exception&) {
          throw ParseError(regress_input, r + 2, "non-numeric value");
        }
      }
      const auto result = ols_regression(xs, ys);
      emit(out_path, out, [&](std::ostream& o) { write_regression_csv(o, result); });
    }
  };

  try {
    // An explicit thread count is honoured even above the hardware concurrency.
    std::optional<tbb::global_control> limit;
    if (global.threads > 0)
      limit.emplace(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(global.threads));
    tbb::task_arena arena(global.threads > 0 ? global.threads : tbb::task_arena::automatic);
    arena.execute(body);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const ComputationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace commspread
