#include "commspread/report_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "commspread/error.hpp"

namespace commspread {

namespace fs = std::filesystem;

std::string format_real(double value) {
  if (value == 0.0) return "0";  // folds -0
  return fmt::format("{:.12g}", value);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::size_t CsvTable::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError("CSV column '" + std::string(name) + "' not found");
  return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line, const std::string& source, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ParseError(source, line_no, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

}  // namespace

CsvTable read_csv(std::istream& in, const std::string& source_name) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line, source_name, line_no);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size())
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(table.header.size()) + " fields, got " + std::to_string(fields.size()));
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw DataError(source_name + ": missing CSV header");
  return table;
}

void write_scores_csv(std::ostream& out, const Graph& g, std::span<const ScoreVector> scores) {
  out << "node_label";
  for (const auto& s : scores) out << ',' << measure_name(s.measure);
  for (const auto& s : scores) out << ",rank_" << measure_name(s.measure);
  out << '\n';

  std::vector<std::vector<std::size_t>> rank(scores.size(), std::vector<std::size_t>(g.node_count()));
  for (std::size_t m = 0; m < scores.size(); ++m)
    for (std::size_t pos = 0; pos < scores[m].ranking.size(); ++pos) rank[m][scores[m].ranking[pos]] = pos + 1;

  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << csv_escape(g.label(v));
    for (const auto& s : scores) out << ',' << format_real(s.scores[v]);
    for (std::size_t m = 0; m < scores.size(); ++m) out << ',' << rank[m][v];
    out << '\n';
  }
}

std::vector<ScoreVector> read_rankings_csv(std::istream& in, const Graph& g, const std::string& source_name) {
  const auto table = read_csv(in, source_name);
  const auto label_col = table.column("node_label");
  if (table.rows.size() != g.node_count())
    throw DataError(source_name + ": ranking covers " + std::to_string(table.rows.size()) + " nodes, graph has " +
                    std::to_string(g.node_count()));

  std::vector<NodeId> node_of_row;
  for (const auto& row : table.rows) {
    auto v = g.find(row[label_col]);
    if (!v) throw DataError(source_name + ": node label '" + row[label_col] + "' is not in the graph");
    node_of_row.push_back(*v);
  }

  std::vector<ScoreVector> out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const auto& name = table.header[c];
    if (!name.starts_with("rank_")) continue;
    auto measure = parse_measure(std::string_view(name).substr(5));
    if (!measure) throw DataError(source_name + ": unknown measure column '" + name + "'");

    ScoreVector sv;
    sv.measure = *measure;
    sv.ranking.assign(g.node_count(), 0);
    std::vector<bool> filled(g.node_count(), false);
    const auto score_col = std::find(table.header.begin(), table.header.end(), name.substr(5));
    sv.scores.assign(g.node_count(), 0.0);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      std::size_t rank = 0;
      try {
        rank = std::stoul(table.rows[r][c]);
      } catch (const std::exception&) {
        throw ParseError(source_name, r + 2, "rank '" + table.rows[r][c] + "' is not an integer");
      }
      if (rank < 1 || rank > g.node_count() || filled[rank - 1])
        throw ParseError(source_name, r + 2, "rank column '" + name + "' is not a permutation");
      filled[rank - 1] = true;
      sv.ranking[rank - 1] = node_of_row[r];
      if (score_col != table.header.end())
        sv.scores[node_of_row[r]] = std::stod(table.rows[r][static_cast<std::size_t>(score_col - table.header.begin())]);
    }
    out.push_back(std::move(sv));
  }
  if (out.empty()) throw DataError(source_name + ": no rank_<measure> columns");
  return out;
}

void write_sir_csv(std::ostream& out, std::span<const SirRow> rows) {
  out << "measure,fo,lambda,seeds,runs,mean_recovered,std_recovered,standard_error\n";
  for (const auto& r : rows) {
    out << r.measure << ',' << format_real(r.fo) << ',' << format_real(r.lambda) << ',' << r.outcome.seed_set_size
        << ',' << r.outcome.per_run_recovered.size() << ',' << format_real(r.outcome.mean_recovered) << ','
        << format_real(r.outcome.std_recovered) << ',' << format_real(r.outcome.standard_error()) << '\n';
  }
}

void write_heatmap_csv(std::ostream& out, const CorrelationMatrix& heatmap) {
  out << "measure";
  for (auto m : heatmap.measures) out << ',' << measure_name(m);
  out << '\n';
  for (std::size_t i = 0; i < heatmap.size(); ++i) {
    out << measure_name(heatmap.measures[i]);
    for (std::size_t j = 0; j < heatmap.size(); ++j) out << ',' << format_real(heatmap.at(i, j));
    out << '\n';
  }
}

void write_cross_network_csv(std::ostream& out, const NetworkCorrelation& matrix) {
  out << "network";
  for (const auto& id : matrix.network_ids) out << ',' << csv_escape(id);
  out << '\n';
  for (std::size_t i = 0; i < matrix.network_ids.size(); ++i) {
    out << csv_escape(matrix.network_ids[i]);
    for (std::size_t j = 0; j < matrix.network_ids.size(); ++j) out << ',' << format_real(matrix.at(i, j));
    out << '\n';
  }
}

void write_regression_csv(std::ostream& out, const RegressionResult& r) {
  out << "slope,intercept,p_value,r_squared,slope_std_error,n\n";
  out << format_real(r.slope) << ',' << format_real(r.intercept) << ',' << format_real(r.p_value) << ','
      << format_real(r.r_squared) << ',' << format_real(r.slope_std_error) << ',' << r.n << '\n';
}

void write_delta_r_csv(std::ostream& out, std::span<const DeltaRCurve> curves) {
  out << "measure,lambda_multiplier,lambda,fo,seeds,delta_r,mean_r_measure,mean_r_baseline,std_r_measure\n";
  for (const auto& c : curves) {
    for (const auto& pt : c.points) {
      out << measure_name(c.measure) << ',' << format_real(c.lambda_multiplier) << ',' << format_real(c.lambda) << ','
          << format_real(pt.fo) << ',' << pt.seed_count << ',' << optional_real(pt.delta_r) << ','
          << format_real(pt.mean_r_measure) << ',' << format_real(pt.mean_r_baseline) << ','
          << format_real(pt.std_r_measure) << '\n';
    }
  }
}

void write_dismantling_csv(std::ostream& out, std::span<const DismantlingCurve> curves) {
  out << "measure,fraction,removed,lcc\n";
  for (const auto& c : curves)
    for (const auto& pt : c.points)
      out << measure_name(c.measure) << ',' << format_real(pt.fraction) << ',' << pt.removed << ',' << pt.lcc << '\n';
}

void write_network_summary_csv(std::ostream& out, std::span<const NetworkReport> networks) {
  out << "network,nodes,edges,mean_degree,mean_degree_sq,epidemic_threshold,communities,modularity,mixing,category,"
         "mean_tau,partition\n";
  for (const auto& n : networks) {
    out << csv_escape(n.id) << ',' << n.node_count << ',' << n.edge_count << ',' << format_real(n.moments.mean) << ','
        << format_real(n.moments.mean_square) << ',' << optional_real(n.epidemic_threshold) << ','
        << n.community_count << ',' << format_real(n.modularity) << ',' << format_real(n.mixing) << ','
        << to_string(n.category) << ',' << optional_real(n.mean_tau) << ',' << csv_escape(n.partition_source) << '\n';
  }
}

std::vector<std::string> write_experiment_outputs(const ExperimentSpec& spec, const ExperimentReport& report) {
  const fs::path dir(spec.output_dir);
  fs::create_directories(dir);
  std::vector<std::string> files;
  auto emit = [&](const std::string& name, auto&& writer) {
    auto out = open_output(dir / name);
    writer(out);
    if (!out) throw DataError("failed writing '" + (dir / name).string() + "'");
    files.push_back(name);
  };

  emit("network_summary.csv", [&](std::ostream& o) { write_network_summary_csv(o, report.networks); });
  for (const auto& n : report.networks) {
    emit("heatmap_" + n.id + ".csv", [&](std::ostream& o) { write_heatmap_csv(o, n.heatmap); });
    if (!n.delta_r.empty()) emit("deltaR_" + n.id + ".csv", [&](std::ostream& o) { write_delta_r_csv(o, n.delta_r); });
    if (!n.dismantling.empty())
      emit("lcc_" + n.id + ".csv", [&](std::ostream& o) { write_dismantling_csv(o, n.dismantling); });
  }
  if (report.cross_network)
    emit("cross_network_pearson.csv", [&](std::ostream& o) { write_cross_network_csv(o, *report.cross_network); });
  if (report.regression)
    emit("mu_regression.csv", [&](std::ostream& o) { write_regression_csv(o, *report.regression); });

  nlohmann::ordered_json manifest;
  manifest["tool"] = "commspread";
  manifest["version"] = std::string(kVersion);
  manifest["master_seed"] = spec.sir.master_seed;

  nlohmann::ordered_json config;
  std::vector<std::string> measures;
  for (auto m : spec.measures) measures.emplace_back(measure_name(m));
  config["measures"] = measures;
  config["fo_grid"] = spec.fo_grid;
  config["runs"] = spec.sir.runs;
  config["gamma"] = spec.sir.gamma;
  config["max_steps"] = spec.sir.max_steps;
  config["lambda_multipliers"] = spec.lambda_multipliers;
  config["comm_r"] = spec.measure_config.comm_r;
  config["ks_delta"] = spec.measure_config.ks_delta;
  config["comm_undefined"] =
      spec.measure_config.comm_undefined == CommUndefinedPolicy::ZeroTerm ? "zero-term" : "skip";
  config["dismantle_fractions"] = spec.dismantle_fractions;
  config["sir"] = spec.run_sir;
  config["dismantle"] = spec.run_dismantling;
  manifest["config"] = config;

  nlohmann::ordered_json networks = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.networks.size(); ++i) {
    const auto& n = report.networks[i];
    nlohmann::ordered_json entry;
    entry["id"] = n.id;
    entry["graph"] = spec.networks[i].graph_path;
    entry["partition"] = n.partition_source;
    entry["lcc_only"] = spec.networks[i].lcc_only;
    entry["nodes"] = n.node_count;
    entry["edges"] = n.edge_count;
    entry["duplicate_edges_dropped"] = n.load_report.duplicate_edges;
    entry["self_loops_dropped"] = n.load_report.self_loops;
    entry["nodes_outside_lcc"] = n.load_report.nodes_outside_lcc;
    entry["category"] = std::string(to_string(n.category));
    entry["degree_self_check"] = n.degree_self_check;
    networks.push_back(entry);
  }
  manifest["networks"] = networks;

  nlohmann::ordered_json skips = nlohmann::ordered_json::array();
  for (const auto& s : report.skips) skips.push_back({{"network", s.network_id}, {"item", s.item}, {"reason", s.reason}});
  manifest["skips"] = skips;
  manifest["warnings"] = report.warnings;
  manifest["outputs"] = files;
  nlohmann::ordered_json timings;
  for (const auto& [k, v] : report.timings_ms) timings[k] = v;
  manifest["timings_ms"] = timings;

  auto out = open_output(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  return files;
}

}  // namespace commspread
