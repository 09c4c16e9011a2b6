#include "commspread/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "commspread/error.hpp"

namespace commspread {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw UsageError("'" + std::string(text) + "' is not a real number");
  return value;
}

std::uint64_t parse_unsigned(std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError("'" + std::string(text) + "' is not a non-negative integer");
  return value;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError("'" + std::string(text) + "' is not a boolean");
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

std::vector<double> parse_real_list(std::string_view text) {
  text = trim(text);
  if (text.empty()) return {};
  if (text.find(':') != std::string_view::npos) {
    auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("range must be start:stop:step");
    const double start = parse_real(parts[0]);
    const double stop = parse_real(parts[1]);
    const double step = parse_real(parts[2]);
    if (!(step > 0.0) || stop < start) throw UsageError("range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      // Snap to 12 decimals so 0.01 * 29 prints as 0.29.
      values.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return values;
  }
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(parse_real(part));
  return values;
}

std::vector<Measure> parse_measure_list(std::string_view text) {
  text = trim(text);
  if (text == "community") return {kCommunityMeasures.begin(), kCommunityMeasures.end()};
  if (text == "all") {
    std::vector<Measure> all{Measure::Degree};
    all.insert(all.end(), kCommunityMeasures.begin(), kCommunityMeasures.end());
    return all;
  }
  std::vector<Measure> out;
  for (auto part : split(text, ',')) {
    auto m = parse_measure(part);
    if (!m) throw UsageError("unknown measure '" + std::string(part) + "'");
    if (std::find(out.begin(), out.end(), *m) != out.end())
      throw UsageError("measure '" + std::string(part) + "' listed twice");
    out.push_back(*m);
  }
  if (out.empty()) throw UsageError("empty measure list");
  return out;
}

CommUndefinedPolicy parse_comm_policy(std::string_view text) {
  text = trim(text);
  if (text == "skip") return CommUndefinedPolicy::Fail;
  if (text == "zero-term") return CommUndefinedPolicy::ZeroTerm;
  throw UsageError("comm-undefined must be 'skip' or 'zero-term'");
}

ExperimentSpec parse_experiment_config(std::istream& in, const std::string& base_dir, const std::string& source_name) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source_name, e.line(), e.message());
  }

  ExperimentSpec spec;
  bool saw_experiment = false;
  for (const auto& [section, body] : tree) {
    if (section == "experiment") {
      saw_experiment = true;
      for (const auto& [key, node] : body) {
        const auto value = node.get_value<std::string>();
        if (key == "output_dir") {
          spec.output_dir = resolve(base_dir, value);
        } else if (key == "measures") {
          spec.measures = parse_measure_list(value);
        } else if (key == "fo_grid") {
          spec.fo_grid = parse_real_list(value);
        } else if (key == "runs") {
          spec.sir.runs = parse_unsigned(value);
        } else if (key == "seed") {
          spec.sir.master_seed = parse_unsigned(value);
        } else if (key == "gamma") {
          spec.sir.gamma = parse_real(value);
        } else if (key == "max_steps") {
          spec.sir.max_steps = parse_unsigned(value);
        } else if (key == "lambda_multipliers") {
          spec.lambda_multipliers = parse_real_list(value);
        } else if (key == "comm_r") {
          spec.measure_config.comm_r = parse_real(value);
        } else if (key == "ks_delta") {
          spec.measure_config.ks_delta = parse_real(value);
        } else if (key == "comm_undefined") {
          spec.measure_config.comm_undefined = parse_comm_policy(value);
        } else if (key == "dismantle_fractions") {
          spec.dismantle_fractions = parse_real_list(value);
        } else if (key == "sir") {
          spec.run_sir = parse_bool(value);
        } else if (key == "dismantle") {
          spec.run_dismantling = parse_bool(value);
        } else {
          throw UsageError(source_name + ": unknown key '" + key + "' in [experiment]");
        }
      }
    } else if (section.starts_with("network.")) {
      NetworkSpec net;
      net.id = section.substr(8);
      for (const auto& [key, node] : body) {
        const auto value = node.get_value<std::string>();
        if (key == "graph") {
          net.graph_path = resolve(base_dir, value);
        } else if (key == "partition") {
          net.partition_path = resolve(base_dir, value);
        } else if (key == "louvain_seed") {
          net.louvain_seed = parse_unsigned(value);
        } else if (key == "lcc_only") {
          net.lcc_only = parse_bool(value);
        } else if (key == "delimiter") {
          if (value.size() != 1) throw UsageError(source_name + ": delimiter must be a single character");
          net.delimiter = value[0];
        } else {
          throw UsageError(source_name + ": unknown key '" + key + "' in [" + section + "]");
        }
      }
      spec.networks.push_back(std::move(net));
    } else {
      throw UsageError(source_name + ": unknown section [" + section + "]");
    }
  }
  if (!saw_experiment) throw UsageError(source_name + ": missing [experiment] section");
  return spec;
}

ExperimentSpec load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config '" + path + "'");
  return parse_experiment_config(in, fs::path(path).parent_path().string(), path);
}

}  // namespace commspread
