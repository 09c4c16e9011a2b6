#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commspread/evaluation.hpp"

namespace commspread {

inline constexpr std::string_view kVersion = "0.1.0";

/// Reals in data files: 12 significant digits, '.' decimal separator.
std::string format_real(double value);
std::string csv_escape(std::string_view field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws DataError when absent.
  [[nodiscard]] std::size_t column(std::string_view name) const;
};

/// RFC-4180-style reader (quoted fields, no embedded newlines).
CsvTable read_csv(std::istream& in, const std::string& source_name);

/// node_label, one score column per measure, then rank_<measure> columns (1 = most central).
void write_scores_csv(std::ostream& out, const Graph& g, std::span<const ScoreVector> scores);

/// Ranking per measure recovered from the rank_<measure> columns of a scores file.
std::vector<ScoreVector> read_rankings_csv(std::istream& in, const Graph& g, const std::string& source_name);

struct SirRow {
  std::string measure;
  double fo = 0.0;
  double lambda = 0.0;
  SirOutcome outcome;
};
void write_sir_csv(std::ostream& out, std::span<const SirRow> rows);

void write_heatmap_csv(std::ostream& out, const CorrelationMatrix& heatmap);
void write_cross_network_csv(std::ostream& out, const NetworkCorrelation& matrix);
void write_regression_csv(std::ostream& out, const RegressionResult& r);
void write_delta_r_csv(std::ostream& out, std::span<const DeltaRCurve> curves);
void write_dismantling_csv(std::ostream& out, std::span<const DismantlingCurve> curves);
void write_network_summary_csv(std::ostream& out, std::span<const NetworkReport> networks);

/// Writes every data file plus manifest.json into spec.output_dir and returns
/// the data file names (relative to that directory).
std::vector<std::string> write_experiment_outputs(const ExperimentSpec& spec, const ExperimentReport& report);

}  // namespace commspread
