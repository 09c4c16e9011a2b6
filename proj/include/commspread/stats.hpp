#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "commspread/centrality.hpp"

namespace commspread {

/// Pair classification behind tau-b. Pairs tied in both lists are counted
/// only in `ties_both`.
struct KendallCounts {
  std::uint64_t concordant = 0;
  std::uint64_t discordant = 0;
  std::uint64_t ties_x_only = 0;
  std::uint64_t ties_y_only = 0;
  std::uint64_t ties_both = 0;
};

/// O(n log n) pair counts (sort on x, merge-sort inversion count on y).
KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y);

/// (nc - nd) / sqrt((nc + nd + tx)(nc + nd + ty)); throws ComputationError
/// when either list is entirely tied.
double tau_b_from_counts(const KendallCounts& counts);

double kendall_tau_b(std::span<const double> x, std::span<const double> y);

/// Pearson product-moment correlation. Throws ComputationError on zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double p_value = 1.0;  // two-sided t-test of slope = 0, n - 2 degrees of freedom
  double r_squared = 0.0;
  double slope_std_error = 0.0;
  std::size_t n = 0;
};

/// Simple least-squares fit y = intercept + slope * x.
RegressionResult ols_regression(std::span<const double> x, std::span<const double> y);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

/// Symmetric measure-by-measure tau-b matrix of one network.
struct CorrelationMatrix {
  std::string network_id;
  std::vector<Measure> measures;
  std::vector<double> values;  // row-major, measures.size()^2

  [[nodiscard]] std::size_t size() const noexcept { return measures.size(); }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[i * measures.size() + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * measures.size() + j]; }
  /// Row-major strict upper triangle.
  [[nodiscard]] std::vector<double> upper_triangle() const;
  /// The same matrix restricted to `subset` (in the order given); every
  /// measure of `subset` must be present.
  [[nodiscard]] CorrelationMatrix restricted_to(std::span<const Measure> subset) const;
};

}  // namespace commspread
