#include "commspread/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>

#include "commspread/error.hpp"

namespace commspread {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y, std::size_t min_n, const char* what) {
  if (x.size() != y.size()) throw UsageError(std::string(what) + ": inputs differ in length");
  if (x.size() < min_n) throw ComputationError(std::string(what) + ": needs at least " + std::to_string(min_n) + " observations");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(x.begin(), x.end(), finite) || !std::all_of(y.begin(), y.end(), finite))
    throw ComputationError(std::string(what) + ": non-finite input");
}

std::uint64_t tied_pairs_in_runs(std::span<const double> sorted) {
  std::uint64_t pairs = 0;
  std::uint64_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      pairs += run * (run - 1) / 2;
      run = 1;
    }
  }
  return pairs;
}

// Bottom-up merge sort; returns the number of strict inversions.
std::uint64_t sort_counting_inversions(std::vector<double>& v) {
  std::uint64_t inversions = 0;
  std::vector<double> buffer(v.size());
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const auto mid = std::min(lo + width, v.size());
      const auto hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          inversions += mid - i;
          buffer[k++] = v[j++];
        } else {
          buffer[k++] = v[i++];
        }
      }
      while (i < mid) buffer[k++] = v[i++];
      while (j < hi) buffer[k++] = v[j++];
    }
    v.swap(buffer);
  }
  return inversions;
}

}  // namespace

KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 2, "kendall tau-b");
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  std::uint64_t x_ties = 0;
  std::uint64_t joint_ties = 0;
  std::uint64_t x_run = 1;
  std::uint64_t joint_run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    const bool same_x = i < n && x[order[i]] == x[order[i - 1]];
    const bool same_xy = same_x && y[order[i]] == y[order[i - 1]];
    if (same_x) {
      ++x_run;
    } else {
      x_ties += x_run * (x_run - 1) / 2;
      x_run = 1;
    }
    if (same_xy) {
      ++joint_run;
    } else {
      joint_ties += joint_run * (joint_run - 1) / 2;
      joint_run = 1;
    }
  }

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const auto discordant = sort_counting_inversions(ys);
  const auto y_ties = tied_pairs_in_runs(ys);

  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  KendallCounts c;
  c.discordant = discordant;
  c.ties_both = joint_ties;
  c.ties_x_only = x_ties - joint_ties;
  c.ties_y_only = y_ties - joint_ties;
  c.concordant = total - x_ties - y_ties + joint_ties - discordant;
  return c;
}

double tau_b_from_counts(const KendallCounts& c) {
  const auto untied = c.concordant + c.discordant;
  if (untied + c.ties_y_only == 0 || untied + c.ties_x_only == 0)
    throw ComputationError("tau undefined: an input list is entirely tied");
  const double numerator = static_cast<double>(c.concordant) - static_cast<double>(c.discordant);
  const double denominator = std::sqrt(static_cast<double>(untied + c.ties_x_only) *
                                       static_cast<double>(untied + c.ties_y_only));
  return numerator / denominator;
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  return tau_b_from_counts(kendall_counts(x, y));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 2, "pearson");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ComputationError("pearson undefined: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double student_t_two_sided_p(double t, double dof) {
  if (!(dof > 0.0)) throw ComputationError("t distribution needs positive degrees of freedom");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  // P(|T| >= |t|) = I_{dof / (dof + t^2)}(dof / 2, 1 / 2)
  const double z = dof / (dof + t * t);
  return boost::math::ibeta(dof / 2.0, 0.5, z);
}

RegressionResult ols_regression(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 3, "regression");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ComputationError("regression undefined: zero variance in x");

  RegressionResult r;
  r.n = x.size();
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (r.intercept + r.slope * x[i]);
    sse += e * e;
  }
  r.r_squared = syy == 0.0 ? 0.0 : std::clamp(1.0 - sse / syy, 0.0, 1.0);

  const double dof = n - 2.0;
  r.slope_std_error = std::sqrt(sse / dof / sxx);
  if (r.slope_std_error == 0.0) {
    r.p_value = r.slope == 0.0 ? 1.0 : 0.0;
  } else {
    r.p_value = student_t_two_sided_p(r.slope / r.slope_std_error, dof);
  }
  return r;
}

std::vector<double> CorrelationMatrix::upper_triangle() const {
  std::vector<double> out;
  const auto k = size();
  out.reserve(k * (k - 1) / 2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) out.push_back(at(i, j));
  return out;
}

CorrelationMatrix CorrelationMatrix::restricted_to(std::span<const Measure> subset) const {
  std::vector<std::size_t> index;
  for (auto m : subset) {
    auto it = std::find(measures.begin(), measures.end(), m);
    if (it == measures.end())
      throw UsageError("measure '" + std::string(measure_name(m)) + "' missing from heatmap of " + network_id);
    index.push_back(static_cast<std::size_t>(it - measures.begin()));
  }
  CorrelationMatrix out;
  out.network_id = network_id;
  out.measures.assign(subset.begin(), subset.end());
  out.values.resize(subset.size() * subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j) out.at(i, j) = at(index[i], index[j]);
  return out;
}

}  // namespace commspread
