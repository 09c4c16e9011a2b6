#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "commspread/error.hpp"
#include "commspread/stats.hpp"
#include "test_support.hpp"

namespace commspread {
namespace {

std::vector<double> tied_vector(std::size_t n, int levels, std::mt19937_64& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng() % static_cast<std::uint64_t>(levels));
  return v;
}

TEST(Kendall, SmallKnownValues) {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{1, 2, 3, 4};
  const std::vector<double> r{4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(kendall_tau_b(x, y), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau_b(x, r), -1.0);
  // Ties: x = (1,1,2,3), y = (1,2,2,3): nc = 4, nd = 0, tx = 1, ty = 1 -> 4/5.
  const std::vector<double> a{1, 1, 2, 3};
  const std::vector<double> b{1, 2, 2, 3};
  EXPECT_NEAR(kendall_tau_b(a, b), 0.8, 1e-15);
}

TEST(Kendall, CountsMatchEnumeration) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 80;
    const auto x = tied_vector(n, 1 + static_cast<int>(rng() % 6), rng);
    const auto y = tied_vector(n, 1 + static_cast<int>(rng() % 6), rng);
    const auto fast = kendall_counts(x, y);
    const auto ref = testing::pair_counts(x, y);
    ASSERT_EQ(static_cast<std::int64_t>(fast.concordant), ref.concordant);
    ASSERT_EQ(static_cast<std::int64_t>(fast.discordant), ref.discordant);
    ASSERT_EQ(static_cast<std::int64_t>(fast.ties_x_only + fast.ties_both), ref.tied_x);
    ASSERT_EQ(static_cast<std::int64_t>(fast.ties_y_only + fast.ties_both), ref.tied_y);
  }
}

TEST(Kendall, AllTiedIsUndefined) {
  const std::vector<double> x{2, 2, 2};
  const std::vector<double> y{1, 2, 3};
  EXPECT_THROW(kendall_tau_b(x, y), ComputationError);
}

TEST(Kendall, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(5);
  const auto x = tied_vector(60, 10, rng);
  const auto y = tied_vector(60, 10, rng);
  std::vector<double> fx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) fx[i] = std::exp(x[i]) + 3.0;
  EXPECT_EQ(kendall_tau_b(x, y), kendall_tau_b(fx, y));
  EXPECT_EQ(kendall_tau_b(x, y), kendall_tau_b(y, x));
}

TEST(Pearson, KnownAndInvariant) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> y{2, 4, 5, 4, 5};
  EXPECT_NEAR(pearson(x, y), 0.7745966692414834, 1e-12);
  std::vector<double> ay(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) ay[i] = 3.0 * y[i] - 7.0;
  EXPECT_NEAR(pearson(x, ay), pearson(x, y), 1e-12);
  const std::vector<double> flat{1, 1, 1, 1, 1};
  EXPECT_THROW(pearson(x, flat), ComputationError);
  const std::vector<double> shorter{1, 2};
  EXPECT_THROW(pearson(x, shorter), UsageError);
}

TEST(Regression, MatchesLongDoubleReference) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 0; i < 25; ++i) {
    x.push_back(i / 25.0);
    y.push_back(0.5 * x.back() + 0.2 + noise(rng));
  }
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const auto r = ols_regression(x, y);
  EXPECT_NEAR(r.slope, static_cast<double>(sxy / sxx), 1e-12);
  EXPECT_NEAR(r.intercept, static_cast<double>(my - sxy / sxx * mx), 1e-12);
  EXPECT_EQ(r.n, 25u);
}

TEST(Regression, MatchesFrozenReference) {
  // Reference values from an independent statistics package.
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> y{2.1, 2.9, 3.2, 4.8, 5.1, 5.0, 7.2, 7.9, 8.1, 10.3};
  const auto r = ols_regression(x, y);
  EXPECT_NEAR(r.slope, 0.8533333333333335, 1e-12);
  EXPECT_NEAR(r.intercept, 0.9666666666666668, 1e-12);
  EXPECT_NEAR(r.p_value, 8.599579285712727e-07, 1e-15);
  EXPECT_NEAR(r.r_squared, 0.9580675342349239, 1e-12);
  EXPECT_NEAR(r.slope_std_error, 0.06311765508824284, 1e-12);
  const std::vector<double> xs{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const std::vector<double> ys{0.3, 0.1, 0.35, 0.2, 0.4, 0.3};
  EXPECT_NEAR(ols_regression(xs, ys).p_value, 0.47053980276935137, 1e-10);
}

TEST(Regression, AffineInvariance) {
  const std::vector<double> x{0.1, 0.2, 0.35, 0.4, 0.5, 0.7};
  const std::vector<double> y{0.3, 0.25, 0.5, 0.45, 0.6, 0.65};
  const auto base = ols_regression(x, y);
  std::vector<double> sy(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) sy[i] = 2.0 * y[i] + 1.0;
  const auto scaled = ols_regression(x, sy);
  EXPECT_NEAR(scaled.slope, 2.0 * base.slope, 1e-12);
  EXPECT_NEAR(scaled.p_value, base.p_value, 1e-10);
  EXPECT_NEAR(scaled.r_squared, base.r_squared, 1e-12);
}

TEST(Regression, StudentTKnownValue) {
  // t = 2.228 with 10 dof is the two-sided 5% critical value.
  EXPECT_NEAR(student_t_two_sided_p(2.228138851986, 10), 0.05, 1e-9);
  EXPECT_NEAR(student_t_two_sided_p(0.0, 5), 1.0, 1e-12);
}

TEST(Regression, Preconditions) {
  const std::vector<double> two{1, 2};
  EXPECT_THROW(ols_regression(two, two), ComputationError);
  const std::vector<double> flat{1, 1, 1};
  const std::vector<double> y{1, 2, 3};
  EXPECT_THROW(ols_regression(flat, y), ComputationError);
}

TEST(CorrelationMatrix, UpperTriangleAndRestriction) {
  CorrelationMatrix m;
  m.measures = {Measure::Degree, Measure::CommunityHubBridge, Measure::ParticipationCoefficient};
  m.values = {1, 0.1, 0.2, 0.1, 1, 0.3, 0.2, 0.3, 1};
  EXPECT_EQ(m.upper_triangle(), (std::vector<double>{0.1, 0.2, 0.3}));
  const std::vector<Measure> subset{Measure::ParticipationCoefficient, Measure::Degree};
  const auto r = m.restricted_to(subset);
  EXPECT_EQ(r.at(0, 1), 0.2);
}

}  // namespace
}  // namespace commspread
