#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "divlab/optimize.hpp"
#include "oracles.hpp"

using namespace divlab::opt;

TEST(OptimizeTest, GoldenSectionFindsQuadraticMinimum) {
  const Minimum1D m = golden_section_min([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, -2.0,
                                         2.0);
  EXPECT_NEAR(m.x, 0.3, 1e-7);
  EXPECT_NEAR(m.f, 1.0, 1e-12);
  EXPECT_GT(m.evaluations, 0);
}

TEST(OptimizeTest, GoldenSectionHandlesBoundaryMinimum) {
  const Minimum1D m = golden_section_min([](double x) { return x; }, 1.0, 3.0);
  EXPECT_NEAR(m.x, 1.0, 1e-8);
}

TEST(OptimizeTest, GridGoldenNeverWorseThanGridNodes) {
  auto f = [](double x) { return std::sin(5.0 * x) + 0.1 * x * x; };
  const std::vector<double> grid = oracle::linspace(-3.0, 3.0, 31);
  const Minimum1D m = grid_golden_min(f, grid);
  for (double x : grid) EXPECT_LE(m.f, f(x));
  double dense = 1e300;
  for (double x : oracle::linspace(-3.0, 3.0, 600001)) dense = std::min(dense, f(x));
  EXPECT_NEAR(m.f, dense, 1e-9);
}

TEST(OptimizeTest, GridGoldenUsesPrecomputedValues) {
  auto f = [](double x) { return (x - 0.42) * (x - 0.42); };
  const std::vector<double> grid = oracle::linspace(0.0, 1.0, 11);
  std::vector<double> values;
  for (double x : grid) values.push_back(f(x));
  const Minimum1D with = grid_golden_min(f, grid, 1e-10, values);
  const Minimum1D without = grid_golden_min(f, grid, 1e-10);
  EXPECT_NEAR(with.x, 0.42, 1e-6);
  EXPECT_NEAR(with.f, without.f, 1e-15);
  EXPECT_LT(with.evaluations, without.evaluations);
}

TEST(OptimizeTest, NelderMeadMinimizesRosenbrock) {
  auto f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const std::vector<double> step{0.5, 0.5};
  NelderMeadOptions opts;
  opts.max_iter = 5000;
  opts.f_tol = 1e-14;
  opts.x_tol = 1e-10;
  const MinimumND m = nelder_mead_min(f, {-1.2, 1.0}, step, opts);
  EXPECT_NEAR(m.x[0], 1.0, 1e-4);
  EXPECT_NEAR(m.x[1], 1.0, 1e-4);
  EXPECT_LT(m.f, 1e-8);
}

TEST(OptimizeTest, NelderMeadNeverIncreasesTheStartValue) {
  auto f = [](std::span<const double> x) {
    return std::cos(3 * x[0]) * std::sin(2 * x[1]) + 0.05 * (x[0] * x[0] + x[2] * x[2]);
  };
  const std::vector<double> x0{0.2, -0.4, 1.0};
  const std::vector<double> step{0.1, 0.1, 0.1};
  const MinimumND m = nelder_mead_min(f, x0, step);
  EXPECT_LE(m.f, f(x0));
  EXPECT_EQ(m.f, f(m.x));
}
