#ifndef DIVLAB_OPTIMIZE_HPP
#define DIVLAB_OPTIMIZE_HPP

#include <functional>
#include <span>
#include <vector>

// Derivative-free minimizers for small, smooth objectives.

namespace divlab::opt {

struct Minimum1D {
  double x = 0.0;
  double f = 0.0;
  int evaluations = 0;
};

/// Golden-section search on [lo, hi] until the bracket is narrower than
/// x_tol or max_iter is reached. The returned f is the best value seen.
Minimum1D golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                             double x_tol = 1e-10, int max_iter = 200);

/// Evaluates f at every grid node (ascending), then polishes the best node
/// by golden section over its neighbouring cell(s). The result is never
/// worse than any grid node; ties keep the first node.
/// `precomputed` may hold f at the grid nodes already.
Minimum1D grid_golden_min(const std::function<double(double)>& f, std::span<const double> grid,
                          double x_tol = 1e-10, std::span<const double> precomputed = {});

struct MinimumND {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

struct NelderMeadOptions {
  int max_iter = 200;
  /// Stop when the spread of simplex values drops below f_tol and the
  /// simplex diameter below x_tol.
  double f_tol = 1e-10;
  double x_tol = 1e-8;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). `step` sets the initial simplex edge per coordinate.
MinimumND nelder_mead_min(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, std::span<const double> step,
                          const NelderMeadOptions& opts = {});

}  // namespace divlab::opt

#endif  // DIVLAB_OPTIMIZE_HPP
