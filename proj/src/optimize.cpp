#include "divlab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace divlab::opt {

Minimum1D golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                             double x_tol, int max_iter) {
  if (hi < lo) std::swap(lo, hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  Minimum1D best;
  auto consider = [&](double x, double fx) {
    if (best.evaluations == 0 || fx < best.f) {
      best.x = x;
      best.f = fx;
    }
    ++best.evaluations;
  };

  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  consider(c, fc);
  double fd = f(d);
  consider(d, fd);

  for (int it = 0; it < max_iter && (hi - lo) > x_tol; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

Minimum1D grid_golden_min(const std::function<double(double)>& f, std::span<const double> grid,
                          double x_tol, std::span<const double> precomputed) {
  if (grid.empty()) throw std::invalid_argument("grid_golden_min: empty grid");
  if (!precomputed.empty() && precomputed.size() != grid.size()) {
    throw std::invalid_argument("grid_golden_min: precomputed values do not match grid");
  }

  Minimum1D best;
  std::size_t best_idx = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double fx;
    if (precomputed.empty()) {
      fx = f(grid[k]);
      ++best.evaluations;
    } else {
      fx = precomputed[k];
    }
    if (k == 0 || fx < best.f) {
      best.f = fx;
      best.x = grid[k];
      best_idx = k;
    }
  }
  if (grid.size() == 1) return best;

  const double lo = grid[best_idx == 0 ? 0 : best_idx - 1];
  const double hi = grid[best_idx + 1 == grid.size() ? best_idx : best_idx + 1];
  const Minimum1D polished = golden_section_min(f, lo, hi, x_tol);
  best.evaluations += polished.evaluations;
  if (polished.f < best.f) {
    best.f = polished.f;
    best.x = polished.x;
  }
  return best;
}

MinimumND nelder_mead_min(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, std::span<const double> step,
                          const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) throw std::invalid_argument("nelder_mead_min: bad dimensions");

  MinimumND result;
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step[i];
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = f(simplex[i]);
    ++result.evaluations;
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  };
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return f(x);
  };

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    sort_simplex();
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
      }
    }
    if (values[worst] - values[best] <= opts.f_tol && diameter <= opts.x_tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + (centroid[k] - simplex[worst][k]);
    const double f_reflect = eval(trial);

    if (f_reflect < values[best]) {
      for (std::size_t k = 0; k < n; ++k) {
        trial2[k] = centroid[k] + 2.0 * (centroid[k] - simplex[worst][k]);
      }
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }

    const bool outside = f_reflect < values[worst];
    for (std::size_t k = 0; k < n; ++k) {
      const double target = outside ? trial[k] : simplex[worst][k];
      trial2[k] = centroid[k] + 0.5 * (target - centroid[k]);
    }
    const double f_contract = eval(trial2);
    if (f_contract < (outside ? f_reflect : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }

    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  sort_simplex();
  result.x = simplex[order.front()];
  result.f = values[order.front()];
  result.iterations = it;
  return result;
}

}  // namespace divlab::opt
