#include "divlab/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>

#include "divlab/optimize.hpp"

namespace divlab::measures {

using channels::SurvivalRatio;
using kernels::Vec3;
using kernels::VecBatch;

namespace {

constexpr double kGammaTol = 1e-9;

// Best-k list for a maximization; a later candidate must be strictly
// better to displace an earlier one.
struct Candidate {
  double value;
  int i, j, a, b;
};

class TopK {
 public:
  explicit TopK(int k) : k_(static_cast<std::size_t>(std::max(1, k))) {}

  double threshold() const {
    return items_.size() < k_ ? -std::numeric_limits<double>::infinity() : items_.back().value;
  }

  void offer(const Candidate& c) {
    if (c.value <= threshold()) return;
    auto pos = std::find_if(items_.begin(), items_.end(),
                            [&](const Candidate& x) { return c.value > x.value; });
    items_.insert(pos, c);
    if (items_.size() > k_) items_.pop_back();
  }

  const std::vector<Candidate>& items() const { return items_; }

 private:
  std::size_t k_;
  std::vector<Candidate> items_;
};

struct Spacing {
  double theta, phi, r;
};

Spacing grid_spacing(const OptConfig& opt) {
  return {std::numbers::pi / (opt.grid_theta - 1), 2.0 * std::numbers::pi / opt.grid_phi,
          1.0 / (opt.grid_r - 1)};
}

BlochVector state_from(std::span<const double> x) { return qmat::canonical_bloch(x[2], x[0], x[1]); }

VecBatch cartesian(const std::vector<BlochVector>& grid) {
  VecBatch out;
  for (const BlochVector& b : grid) out.push_back(kernels::to_cartesian(b));
  return out;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 record_rng(const OptConfig& opt, double t, double tau, std::uint64_t tag) {
  std::uint64_t s = splitmix(opt.seed ^ tag);
  s = splitmix(s ^ std::bit_cast<std::uint64_t>(t));
  s = splitmix(s ^ std::bit_cast<std::uint64_t>(tau));
  return std::mt19937_64(s);
}

struct Refined {
  std::vector<double> x;
  double value;
};

// Maximizes f with Nelder-Mead from each start, then from `restarts`
// random perturbations of the incumbent. Never returns less than
// `incumbent`.
template <class F>
Refined refine_max(F&& f, const std::vector<std::vector<double>>& starts, const std::vector<double>& step,
                   Refined incumbent, const OptConfig& opt, std::mt19937_64& rng) {
  opt::NelderMeadOptions nm;
  nm.max_iter = opt.refine_iters;
  nm.f_tol = opt.tol;
  nm.x_tol = 1e-6;
  const std::function<double(std::span<const double>)> neg = [&](std::span<const double> x) { return -f(x); };

  auto run = [&](const std::vector<double>& x0) {
    const opt::MinimumND m = opt::nelder_mead_min(neg, x0, step, nm);
    if (-m.f > incumbent.value) incumbent = {m.x, -m.f};
  };
  for (const auto& s : starts) run(s);

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < opt.restarts; ++k) {
    std::vector<double> x0 = incumbent.x;
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] += unit(rng) * step[i];
    run(x0);
  }
  return incumbent;
}

std::vector<double> coords(const BlochVector& b) { return {b.theta, b.phi, b.r}; }

}  // namespace

void OptConfig::validate() const {
  if (grid_theta < 2 || grid_phi < 2 || grid_r < 2) {
    throw std::invalid_argument("Bloch grid counts must all be >= 2");
  }
  if (refine_iters < 0 || refine_seeds < 1 || restarts < 0) {
    throw std::invalid_argument("refinement settings must be non-negative with at least one seed");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
}

std::vector<BlochVector> bloch_grid(const OptConfig& opt) {
  opt.validate();
  const Spacing sp = grid_spacing(opt);
  std::vector<BlochVector> grid;
  grid.reserve(static_cast<std::size_t>(opt.grid_theta) * opt.grid_phi * opt.grid_r);
  for (int a = 0; a < opt.grid_theta; ++a) {
    const double theta = a == opt.grid_theta - 1 ? std::numbers::pi : a * sp.theta;
    for (int b = 0; b < opt.grid_phi; ++b) {
      for (int c = 0; c < opt.grid_r; ++c) {
        const double r = c == opt.grid_r - 1 ? 1.0 : c * sp.r;
        grid.push_back({r, theta, b * sp.phi});
      }
    }
  }
  return grid;
}

std::optional<PIndivisibility> p_indivisibility(const JCParams& p, double t, double tau,
                                                const OptConfig& opt) {
  opt.validate();
  if (channels::interval_map(t, tau, p).singular) return std::nullopt;
  const double G1 = channels::decay_amplitude(t, p);
  const double G2 = channels::decay_amplitude(t + tau, p);

  const std::vector<BlochVector> grid = bloch_grid(opt);
  const VecBatch initial = cartesian(grid);
  const VecBatch at_t = kernels::damp_all(G1, initial);
  const VecBatch at_t_tau = kernels::damp_all(G2, initial);
  const std::size_t n = grid.size();

  TopK top(opt.refine_seeds);
  std::vector<double> row_a(n), row_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    kernels::distances_from(at_t[i], at_t, i, n, row_a.data());
    kernels::distances_from(at_t_tau[i], at_t_tau, i, n, row_b.data());
    const double thr = top.threshold();
    for (std::size_t j = i; j < n; ++j) {
      const double v = row_b[j - i] - row_a[j - i];
      if (v > thr) {
        top.offer({v, static_cast<int>(i), static_cast<int>(j), 0, 0});
      }
    }
  }

  auto objective = [&](std::span<const double> x) {
    const Vec3 s1 = kernels::to_cartesian(state_from(x.subspan(0, 3)));
    const Vec3 s2 = kernels::to_cartesian(state_from(x.subspan(3, 3)));
    return kernels::distance(kernels::damp(G2, s1), kernels::damp(G2, s2)) -
           kernels::distance(kernels::damp(G1, s1), kernels::damp(G1, s2));
  };

  std::vector<std::vector<double>> starts;
  for (const Candidate& c : top.items()) {
    std::vector<double> x = coords(grid[c.i]);
    const std::vector<double> y = coords(grid[c.j]);
    x.insert(x.end(), y.begin(), y.end());
    starts.push_back(std::move(x));
  }
  const Spacing sp = grid_spacing(opt);
  const std::vector<double> step{0.5 * sp.theta, 0.5 * sp.phi, 0.5 * sp.r,
                                 0.5 * sp.theta, 0.5 * sp.phi, 0.5 * sp.r};
  auto rng = record_rng(opt, t, tau, 1);
  const Refined best =
      refine_max(objective, starts, step, {starts.front(), top.items().front().value}, opt, rng);

  PIndivisibility out;
  out.raw = best.value;
  out.value = std::max(best.value, 0.0);
  out.rho1 = state_from(std::span(best.x).subspan(0, 3));
  out.rho2 = state_from(std::span(best.x).subspan(3, 3));
  return out;
}

std::optional<double> cp_indivisibility(const JCParams& p, double t, double tau) {
  const SurvivalRatio g = channels::interval_map(t, tau, p);
  if (g.singular) return std::nullopt;
  const double norm = qmat::trace_norm(channels::choi_of(g).matrix);
  // Rounding can leave the CP case a few ulps below zero.
  return std::max(norm - 1.0, 0.0);
}

std::optional<NM1Result> nm1(const JCParams& p, const FreeFamily& family, double t, double tau,
                             const OptConfig& opt) {
  opt.validate();
  const SurvivalRatio ratio = channels::interval_map(t, tau, p);
  if (ratio.singular) return std::nullopt;
  const double G1 = channels::decay_amplitude(t, p);
  const double g = ratio.g;

  std::vector<double> gammas, member_ratio;
  for (const JCParams& m : family.members()) {
    gammas.push_back(m.gamma0());
    member_ratio.push_back(family.ratio(m.gamma0(), t, tau));
  }
  std::vector<double> grid_vals(gammas.size());

  // min over free operations for one initial state.
  auto inner = [&](const Vec3& s) {
    const Vec3 u = kernels::damp(G1, s);
    const Vec3 target = kernels::damp(g, u);
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      grid_vals[k] = kernels::distance(target, kernels::damp(member_ratio[k], u));
    }
    const std::function<double(double)> h = [&](double gam) {
      return kernels::distance(target, kernels::damp(family.ratio(gam, t, tau), u));
    };
    return opt::grid_golden_min(h, gammas, kGammaTol, grid_vals);
  };

  const std::vector<BlochVector> grid = bloch_grid(opt);
  TopK top(opt.refine_seeds);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    top.offer({inner(kernels::to_cartesian(grid[i])).f, static_cast<int>(i), 0, 0, 0});
  }

  auto objective = [&](std::span<const double> x) {
    return inner(kernels::to_cartesian(state_from(x))).f;
  };
  std::vector<std::vector<double>> starts;
  for (const Candidate& c : top.items()) starts.push_back(coords(grid[c.i]));
  const Spacing sp = grid_spacing(opt);
  const std::vector<double> step{0.5 * sp.theta, 0.5 * sp.phi, 0.5 * sp.r};
  auto rng = record_rng(opt, t, tau, 2);
  const Refined best =
      refine_max(objective, starts, step, {starts.front(), top.items().front().value}, opt, rng);

  NM1Result out;
  out.state = state_from(best.x);
  const opt::Minimum1D m = inner(kernels::to_cartesian(out.state));
  out.value = best.value;
  out.gamma0 = m.x;
  return out;
}

std::optional<NM2Result> nm2(const JCParams& p, const FreeFamily& family, double t, double tau,
                             const OptConfig& opt) {
  opt.validate();
  const SurvivalRatio ratio = channels::interval_map(t, tau, p);
  if (ratio.singular) return std::nullopt;
  const qmat::ComplexMatrix target = channels::choi_of(ratio).matrix;

  const std::function<double(double)> h = [&](double gam) {
    const SurvivalRatio free{family.ratio(gam, t, tau), false};
    return 0.5 * qmat::trace_norm(target - channels::choi_of(free).matrix);
  };
  std::vector<double> gammas;
  for (const JCParams& m : family.members()) gammas.push_back(m.gamma0());
  const opt::Minimum1D m = opt::grid_golden_min(h, gammas, kGammaTol);
  return NM2Result{m.f, m.x};
}

DiameterResult diameter_d(const FreeFamily& family, double t, double tau, const OptConfig& opt) {
  opt.validate();
  const double lo = family.gamma0_min();
  const double hi = family.gamma0_max();
  std::vector<double> ends{lo};
  if (hi != lo) ends.push_back(hi);

  const std::vector<BlochVector> grid = bloch_grid(opt);
  const VecBatch initial = cartesian(grid);
  const std::size_t n = grid.size();
  std::vector<VecBatch> outputs;
  for (double gam : ends) outputs.push_back(kernels::damp_all(family.ratio(gam, t, tau), initial));

  // D is symmetric under swapping (rho1, K1) with (rho2, K2), so equal
  // endpoints scan j >= i and mixed endpoints scan all j.
  TopK top(opt.refine_seeds);
  std::vector<double> row(n);
  for (std::size_t a = 0; a < ends.size(); ++a) {
    for (std::size_t b = a; b < ends.size(); ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t first = a == b ? i : 0;
        kernels::distances_from(outputs[a][i], outputs[b], first, n, row.data());
        const double thr = top.threshold();
        for (std::size_t j = first; j < n; ++j) {
          if (row[j - first] > thr) {
            top.offer({row[j - first], static_cast<int>(i), static_cast<int>(j), static_cast<int>(a),
                       static_cast<int>(b)});
          }
        }
      }
    }
  }

  auto make_x = [&](const BlochVector& r1, const BlochVector& r2, double g1, double g2) {
    std::vector<double> x = coords(r1);
    const std::vector<double> y = coords(r2);
    x.insert(x.end(), y.begin(), y.end());
    x.push_back(g1);
    x.push_back(g2);
    return x;
  };

  std::vector<std::vector<double>> starts;
  for (const Candidate& c : top.items()) starts.push_back(make_x(grid[c.i], grid[c.j], ends[c.a], ends[c.b]));
  Refined incumbent{starts.front(), top.items().front().value};

  // Every member pair at the best coarse state pair.
  {
    const Candidate& c = top.items().front();
    const Vec3 s1 = initial[c.i];
    const Vec3 s2 = initial[c.j];
    std::vector<Vec3> out1, out2;
    for (const JCParams& m : family.members()) {
      const double gk = family.ratio(m.gamma0(), t, tau);
      out1.push_back(kernels::damp(gk, s1));
      out2.push_back(kernels::damp(gk, s2));
    }
    const auto& members = family.members();
    std::vector<double> best_x;
    double best_v = -1.0;
    for (std::size_t k1 = 0; k1 < members.size(); ++k1) {
      for (std::size_t k2 = 0; k2 < members.size(); ++k2) {
        const double v = kernels::distance(out1[k1], out2[k2]);
        if (v > best_v) {
          best_v = v;
          best_x = make_x(grid[c.i], grid[c.j], members[k1].gamma0(), members[k2].gamma0());
        }
      }
    }
    starts.push_back(best_x);
    if (best_v > incumbent.value) incumbent = {best_x, best_v};
  }

  auto gamma_of = [&](double x) { return std::clamp(x, lo, hi); };
  auto objective = [&](std::span<const double> x) {
    const Vec3 s1 = kernels::to_cartesian(state_from(x.subspan(0, 3)));
    const Vec3 s2 = kernels::to_cartesian(state_from(x.subspan(3, 3)));
    const double g1 = family.ratio(gamma_of(x[6]), t, tau);
    const double g2 = family.ratio(gamma_of(x[7]), t, tau);
    return kernels::distance(kernels::damp(g1, s1), kernels::damp(g2, s2));
  };

  const Spacing sp = grid_spacing(opt);
  const double gstep =
      family.members().size() > 1 ? (hi - lo) / static_cast<double>(family.members().size() - 1) : 1e-3;
  const std::vector<double> step{0.5 * sp.theta, 0.5 * sp.phi, 0.5 * sp.r, 0.5 * sp.theta,
                                 0.5 * sp.phi,   0.5 * sp.r,  gstep,      gstep};
  auto rng = record_rng(opt, t, tau, 3);
  const Refined best = refine_max(objective, starts, step, incumbent, opt, rng);

  DiameterResult out;
  out.value = best.value;
  out.rho1 = state_from(std::span(best.x).subspan(0, 3));
  out.rho2 = state_from(std::span(best.x).subspan(3, 3));
  out.gamma0_1 = gamma_of(best.x[6]);
  out.gamma0_2 = gamma_of(best.x[7]);
  return out;
}

MeasureRecord evaluate(const JCParams& p, const FreeFamily& family, double t, double tau,
                       const OptConfig& opt) {
  MeasureRecord rec;
  rec.t = t;
  rec.tau = tau;
  rec.gamma0 = p.gamma0();
  rec.lambda = p.lambda();
  const SurvivalRatio ratio = channels::interval_map(t, tau, p);
  if (ratio.singular) {
    rec.singular = true;
    return rec;
  }
  rec.g = ratio.g;

  const auto pi = p_indivisibility(p, t, tau, opt);
  rec.p_i = pi->value;
  rec.p_i_rho1 = pi->rho1;
  rec.p_i_rho2 = pi->rho2;

  rec.cp_i = cp_indivisibility(p, t, tau);

  const auto n1 = nm1(p, family, t, tau, opt);
  rec.nm1 = n1->value;
  rec.nm1_state = n1->state;
  rec.nm1_gamma0 = n1->gamma0;

  const auto n2 = nm2(p, family, t, tau, opt);
  rec.nm2 = n2->value;
  rec.nm2_gamma0 = n2->gamma0;

  const DiameterResult dr = diameter_d(family, t, tau, opt);
  rec.d = dr.value;
  rec.d_rho1 = dr.rho1;
  rec.d_rho2 = dr.rho2;
  rec.d_gamma0_1 = dr.gamma0_1;
  rec.d_gamma0_2 = dr.gamma0_2;
  return rec;
}

namespace reference {

namespace {

qmat::DensityMatrix evolve(double amplitude, const qmat::DensityMatrix& rho) {
  return qmat::DensityMatrix::from(channels::apply_ad({amplitude, false}, rho));
}

}  // namespace

double p_objective(double G_t, double G_t_tau, const BlochVector& rho1, const BlochVector& rho2) {
  const qmat::DensityMatrix a = qmat::bloch_to_state(rho1);
  const qmat::DensityMatrix b = qmat::bloch_to_state(rho2);
  return qmat::trace_distance(evolve(G_t_tau, a), evolve(G_t_tau, b)) -
         qmat::trace_distance(evolve(G_t, a), evolve(G_t, b));
}

double nm1_objective(double G_t, double g, double g_free, const BlochVector& rho) {
  const qmat::DensityMatrix at_t = evolve(G_t, qmat::bloch_to_state(rho));
  return qmat::trace_distance(evolve(g, at_t), evolve(g_free, at_t));
}

double nm2_objective(double g, double g_free) {
  return 0.5 * qmat::trace_norm(channels::choi_of({g, false}).matrix -
                                channels::choi_of({g_free, false}).matrix);
}

double d_objective(double g_free1, double g_free2, const BlochVector& rho1, const BlochVector& rho2) {
  return qmat::trace_distance(evolve(g_free1, qmat::bloch_to_state(rho1)),
                              evolve(g_free2, qmat::bloch_to_state(rho2)));
}

}  // namespace reference

}  // namespace divlab::measures
