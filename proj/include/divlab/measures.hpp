#ifndef DIVLAB_MEASURES_HPP
#define DIVLAB_MEASURES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "divlab/channels.hpp"
#include "divlab/kernels.hpp"
#include "divlab/qmat.hpp"

// Indivisibility (P-I, CP-I) and resourcefulness (NM1, NM2) of a JC channel
// over [t, t + tau], plus the diameter d of the free set.
//
// State optimizations seed on a (theta, phi, r) grid over the full Bloch
// ball and refine with Nelder-Mead; gamma0 minimizations over the free
// family seed on the family grid and refine by golden section.

namespace divlab::measures {

using channels::FreeFamily;
using channels::JCParams;
using qmat::BlochVector;

struct OptConfig {
  int grid_theta = 24;
  int grid_phi = 12;
  int grid_r = 8;
  /// Nelder-Mead iteration cap per start.
  int refine_iters = 200;
  /// Objective convergence tolerance for the local refinement.
  double tol = 1e-6;
  /// Number of best coarse points used as Nelder-Mead starts.
  int refine_seeds = 4;
  /// Extra Nelder-Mead starts drawn around the incumbent with a seeded RNG.
  int restarts = 2;
  std::uint64_t seed = 20240611;

  /// Throws std::invalid_argument when a count is < 2 or tol <= 0.
  void validate() const;
};

/// The coarse seeding grid: theta and r include both endpoints, phi is
/// periodic. Order is theta-major, then phi, then r.
std::vector<BlochVector> bloch_grid(const OptConfig& opt);

struct PIndivisibility {
  double value = 0.0;  // max(raw, 0)
  double raw = 0.0;    // max over state pairs before clipping
  BlochVector rho1, rho2;
};

struct NM1Result {
  double value = 0.0;
  BlochVector state;
  double gamma0 = 0.0;  // minimizing free operation for `state`
};

struct NM2Result {
  double value = 0.0;
  double gamma0 = 0.0;
};

struct DiameterResult {
  double value = 0.0;
  BlochVector rho1, rho2;
  double gamma0_1 = 0.0;
  double gamma0_2 = 0.0;
};

/// max{ max_{rho1,rho2} D[L(t+tau,0) rho1 || L(t+tau,0) rho2]
///                     - D[L(t,0) rho1 || L(t,0) rho2], 0 }.
/// nullopt when the interval [t, t+tau] is singular.
std::optional<PIndivisibility> p_indivisibility(const JCParams& p, double t, double tau,
                                                const OptConfig& opt);

/// ||(L(t+tau,t) (x) 1)|phi+><phi+|||_1 - 1; nullopt when singular.
std::optional<double> cp_indivisibility(const JCParams& p, double t, double tau);

/// max_rho min_K D[L(t+tau,t) L(t,0) rho || L_K(t+tau,t) L(t,0) rho].
std::optional<NM1Result> nm1(const JCParams& p, const FreeFamily& family, double t, double tau,
                             const OptConfig& opt);

/// min_K D[Choi(L(t+tau,t)) || Choi(L_K(t+tau,t))].
std::optional<NM2Result> nm2(const JCParams& p, const FreeFamily& family, double t, double tau,
                             const OptConfig& opt);

/// max over state pairs and member pairs of D[L_K1(t+tau,t) rho1 || L_K2(t+tau,t) rho2].
/// The coarse stage scans state pairs against the family endpoints, then
/// every member pair at the best state pair; Nelder-Mead refines all eight
/// coordinates.
DiameterResult diameter_d(const FreeFamily& family, double t, double tau, const OptConfig& opt);

/// All metrics at one (t, tau). When the interval is singular every metric
/// is null and `singular` is set.
struct MeasureRecord {
  double t = 0.0;
  double tau = 0.0;
  double gamma0 = 0.0;
  double lambda = 0.0;
  bool singular = false;
  std::optional<double> g;
  std::optional<double> p_i;
  std::optional<double> cp_i;
  std::optional<double> nm1;
  std::optional<double> nm2;
  std::optional<double> d;

  // Optimizer arguments, meaningful when the matching value is present.
  BlochVector p_i_rho1, p_i_rho2;
  BlochVector nm1_state;
  double nm1_gamma0 = 0.0;
  double nm2_gamma0 = 0.0;
  BlochVector d_rho1, d_rho2;
  double d_gamma0_1 = 0.0;
  double d_gamma0_2 = 0.0;
};

MeasureRecord evaluate(const JCParams& p, const FreeFamily& family, double t, double tau,
                       const OptConfig& opt);

/// Objective values computed with density matrices, the AD channel and the
/// Jacobi trace norm. Slow; used to validate the Bloch kernels.
namespace reference {

double p_objective(double G_t, double G_t_tau, const BlochVector& rho1, const BlochVector& rho2);
double nm1_objective(double G_t, double g, double g_free, const BlochVector& rho);
double nm2_objective(double g, double g_free);
double d_objective(double g_free1, double g_free2, const BlochVector& rho1, const BlochVector& rho2);

}  // namespace reference

}  // namespace divlab::measures

#endif  // DIVLAB_MEASURES_HPP
