#ifndef DIVLAB_CHANNELS_HPP
#define DIVLAB_CHANNELS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "divlab/qmat.hpp"

// Resonant Jaynes-Cummings reduced dynamics of a qubit in a vacuum bath.
// The dynamical map is amplitude damping with a real survival amplitude
// G(t): excited population scales by G^2, coherences by G.

namespace divlab::channels {

/// |G(t)| below this makes the interval map Lambda(t+tau, t) undefined.
inline constexpr double kSingularityFloor = 1e-8;
/// |delta^2| below this is treated as the critical (delta = 0) case.
inline constexpr double kCriticalDelta2 = 1e-12;
inline constexpr double kRateDenominatorFloor = 1e-12;
inline constexpr double kRateClamp = 1e6;

class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// Decay-rate parameters gamma0 and lambda, both strictly positive.
class JCParams {
 public:
  /// Throws std::invalid_argument unless both values are finite and > 0.
  JCParams(double gamma0, double lambda);

  double gamma0() const { return gamma0_; }
  double lambda() const { return lambda_; }
  /// lambda^2 - 2 gamma0 lambda; negative in the oscillating regime.
  double delta2() const { return lambda_ * lambda_ - 2.0 * gamma0_ * lambda_; }
  /// gamma0 < lambda / 2: monotone decay, the free (Markovian) regime.
  bool markovian() const { return gamma0_ < 0.5 * lambda_; }

  friend bool operator==(const JCParams&, const JCParams&) = default;

 private:
  double gamma0_;
  double lambda_;
};

/// G(t) with G(0) = 1 and dG/dt = -gamma(t) G / 2.
double decay_amplitude(double t, const JCParams& p);

/// gamma(t); negative values mark information backflow. Throws
/// SingularityError when the denominator is below kRateDenominatorFloor.
double decay_rate(double t, const JCParams& p);

/// Amplitude-damping parameter of the interval map Lambda(t+tau, t).
struct SurvivalRatio {
  double g = 1.0;
  bool singular = false;
};

/// g = G(t+tau) / G(t), or a singular marker when |G(t)| < floor.
SurvivalRatio interval_map(double t, double tau, const JCParams& p,
                           double floor = kSingularityFloor);

/// Linear action of amplitude damping with parameter g on an arbitrary 2x2
/// operator. Valid as a channel only for |g| <= 1.
qmat::ComplexMatrix ad_action(double g, const qmat::ComplexMatrix& x);

/// Image of a state under the interval map. The result is Hermitian with
/// unit trace; it is a state whenever |g| <= 1. Throws SingularityError on a
/// singular ratio so callers can skip the record.
qmat::ComplexMatrix apply_ad(const SurvivalRatio& g, const qmat::DensityMatrix& rho);

/// (Lambda (x) 1)|phi+><phi+| for the interval map. Unit trace, Hermitian,
/// PSD exactly when |g| <= 1.
struct ChoiState {
  qmat::ComplexMatrix matrix{4};
};

ChoiState choi_of(const SurvivalRatio& g);

/// RK4 samples of G on [0, t_end].
struct Trajectory {
  std::vector<double> t;
  std::vector<double> G;
  /// Set when gamma had to be clamped to +-kRateClamp near a pole.
  bool clamped = false;
};

/// Classical RK4 for dG/dt = -gamma(t) G / 2, independent of the closed form
/// of decay_amplitude. The step is shrunk so that it divides t_end evenly.
/// Throws std::invalid_argument for dt outside (0, 1e-3] or t_end < 0.
Trajectory integrate_lindblad(const JCParams& p, double t_end, double dt = 1e-4);

/// RK4 for the full master equation
///   drho/dt = gamma(t) (s- rho s+ - {s+ s-, rho} / 2),  s- = |g><e|,
/// returning rho(t_end). Used to cross-check apply_ad.
qmat::ComplexMatrix integrate_master_equation(const JCParams& p, const qmat::DensityMatrix& rho0,
                                              double t_end, double dt = 1e-4);

/// Continuous set of free operations: JC maps with a fixed lambda and
/// gamma0 in [gamma0_min, gamma0_max], together with a uniform seed grid.
class FreeFamily {
 public:
  FreeFamily(double lambda, double gamma0_min, double gamma0_max, std::vector<JCParams> members);

  /// One free operation; min == max == gamma0.
  static FreeFamily single(double lambda, double gamma0);

  double lambda() const { return lambda_; }
  double gamma0_min() const { return gamma0_min_; }
  double gamma0_max() const { return gamma0_max_; }
  const std::vector<JCParams>& members() const { return members_; }

  /// Interval-map ratio of the member with the given gamma0. Markovian
  /// members never hit the singularity floor.
  double ratio(double gamma0, double t, double tau) const;

 private:
  double lambda_;
  double gamma0_min_;
  double gamma0_max_;
  std::vector<JCParams> members_;
};

/// n members uniformly spaced in gamma0 over [gamma0_min, gamma0_max].
/// Throws std::invalid_argument unless 0 < min < max < lambda/2 and n >= 2.
FreeFamily free_family(double lambda_fixed, double gamma0_min, double gamma0_max, int n);

}  // namespace divlab::channels

#endif  // DIVLAB_CHANNELS_HPP
