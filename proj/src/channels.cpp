#include "divlab/channels.hpp"

#include <cmath>
#include <sstream>

namespace divlab::channels {

using qmat::cplx;
using qmat::ComplexMatrix;

namespace {

// C(t) and S(t) such that G = e^{-lambda t/2} (C + lambda S) and
// gamma = 2 lambda gamma0 S / (C + lambda S). S carries the 1/delta factor
// so all three regimes stay real.
struct Hyperbolic {
  double c;
  double s;
};

Hyperbolic hyperbolic_parts(double t, const JCParams& p) {
  const double d2 = p.delta2();
  if (std::abs(d2) < kCriticalDelta2) return {1.0, 0.5 * t};
  if (d2 > 0.0) {
    const double delta = std::sqrt(d2);
    return {std::cosh(0.5 * delta * t), std::sinh(0.5 * delta * t) / delta};
  }
  const double omega = std::sqrt(-d2);
  return {std::cos(0.5 * omega * t), std::sin(0.5 * omega * t) / omega};
}

void require_finite_nonneg(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
  }
}

double clamped_rate(double t, const JCParams& p, bool& clamped) {
  const Hyperbolic h = hyperbolic_parts(t, p);
  const double den = h.c + p.lambda() * h.s;
  const double num = 2.0 * p.lambda() * p.gamma0() * h.s;
  if (std::abs(den) * kRateClamp <= std::abs(num)) {
    clamped = true;
    return num * den >= 0.0 ? kRateClamp : -kRateClamp;
  }
  return num / den;
}

}  // namespace

JCParams::JCParams(double gamma0, double lambda) : gamma0_(gamma0), lambda_(lambda) {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0) || !(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream msg;
    msg << "JC parameters must be positive: gamma0=" << gamma0 << " lambda=" << lambda;
    throw std::invalid_argument(msg.str());
  }
}

double decay_amplitude(double t, const JCParams& p) {
  require_finite_nonneg(t, "t");
  const Hyperbolic h = hyperbolic_parts(t, p);
  return std::exp(-0.5 * p.lambda() * t) * (h.c + p.lambda() * h.s);
}

double decay_rate(double t, const JCParams& p) {
  require_finite_nonneg(t, "t");
  const Hyperbolic h = hyperbolic_parts(t, p);
  const double den = h.c + p.lambda() * h.s;
  if (std::abs(den) < kRateDenominatorFloor) {
    std::ostringstream msg;
    msg << "decay rate is singular at t=" << t;
    throw SingularityError(msg.str(), t);
  }
  return 2.0 * p.lambda() * p.gamma0() * h.s / den;
}

SurvivalRatio interval_map(double t, double tau, const JCParams& p, double floor) {
  require_finite_nonneg(t, "t");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  const double g_t = decay_amplitude(t, p);
  if (std::abs(g_t) < floor) return {0.0, true};
  return {decay_amplitude(t + tau, p) / g_t, false};
}

ComplexMatrix ad_action(double g, const ComplexMatrix& x) {
  if (x.dim() != 2) throw qmat::DimensionError("ad_action expects a 2x2 operator");
  // |e><e| -> g^2 |e><e| + (1 - g^2) |g><g|, coherences -> g, |g><g| fixed.
  ComplexMatrix out(2);
  out(0, 0) = g * g * x(0, 0);
  out(0, 1) = g * x(0, 1);
  out(1, 0) = g * x(1, 0);
  out(1, 1) = x(1, 1) + (1.0 - g * g) * x(0, 0);
  return out;
}

ComplexMatrix apply_ad(const SurvivalRatio& g, const qmat::DensityMatrix& rho) {
  if (g.singular) {
    throw SingularityError("interval map is singular; skip this record", 0.0);
  }
  if (rho.dim() != 2) throw qmat::DimensionError("apply_ad expects a qubit state");
  return ad_action(g.g, rho.matrix());
}

ChoiState choi_of(const SurvivalRatio& g) {
  if (g.singular) throw SingularityError("Choi state of a singular interval map", 0.0);
  // (1/2) sum_ij Lambda(|i><j|) (x) |i><j|
  ChoiState choi;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix unit(2);
      unit(i, j) = 1.0;
      choi.matrix += qmat::kron(ad_action(g.g, unit), unit);
    }
  }
  choi.matrix *= 0.5;
  return choi;
}

Trajectory integrate_lindblad(const JCParams& p, double t_end, double dt) {
  require_finite_nonneg(t_end, "t_end");
  if (!(dt > 0.0) || dt > 1e-3) throw std::invalid_argument("dt must lie in (0, 1e-3]");

  Trajectory traj;
  traj.t.push_back(0.0);
  traj.G.push_back(1.0);
  if (t_end == 0.0) return traj;

  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);
  traj.t.reserve(steps + 1);
  traj.G.reserve(steps + 1);

  auto rhs = [&](double t, double G) { return -0.5 * clamped_rate(t, p, traj.clamped) * G; };

  double G = 1.0;
  for (long n = 0; n < steps; ++n) {
    const double t = h * static_cast<double>(n);
    const double k1 = rhs(t, G);
    const double k2 = rhs(t + 0.5 * h, G + 0.5 * h * k1);
    const double k3 = rhs(t + 0.5 * h, G + 0.5 * h * k2);
    const double k4 = rhs(t + h, G + h * k3);
    G += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    traj.t.push_back(h * static_cast<double>(n + 1));
    traj.G.push_back(G);
  }
  return traj;
}

ComplexMatrix integrate_master_equation(const JCParams& p, const qmat::DensityMatrix& rho0,
                                        double t_end, double dt) {
  require_finite_nonneg(t_end, "t_end");
  if (!(dt > 0.0) || dt > 1e-3) throw std::invalid_argument("dt must lie in (0, 1e-3]");
  if (rho0.dim() != 2) throw qmat::DimensionError("master equation expects a qubit state");

  const ComplexMatrix lower(2, {0.0, 0.0, 1.0, 0.0});  // |g><e|
  const ComplexMatrix raise = lower.adjoint();
  const ComplexMatrix number = raise * lower;  // |e><e|
  bool clamped = false;

  auto rhs = [&](double t, const ComplexMatrix& rho) {
    ComplexMatrix d = lower * rho * raise;
    ComplexMatrix anti = number * rho + rho * number;
    anti *= 0.5;
    d -= anti;
    d *= clamped_rate(t, p, clamped);
    return d;
  };

  ComplexMatrix rho = rho0.matrix();
  if (t_end == 0.0) return rho;
  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);
  for (long n = 0; n < steps; ++n) {
    const double t = h * static_cast<double>(n);
    const ComplexMatrix k1 = rhs(t, rho);
    const ComplexMatrix k2 = rhs(t + 0.5 * h, rho + k1 * cplx(0.5 * h));
    const ComplexMatrix k3 = rhs(t + 0.5 * h, rho + k2 * cplx(0.5 * h));
    const ComplexMatrix k4 = rhs(t + h, rho + k3 * cplx(h));
    rho += (k1 + k2 * cplx(2.0) + k3 * cplx(2.0) + k4) * cplx(h / 6.0);
  }
  return rho;
}

FreeFamily::FreeFamily(double lambda, double gamma0_min, double gamma0_max,
                       std::vector<JCParams> members)
    : lambda_(lambda), gamma0_min_(gamma0_min), gamma0_max_(gamma0_max), members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("free family must not be empty");
  if (!(gamma0_min > 0.0) || gamma0_max < gamma0_min || !(gamma0_max < 0.5 * lambda)) {
    std::ostringstream msg;
    msg << "free family range [" << gamma0_min << ", " << gamma0_max
        << "] must satisfy 0 < min <= max < lambda/2 = " << 0.5 * lambda;
    throw std::invalid_argument(msg.str());
  }
}

FreeFamily FreeFamily::single(double lambda, double gamma0) {
  return FreeFamily(lambda, gamma0, gamma0, {JCParams(gamma0, lambda)});
}

double FreeFamily::ratio(double gamma0, double t, double tau) const {
  const JCParams member(gamma0, lambda_);
  return decay_amplitude(t + tau, member) / decay_amplitude(t, member);
}

FreeFamily free_family(double lambda_fixed, double gamma0_min, double gamma0_max, int n) {
  if (n < 2) throw std::invalid_argument("free family needs at least 2 members");
  if (!(gamma0_min > 0.0) || !(gamma0_min < gamma0_max)) {
    std::ostringstream msg;
    msg << "free family range needs 0 < gamma0_min < gamma0_max, got [" << gamma0_min << ", "
        << gamma0_max << "]";
    throw std::invalid_argument(msg.str());
  }
  if (!(gamma0_max < 0.5 * lambda_fixed)) {
    std::ostringstream msg;
    msg << "free family gamma0_max=" << gamma0_max << " violates gamma0 < lambda/2 = "
        << 0.5 * lambda_fixed;
    throw std::invalid_argument(msg.str());
  }
  std::vector<JCParams> members;
  members.reserve(n);
  const double step = (gamma0_max - gamma0_min) / static_cast<double>(n - 1);
  for (int k = 0; k < n; ++k) {
    const double g0 = (k == n - 1) ? gamma0_max : gamma0_min + step * static_cast<double>(k);
    members.emplace_back(g0, lambda_fixed);
  }
  return FreeFamily(lambda_fixed, gamma0_min, gamma0_max, std::move(members));
}

}  // namespace divlab::channels
