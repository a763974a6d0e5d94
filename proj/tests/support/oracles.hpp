#ifndef DIVLAB_TESTS_ORACLES_HPP
#define DIVLAB_TESTS_ORACLES_HPP

// Independent reference computations for the tests. Nothing here calls the
// library's numerical code; every value is either a closed form or an
// exhaustive grid search.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline constexpr double kPi = std::numbers::pi;

/// G(t) through a complex square root, valid in every regime.
inline double amplitude(double t, double gamma0, double lambda) {
  const cplx d = std::sqrt(cplx(lambda * lambda - 2.0 * gamma0 * lambda, 0.0));
  if (std::abs(d) < 1e-9) return std::exp(-lambda * t / 2.0) * (1.0 + lambda * t / 2.0);
  const cplx v = std::cosh(d * t / 2.0) + lambda / d * std::sinh(d * t / 2.0);
  return std::exp(-lambda * t / 2.0) * v.real();
}

/// gamma0 = lambda = 2: G = e^-t (cos t + sin t).
inline double amplitude_22(double t) { return std::exp(-t) * (std::cos(t) + std::sin(t)); }

/// gamma0 = lambda = 2: gamma = 4 sin t / (cos t + sin t).
inline double rate_22(double t) { return 4.0 * std::sin(t) / (std::cos(t) + std::sin(t)); }

inline double ratio(double t, double tau, double gamma0, double lambda) {
  return amplitude(t + tau, gamma0, lambda) / amplitude(t, gamma0, lambda);
}

/// rho = (I + x X + y Y + z Z) / 2 in the (|e>, |g>) basis.
inline Mat2 state(double x, double y, double z) {
  return {{{cplx(0.5 * (1 + z), 0), cplx(0.5 * x, -0.5 * y)},
           {cplx(0.5 * x, 0.5 * y), cplx(0.5 * (1 - z), 0)}}};
}

/// Amplitude damping through its Kraus operators
///   K0 = |e><e| g + |g><g|,  K1 = sqrt(1 - g^2) |g><e|,   |g| <= 1.
inline Mat2 kraus_damp(double g, const Mat2& r) {
  const double s2 = 1.0 - g * g;
  Mat2 out{};
  out[0][0] = g * g * r[0][0];
  out[0][1] = g * r[0][1];
  out[1][0] = g * r[1][0];
  out[1][1] = r[1][1] + s2 * r[0][0];
  return out;
}

/// Half the sum of |eigenvalues| of a Hermitian 2x2 matrix.
inline double trace_distance(const Mat2& a, const Mat2& b) {
  const double p = (a[0][0] - b[0][0]).real();
  const double q = (a[1][1] - b[1][1]).real();
  const cplx c = a[0][1] - b[0][1];
  const double mean = 0.5 * (p + q);
  const double rad = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(c));
  return 0.5 * (std::abs(mean + rad) + std::abs(mean - rad));
}

/// Bloch image under amplitude damping written out per component.
struct XZ {
  double x, z;
};
inline XZ damp_xz(double g, XZ v) { return {g * v.x, g * g * (1.0 + v.z) - 1.0}; }
inline double dist_xz(XZ a, XZ b) {
  const double dx = a.x - b.x, dz = a.z - b.z;
  return 0.5 * std::sqrt(dx * dx + dz * dz);
}

/// Largest eigenvalue magnitude sum of the Choi matrix: ||C(g)||_1.
inline double choi_trace_norm(double g) {
  // Block on {ee, gg}: [[g^2, g], [g, 1]] / 2 has eigenvalues (1 + g^2)/2 and 0;
  // the ge diagonal entry is (1 - g^2)/2.
  return 0.5 * (1.0 + g * g) + 0.5 * std::abs(1.0 - g * g);
}

/// Trace distance between two Choi states, from the 2x2 block
/// [[a, b], [b, 0]] on {ee, gg} and -a on ge.
inline double choi_distance(double g1, double g2) {
  const double a = 0.5 * (g1 * g1 - g2 * g2);
  const double b = 0.5 * (g1 - g2);
  return 0.5 * (std::abs(a) + std::sqrt(a * a + 4.0 * b * b));
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

/// P-I by scanning pairs of pure states on the xz great circle.
inline double p_indivisibility_pairs(double G_t, double G_tt, int n = 2000) {
  std::vector<XZ> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * kPi * i / n;
    const XZ v{std::sin(th), std::cos(th)};
    a[i] = damp_xz(G_t, v);
    b[i] = damp_xz(G_tt, v);
  }
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      best = std::max(best, dist_xz(b[i], b[j]) - dist_xz(a[i], a[j]));
    }
  }
  return best;
}

/// P-I from antipodal pure states along each direction in the xz plane.
inline double p_indivisibility_directions(double G_t, double G_tt, int n = 200001) {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double al = 0.5 * kPi * i / (n - 1);
    const double s = std::sin(al), c = std::cos(al);
    const double after = std::hypot(G_tt * s, G_tt * G_tt * c);
    const double before = std::hypot(G_t * s, G_t * G_t * c);
    best = std::max(best, after - before);
  }
  return best;
}

/// min over a dense member grid of max over a disk of states at time t.
inline double nm1(double G_t, double g, const std::vector<double>& g_free, int n_r = 41,
                  int n_theta = 721) {
  double best = 0.0;
  for (int i = 0; i < n_r; ++i) {
    const double r = static_cast<double>(i) / (n_r - 1);
    for (int j = 0; j < n_theta; ++j) {
      const double th = kPi * j / (n_theta - 1);
      const XZ v = damp_xz(G_t, {r * std::sin(th), r * std::cos(th)});
      const XZ target = damp_xz(g, v);
      double inner = 1e300;
      for (double gk : g_free) inner = std::min(inner, dist_xz(target, damp_xz(gk, v)));
      best = std::max(best, inner);
    }
  }
  return best;
}

inline double nm2(double g, const std::vector<double>& g_free) {
  double best = 1e300;
  for (double gk : g_free) best = std::min(best, choi_distance(g, gk));
  return best;
}

/// max over member pairs and pure-state pairs on the xz circle.
inline double diameter(const std::vector<double>& g_free, int n_theta = 360) {
  std::vector<XZ> circle(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    const double th = 2.0 * kPi * i / n_theta;
    circle[i] = {std::sin(th), std::cos(th)};
  }
  double best = 0.0;
  std::vector<XZ> a(n_theta), b(n_theta);
  for (double g1 : g_free) {
    for (int i = 0; i < n_theta; ++i) a[i] = damp_xz(g1, circle[i]);
    for (double g2 : g_free) {
      for (int i = 0; i < n_theta; ++i) b[i] = damp_xz(g2, circle[i]);
      for (const XZ& p : a) {
        for (const XZ& q : b) best = std::max(best, dist_xz(p, q));
      }
    }
  }
  return best;
}

}  // namespace oracle

#endif  // DIVLAB_TESTS_ORACLES_HPP
