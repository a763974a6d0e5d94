#ifndef DIVLAB_KERNELS_HPP
#define DIVLAB_KERNELS_HPP

#include <cmath>
#include <vector>

#include "divlab/qmat.hpp"

// Bloch-vector arithmetic for qubit amplitude damping. For qubit states the
// trace distance is half the Euclidean distance between Bloch vectors, and
// amplitude damping with amplitude G maps (x, y, z) to
// (G x, G y, G^2 (1 + z) - 1). The optimizer inner loops run on these; the
// matrix route in measures.hpp (namespace reference) is kept for testing.

namespace divlab::kernels {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 to_cartesian(const qmat::BlochVector& b) {
  const double s = std::sin(b.theta);
  return {b.r * s * std::cos(b.phi), b.r * s * std::sin(b.phi), b.r * std::cos(b.theta)};
}

inline Vec3 damp(double amplitude, const Vec3& v) {
  return {amplitude * v.x, amplitude * v.y, amplitude * amplitude * (1.0 + v.z) - 1.0};
}

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Structure-of-arrays batch of Bloch vectors.
struct VecBatch {
  std::vector<double> x, y, z;

  std::size_t size() const { return x.size(); }
  void push_back(const Vec3& v) {
    x.push_back(v.x);
    y.push_back(v.y);
    z.push_back(v.z);
  }
  Vec3 operator[](std::size_t i) const { return {x[i], y[i], z[i]}; }
};

/// Applies damp() to every element.
VecBatch damp_all(double amplitude, const VecBatch& in);

/// out[j - first] = distance(p, a[j]) for j in [first, last).
void distances_from(const Vec3& p, const VecBatch& a, std::size_t first, std::size_t last,
                    double* out);

}  // namespace divlab::kernels

#endif  // DIVLAB_KERNELS_HPP
