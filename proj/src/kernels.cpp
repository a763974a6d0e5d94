#include "divlab/kernels.hpp"

namespace divlab::kernels {

VecBatch damp_all(double amplitude, const VecBatch& in) {
  VecBatch out;
  const std::size_t n = in.size();
  out.x.resize(n);
  out.y.resize(n);
  out.z.resize(n);
  const double a2 = amplitude * amplitude;
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = amplitude * in.x[i];
    out.y[i] = amplitude * in.y[i];
    out.z[i] = a2 * (1.0 + in.z[i]) - 1.0;
  }
  return out;
}

void distances_from(const Vec3& p, const VecBatch& a, std::size_t first, std::size_t last,
                    double* out) {
  const double* ax = a.x.data();
  const double* ay = a.y.data();
  const double* az = a.z.data();
  for (std::size_t j = first; j < last; ++j) {
    const double dx = p.x - ax[j];
    const double dy = p.y - ay[j];
    const double dz = p.z - az[j];
    out[j - first] = 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
  }
}

}  // namespace divlab::kernels
