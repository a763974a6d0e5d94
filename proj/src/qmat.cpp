#include "divlab/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace divlab::qmat {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw DimensionError("matrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing the (p,q) entry of Hermitian `a`,
// accumulated into `v`.
void rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = apq / mag;  // e^{i alpha}

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // U = diag-phase(q) * real rotation.
  const cplx upp = c;
  const cplx upq = s;
  const cplx uqp = -s * std::conj(phase);
  const cplx uqq = c * std::conj(phase);

  const int n = a.dim();
  for (int k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (int k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (int k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<cplx> row_major) : dim_(dim) {
  check_dim(dim);
  if (static_cast<int>(row_major.size()) != dim * dim) {
    throw DimensionError("expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(row_major.size()));
  }
  int idx = 0;
  for (const cplx& x : row_major) {
    (*this)(idx / dim, idx % dim) = x;
    ++idx;
  }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  }
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx s = 0.0;
  for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  check_same_dim(*this, other);
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - other(i, j)));
  }
  return worst;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) s += std::norm((*this)(i, j));
  }
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  check_same_dim(*this, rhs);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) (*this)(i, j) += rhs(i, j);
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  check_same_dim(*this, rhs);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) (*this)(i, j) -= rhs(i, j);
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) (*this)(i, j) *= scale;
  }
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  check_same_dim(lhs, rhs);
  const int n = lhs.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const cplx x = lhs(i, k);
      for (int j = 0; j < n; ++j) out(i, j) += x * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& sys, const ComplexMatrix& anc) {
  if (sys.dim() != 2 || anc.dim() != 2) throw DimensionError("kron expects two 2x2 factors");
  ComplexMatrix out(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = sys(i, j) * anc(k, l);
      }
    }
  }
  return out;
}

EigenSystem hermitian_eig(const ComplexMatrix& input) {
  const double asym = input.max_asymmetry();
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |A - A^dagger| = " << asym;
    throw ValidationError(msg.str());
  }

  const int n = input.dim();
  // Symmetrize so the rotations act on an exactly Hermitian matrix.
  ComplexMatrix a = input + input.adjoint();
  a *= 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);

  // Off-diagonal Frobenius threshold, relative to the matrix scale.
  const double threshold = 1e-14 * std::max(1.0, a.frobenius_norm());
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) >= threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
  }

  std::array<int, ComplexMatrix::kMaxDim> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](int x, int y) { return a(x, x).real() > a(y, y).real(); });

  EigenSystem es;
  es.dim = n;
  es.vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (int row = 0; row < n; ++row) es.vectors(row, k) = v(row, order[k]);
  }
  return es;
}

double trace_norm(const ComplexMatrix& a) {
  const EigenSystem es = hermitian_eig(a);
  double s = 0.0;
  for (int k = 0; k < es.dim; ++k) s += std::abs(es.values[k]);
  return s;
}

DensityMatrix DensityMatrix::from(const ComplexMatrix& m) {
  const double asym = m.max_asymmetry();
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian: max |A - A^dagger| = " << asym;
    throw ValidationError(msg.str());
  }
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag()
        << "i, expected 1";
    throw ValidationError(msg.str());
  }
  const EigenSystem es = hermitian_eig(m);
  const double min_eig = es.values[es.dim - 1];
  if (min_eig < -kPsdTol) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite: minimum eigenvalue " << min_eig;
    throw ValidationError(msg.str());
  }
  return DensityMatrix(m);
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    throw DimensionError("trace_distance: dimension mismatch " + std::to_string(rho1.dim()) +
                         " vs " + std::to_string(rho2.dim()));
  }
  return 0.5 * trace_norm(rho1.matrix() - rho2.matrix());
}

DensityMatrix bloch_to_state(const BlochVector& b) {
  constexpr double pi = std::numbers::pi;
  if (!(b.r >= 0.0 && b.r <= 1.0) || !(b.theta >= 0.0 && b.theta <= pi) ||
      !(b.phi >= 0.0 && b.phi < 2.0 * pi)) {
    std::ostringstream msg;
    msg << "Bloch coordinates out of range: r=" << b.r << " theta=" << b.theta << " phi=" << b.phi;
    throw ValidationError(msg.str());
  }
  const double x = b.r * std::sin(b.theta) * std::cos(b.phi);
  const double y = b.r * std::sin(b.theta) * std::sin(b.phi);
  const double z = b.r * std::cos(b.theta);
  return DensityMatrix::from(ComplexMatrix(2, {0.5 * (1.0 + z), cplx(0.5 * x, -0.5 * y),
                                               cplx(0.5 * x, 0.5 * y), 0.5 * (1.0 - z)}));
}

BlochVector canonical_bloch(double r, double theta, double phi) {
  constexpr double pi = std::numbers::pi;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > pi) {
    // Reflection through the pole: same point with the opposite azimuth.
    theta = two_pi - theta;
    phi += pi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return {std::clamp(r, 0.0, 1.0), theta, phi};
}

DensityMatrix excited_state() { return DensityMatrix::from(ComplexMatrix(2, {1.0, 0.0, 0.0, 0.0})); }

DensityMatrix ground_state() { return DensityMatrix::from(ComplexMatrix(2, {0.0, 0.0, 0.0, 1.0})); }

DensityMatrix plus_state() { return DensityMatrix::from(ComplexMatrix(2, {0.5, 0.5, 0.5, 0.5})); }

}  // namespace divlab::qmat
