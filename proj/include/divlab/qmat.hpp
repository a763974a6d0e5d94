#ifndef DIVLAB_QMAT_HPP
#define DIVLAB_QMAT_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

// Small dense complex matrices (qubit and qubit+ancilla) and the state
// algebra built on them.
//
// Basis convention used throughout the library:
//   |e> = (1,0)^T  excited,  |g> = (0,1)^T  ground.
//   Two-qubit ordering |ee>, |eg>, |ge>, |gg>, system first, ancilla second.

namespace divlab::qmat {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-capacity square matrix of dimension 2 or 4, stored row-major.
class ComplexMatrix {
 public:
  static constexpr int kMaxDim = 4;

  explicit ComplexMatrix(int dim = 2);
  ComplexMatrix(int dim, std::initializer_list<cplx> row_major);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  int dim() const { return dim_; }

  cplx& operator()(int row, int col) { return a_[row * kMaxDim + col]; }
  const cplx& operator()(int row, int col) const { return a_[row * kMaxDim + col]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  /// max |A - A^dagger| over all entries.
  double max_asymmetry() const;
  /// max |A_ij - B_ij|; dims must agree.
  double max_abs_diff(const ComplexMatrix& other) const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, cplx scale) { return lhs *= scale; }
  friend ComplexMatrix operator*(cplx scale, ComplexMatrix rhs) { return rhs *= scale; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  int dim_;
  std::array<cplx, kMaxDim * kMaxDim> a_{};
};

/// Kronecker product of two 2x2 matrices, first factor is the system.
ComplexMatrix kron(const ComplexMatrix& sys, const ComplexMatrix& anc);

struct EigenSystem {
  int dim = 0;
  std::array<double, ComplexMatrix::kMaxDim> values{};  // descending
  ComplexMatrix vectors{2};                             // column k pairs with values[k]
};

/// Cyclic complex Jacobi. Throws ValidationError if `a` is not Hermitian
/// within kHermitianTol; the message carries the measured asymmetry.
EigenSystem hermitian_eig(const ComplexMatrix& a);

/// Sum of |eigenvalue| of a Hermitian matrix.
double trace_norm(const ComplexMatrix& a);

/// A validated quantum state: Hermitian, unit trace, positive semidefinite
/// (minimum eigenvalue >= -kPsdTol).
class DensityMatrix {
 public:
  /// Validates and throws ValidationError on any broken invariant.
  static DensityMatrix from(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }
  cplx operator()(int r, int c) const { return m_(r, c); }

 private:
  explicit DensityMatrix(const ComplexMatrix& m) : m_(m) {}
  ComplexMatrix m_;
};

/// Half the trace norm of the difference.
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// rho = (1 + r n.sigma) / 2 with n = (sin th cos ph, sin th sin ph, cos th).
struct BlochVector {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Throws ValidationError when r, theta or phi fall outside
/// [0,1] x [0,pi] x [0,2pi).
DensityMatrix bloch_to_state(const BlochVector& b);

/// Maps an arbitrary coordinate triple onto the canonical ranges by
/// reflecting theta through the poles, wrapping phi and clamping r.
BlochVector canonical_bloch(double r, double theta, double phi);

/// Common states.
DensityMatrix excited_state();
DensityMatrix ground_state();
DensityMatrix plus_state();

}  // namespace divlab::qmat

#endif  // DIVLAB_QMAT_HPP
