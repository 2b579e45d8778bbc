#pragma once

// Dense complex operator kernel for small dimensions (D <= 8): validated
// matrix types, Jacobi eigensolvers, Schatten norms, matrix exponential and
// the principal logarithm on the unitary group.

#include <complex>
#include <initializer_list>
#include <vector>

#include "mixsynth/error.hpp"

namespace mixsynth {

using cplx = std::complex<double>;

namespace tol {
// Construction-time validation defaults, ~100x machine epsilon per dimension.
inline constexpr double unitary = 1e-12;
inline constexpr double hermitian = 1e-12;
inline constexpr double reconstruction = 1e-10;
inline constexpr double branch_cut = 1e-12;
}  // namespace tol

// Square complex matrix, row-major, entries validated finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
    if (dim <= 0) raise(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  }
  ComplexMatrix(int dim, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const std::vector<cplx>& data() const { return a_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

// Unitary wrapper: ||M'M - 1|| <= tol checked at construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix m, double tolerance = tol::unitary);
  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  ComplexMatrix m_;
};

// Hermitian wrapper: ||M - M'|| <= tol checked at construction; the stored
// matrix is the exact symmetrization (M + M')/2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m, double tolerance = tol::hermitian);
  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  ComplexMatrix m_;
};

struct HermitianEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns; A = Q diag(values) Q'
};

struct UnitaryEig {
  std::vector<cplx> values;  // unit modulus, sorted by phase ascending
  ComplexMatrix vectors;
};

// Largest singular value. Exact (to ~1e-15 relative) via Hermitian
// eigenvalues when the input is normal enough to allow it.
double operator_norm(const ComplexMatrix& m);

// Schatten-1 norm: sum of singular values.
double trace_norm(const ComplexMatrix& m);

// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

// Cyclic complex Jacobi. The input is symmetrized before iterating.
HermitianEig eig_hermitian(const ComplexMatrix& m);

// Spectral decomposition of a unitary by simultaneous Jacobi diagonalization
// of the commuting pair (U+U')/2 and (U-U')/(2i). Throws ConvergenceFailure
// if the sweep cap is exceeded or the reconstruction residual is above
// tol::reconstruction.
UnitaryEig eig_unitary(const UnitaryMatrix& u);

// e^{iH} via eigendecomposition.
UnitaryMatrix expi(const HermitianMatrix& h);

// The Hermitian H with U = V e^{iH} and all eigenvalues of H in [-pi, pi).
// Throws BranchAmbiguity when an eigenphase of V'U lies within
// tol::branch_cut of the -pi branch cut.
HermitianMatrix principal_log_relative(const UnitaryMatrix& v, const UnitaryMatrix& u);

// Global-phase helpers. All comparisons of synthesized unitaries minimize
// over global phase; the channel-level quantities are phase-blind.
//
// min over phi of ||e^{i phi} u - v||.
double phase_minimized_distance(const UnitaryMatrix& u, const UnitaryMatrix& v);
// e^{i phi*} u for the minimizing phi*.
UnitaryMatrix phase_align(const UnitaryMatrix& u, const UnitaryMatrix& v);
// Scales m so its largest-modulus entry (first in row-major order among
// entries within 1e-6 of the maximum) is real positive.
ComplexMatrix phase_canonicalize(const ComplexMatrix& m);

// Single-qubit constants.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace mixsynth
