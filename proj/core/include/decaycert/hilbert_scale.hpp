#pragma once

#include <span>

#include "decaycert/error.hpp"
#include "decaycert/types.hpp"

namespace decaycert {

/// Fractional powers of the stiffness matrix A, built once from its
/// Hermitian eigendecomposition A = V diag(lambda) V*.
class HilbertScaleCache {
 public:
  explicit HilbertScaleCache(const Matrix& a);

  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

  const Matrix& sqrt() const { return sqrt_; }
  const Matrix& inv_sqrt() const { return inv_sqrt_; }
  const Matrix& inverse() const { return inverse_; }

  /// A^{s/2} for s in {-2,-1,0,1,2}.
  const Matrix& power(int s) const;

 private:
  RealVector eigenvalues_;
  Matrix eigenvectors_;
  Matrix a_;
  Matrix sqrt_;
  Matrix inv_sqrt_;
  Matrix inverse_;
  Matrix identity_;
};

/// A validated pair (A, D) for u'' + D u' + A u = 0. A is Hermitian positive
/// definite and Herm(D) = (D + D*)/2 is positive semidefinite. Instances are
/// immutable; obtain one through validate_system().
class SystemPair {
 public:
  Index dimension() const { return static_cast<Index>(a_.rows()); }
  const Matrix& a() const { return a_; }
  const Matrix& d() const { return d_; }
  const HilbertScaleCache& scale() const { return scale_; }

  /// (D + D*)/2
  Matrix herm_d() const { return (d_ + d_.adjoint()) / 2.0; }
  /// (D - D*)/(2i)
  Matrix skew_d() const { return (d_ - d_.adjoint()) / Complex(0.0, 2.0); }

  double lambda_min_a() const { return lambda_min_a_; }
  double lambda_min_herm_d() const { return lambda_min_herm_d_; }

  friend SystemPair validate_system(const Matrix& a, const Matrix& d);

 private:
  SystemPair(Matrix a, Matrix d, double lambda_min_herm_d);

  Matrix a_;
  Matrix d_;
  HilbertScaleCache scale_;
  double lambda_min_a_;
  double lambda_min_herm_d_;
};

/// Velocity/position pair w = (u', u) of the first-order system.
struct StateVector {
  Vector w1;
  Vector w2;

  Vector stacked() const;
  static StateVector from_stacked(const Vector& w);
};

inline constexpr double kHermitianTolerance = 1e-12;

/// Checks hermiticity (relative Frobenius tolerance 1e-12), positive
/// definiteness of A and accretivity of D; A is symmetrized before use.
SystemPair validate_system(const Matrix& a, const Matrix& d);

/// ||A^{s/2} x|| for s in {-2,-1,0,1,2}.
double norm_s(const SystemPair& sys, const Vector& x, int s);

/// sqrt(||w1||^2 + ||w2||_1^2), the norm of the energy space H x H_1.
double energy_norm(const SystemPair& sys, const StateVector& w);

}  // namespace decaycert
