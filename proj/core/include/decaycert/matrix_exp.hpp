#pragma once

#include "decaycert/types.hpp"

namespace decaycert {

/// exp(M) by scaling and squaring with a [m/m] Pade approximant,
/// m in {3, 5, 7, 9, 13}, chosen from the 1-norm of M.
Matrix expm_pade(const Matrix& m);

/// Evaluates exp(t M) for many t. When M is diagonalizable with an
/// eigenvector matrix of 2-norm condition number below `max_condition`,
/// exp(t M) = V exp(t Lambda) V^{-1}; otherwise every call falls back to
/// expm_pade(t M). Defective generators (critical damping) take the latter
/// route.
class MatrixExponential {
 public:
  enum class Method { Diagonalization, Pade };

  explicit MatrixExponential(Matrix generator, double max_condition = 1e6);

  Matrix at(double t) const;
  Method method() const { return method_; }
  double condition() const { return condition_; }

 private:
  Matrix generator_;
  Method method_ = Method::Pade;
  double condition_ = 0.0;
  Vector eigenvalues_;
  Matrix vectors_;
  Matrix vectors_inv_;
};

}  // namespace decaycert
