#include "decaycert/hilbert_scale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace decaycert {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonHermitian: return "non_hermitian";
    case ErrorKind::NotPositiveDefinite: return "not_positive_definite";
    case ErrorKind::NotAccretive: return "not_accretive";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::UnsupportedScale: return "unsupported_scale";
    case ErrorKind::NonPositiveDelta: return "non_positive_delta";
    case ErrorKind::InvalidIntercept: return "invalid_intercept";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::EigensolverFailure: return "eigensolver_failure";
    case ErrorKind::EnvelopeViolation: return "envelope_violation";
    case ErrorKind::FileNotFound: return "file_not_found";
    case ErrorKind::ParseError: return "parse_error";
  }
  return "unknown";
}

namespace {

Matrix spectral_function(const Matrix& vecs, const RealVector& vals, double exponent) {
  RealVector f(vals.size());
  for (Index i = 0; i < vals.size(); ++i) f(i) = std::pow(vals(i), exponent);
  return vecs * f.cast<Complex>().asDiagonal() * vecs.adjoint();
}

}  // namespace

HilbertScaleCache::HilbertScaleCache(const Matrix& a) : a_(a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "Hermitian eigensolver failed on A");
  }
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  sqrt_ = spectral_function(eigenvectors_, eigenvalues_, 0.5);
  inv_sqrt_ = spectral_function(eigenvectors_, eigenvalues_, -0.5);
  inverse_ = spectral_function(eigenvectors_, eigenvalues_, -1.0);
  identity_ = Matrix::Identity(a.rows(), a.cols());
}

const Matrix& HilbertScaleCache::power(int s) const {
  switch (s) {
    case -2: return inverse_;
    case -1: return inv_sqrt_;
    case 0: return identity_;
    case 1: return sqrt_;
    case 2: return a_;
    default:
      throw Error(ErrorKind::UnsupportedScale,
                  "unsupported scale index " + std::to_string(s) + " (expected -2..2)");
  }
}

SystemPair::SystemPair(Matrix a, Matrix d, double lambda_min_herm_d)
    : a_(std::move(a)),
      d_(std::move(d)),
      scale_(a_),
      lambda_min_a_(scale_.eigenvalues()(0)),
      lambda_min_herm_d_(lambda_min_herm_d) {}

Vector StateVector::stacked() const {
  Vector w(w1.size() + w2.size());
  w << w1, w2;
  return w;
}

StateVector StateVector::from_stacked(const Vector& w) {
  if (w.size() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "stacked state vector has odd length");
  }
  const Index n = w.size() / 2;
  return StateVector{w.head(n), w.tail(n)};
}

SystemPair validate_system(const Matrix& a, const Matrix& d) {
  if (a.rows() != a.cols() || d.rows() != d.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "A and D must be square");
  }
  if (a.rows() != d.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " but D is " +
                    std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
  }
  if (a.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, "system dimension must be at least 1");
  }
  if (!a.allFinite() || !d.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "A and D must have finite entries");
  }

  const double asym = (a - a.adjoint()).norm();
  if (asym > kHermitianTolerance * std::max(1.0, a.norm())) {
    throw Error(ErrorKind::NonHermitian,
                "A is not Hermitian: ||A - A*||_F = " + std::to_string(asym));
  }
  Matrix a_sym = (a + a.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es_a(a_sym, Eigen::EigenvaluesOnly);
  if (es_a.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "Hermitian eigensolver failed on A");
  }
  if (!(es_a.eigenvalues()(0) > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite,
                "A is not positive definite: lambda_min(A) = " + std::to_string(es_a.eigenvalues()(0)));
  }

  const Matrix herm_d = (d + d.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es_d(herm_d, Eigen::EigenvaluesOnly);
  if (es_d.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "Hermitian eigensolver failed on Herm(D)");
  }
  const double lmin_d = es_d.eigenvalues()(0);
  const double scale_d = es_d.eigenvalues().cwiseAbs().maxCoeff();
  if (lmin_d < -kHermitianTolerance * std::max(1.0, scale_d)) {
    throw Error(ErrorKind::NotAccretive,
                "D is not accretive: lambda_min(Herm(D)) = " + std::to_string(lmin_d));
  }

  return SystemPair(std::move(a_sym), d, lmin_d);
}

double norm_s(const SystemPair& sys, const Vector& x, int s) {
  if (x.size() != sys.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match system dimension");
  }
  return (sys.scale().power(s) * x).norm();
}

double energy_norm(const SystemPair& sys, const StateVector& w) {
  if (w.w1.size() != sys.dimension() || w.w2.size() != sys.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "state vector components do not match system dimension");
  }
  const double v = w.w1.norm();
  const double p = norm_s(sys, w.w2, 1);
  return std::sqrt(v * v + p * p);
}

}  // namespace decaycert
