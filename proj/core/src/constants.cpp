#include "decaycert/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "decaycert/random.hpp"

namespace decaycert {
namespace {

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "Hermitian eigensolver failed");
  }
  return es.eigenvalues()(0);
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

// sup |<Kx,x>| / <Sx,x> over x with <Sx,x> > 0, for Hermitian S >= 0 and K.
// Reduces to the largest |eigenvalue| of S^{-1/2} K S^{-1/2} on range(S);
// infinite if K couples to ker(S).
double sector_constant(const Matrix& s, const Matrix& k, bool& defined) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "Hermitian eigensolver failed on Herm(D)");
  }
  const RealVector& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  const double k_norm = spectral_norm(k);
  const double tol = 1e-12 * std::max(vals.cwiseAbs().maxCoeff(), k_norm);

  std::vector<Index> range, kernel;
  for (Index i = 0; i < vals.size(); ++i) (vals(i) > tol ? range : kernel).push_back(i);

  defined = true;
  if (!kernel.empty()) {
    Matrix kernel_basis(s.rows(), static_cast<Index>(kernel.size()));
    for (std::size_t c = 0; c < kernel.size(); ++c) kernel_basis.col(c) = vecs.col(kernel[c]);
    if (spectral_norm(k * kernel_basis) > 1e-10 * std::max(k_norm, 1e-300)) {
      defined = false;
      return std::numeric_limits<double>::infinity();
    }
  }
  if (range.empty()) return 0.0;

  Matrix scaled_basis(s.rows(), static_cast<Index>(range.size()));
  for (std::size_t c = 0; c < range.size(); ++c) {
    scaled_basis.col(c) = vecs.col(range[c]) / std::sqrt(vals(range[c]));
  }
  const Matrix reduced = hermitian_part(scaled_basis.adjoint() * k * scaled_basis);
  Eigen::SelfAdjointEigenSolver<Matrix> er(reduced, Eigen::EigenvaluesOnly);
  return er.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

ConstantSet compute_constants(const SystemPair& sys) {
  const auto& scale = sys.scale();
  const Matrix s = sys.herm_d();

  ConstantSet c;
  c.a0 = sys.lambda_min_a();
  c.beta = std::max(0.0, min_eigenvalue(s));
  c.alpha = std::max(0.0, min_eigenvalue(hermitian_part(scale.sqrt() * s * scale.sqrt())));
  // Herm(D) x = lambda A x, by congruence with A^{-1/2}.
  c.delta = std::max(0.0, min_eigenvalue(hermitian_part(scale.inv_sqrt() * s * scale.inv_sqrt())));
  c.normD = spectral_norm(scale.inv_sqrt() * sys.d() * scale.inv_sqrt());
  c.nu = sector_constant(s, sys.skew_d(), c.sector_defined);
  return c;
}

double ConstantAudit::worst() const { return std::min({a0, alpha, beta, delta, nu, normD}); }

bool ConstantAudit::passed(const ConstantSet& claimed, double tol) const {
  auto ok = [tol](double margin, double value) {
    return margin >= -tol * std::max(1.0, std::abs(value));
  };
  return ok(a0, claimed.a0) && ok(alpha, claimed.alpha) && ok(beta, claimed.beta) &&
         ok(delta, claimed.delta) && (!std::isfinite(claimed.nu) || ok(nu, claimed.nu)) &&
         ok(normD, claimed.normD);
}

ConstantAudit sample_check_constants(const SystemPair& sys, const ConstantSet& consts,
                                     std::size_t samples, std::uint64_t seed) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  ConstantAudit audit{inf, inf, inf, inf, inf, inf, samples, seed};
  Rng rng(seed);
  const auto& scale = sys.scale();

  for (std::size_t k = 0; k < samples; ++k) {
    const Vector x = rng.complex_normal_vector(sys.dimension());
    const double norm0 = x.squaredNorm();
    const double norm_m1 = (scale.inv_sqrt() * x).squaredNorm();
    const double norm_p1 = (scale.sqrt() * x).squaredNorm();
    if (norm0 == 0.0) continue;

    const Complex dxx = x.dot(sys.d() * x);  // x* D x
    const double re = dxx.real();
    const double im = dxx.imag();

    audit.a0 = std::min(audit.a0, x.dot(sys.a() * x).real() / norm0 - consts.a0);
    audit.alpha = std::min(audit.alpha, re / norm_m1 - consts.alpha);
    audit.beta = std::min(audit.beta, re / norm0 - consts.beta);
    audit.delta = std::min(audit.delta, re / norm_p1 - consts.delta);
    if (std::isfinite(consts.nu) && re > 0.0) {
      audit.nu = std::min(audit.nu, consts.nu - std::abs(im) / re);
    }
    const double ratio = (scale.inv_sqrt() * (sys.d() * x)).norm() / std::sqrt(norm_p1);
    audit.normD = std::min(audit.normD, consts.normD - ratio);
  }
  if (!std::isfinite(audit.nu)) audit.nu = 0.0;
  return audit;
}

}  // namespace decaycert
