#pragma once

#include <cstdint>

#include "decaycert/hilbert_scale.hpp"

namespace decaycert {

/// Scalar constants of a damped system, all infima/suprema over x != 0:
///
///   a0    = inf <Ax,x>/||x||^2
///   alpha = inf Re<Dx,x>/||x||_{-1}^2
///   beta  = inf Re<Dx,x>/||x||^2
///   delta = inf Re<Dx,x>/||x||_1^2
///   nu    = sup |Im<Dx,x>| / Re<Dx,x>        (sector constant)
///   normD = sup ||Dx||_{-1} / ||x||_1
///
/// `nu` is +infinity when the sector is undefined (Herm(D) singular and the
/// skew part not vanishing on its kernel); `sector_defined` records that.
struct ConstantSet {
  double a0 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double nu = 0.0;
  double normD = 0.0;
  bool sector_defined = true;
};

ConstantSet compute_constants(const SystemPair& sys);

/// Worst observed (sampled quotient - claimed infimum) per constant; for the
/// suprema nu and normD the sign is flipped so that a valid bound is >= 0.
struct ConstantAudit {
  double a0 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double nu = 0.0;
  double normD = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  double worst() const;
  /// Every margin >= -tol * max(1, |claimed value|).
  bool passed(const ConstantSet& claimed, double tol = 1e-9) const;
};

ConstantAudit sample_check_constants(const SystemPair& sys, const ConstantSet& consts,
                                     std::size_t samples, std::uint64_t seed);

}  // namespace decaycert
