#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "decaycert/constants.hpp"
#include "decaycert/hilbert_scale.hpp"
#include "decaycert/rate_bounds.hpp"

namespace decaycert {

/// First-order form of u'' + D u' + A u = 0 acting on w = (u', u):
///   T = [[-D, -A], [I, 0]]
struct Linearization {
  Matrix block;
};

Linearization build_linearization(const SystemPair& sys);

/// Full spectrum of the linearization, sorted by real part descending and
/// then imaginary part ascending. Throws EigensolverFailure.
std::vector<Complex> eigenvalues(const Linearization& lin);

/// sigma_min(lambda^2 I + lambda D + A).
double pencil_residual(const SystemPair& sys, Complex lambda);

/// Linearization lambda Q - T of the pencil in the theta inner product:
///   Q = [[I + th A^-1, th A^-1 D], [th D* A^-1, A + th I + th D* A^-1 D]]
///   T = [[-D, -A - th I], [A + th I, -th D*]]
/// Q is the Gram matrix of the theta inner product and T = Q * block.
struct QTPair {
  Matrix Q;
  Matrix T;
  double identity_residual = 0.0;   // ||T - Q block||_F / ||T||_F
  double hermitian_residual = 0.0;  // ||Q - Q*||_F / ||Q||_F
};

QTPair build_QT(const SystemPair& sys, double theta);

enum class RegionKind { Proposition, Theorem, RemarkSector, RemarkQuotient };
const char* to_string(RegionKind kind) noexcept;

struct LabeledRegion {
  std::string label;
  RegionKind kind = RegionKind::Theorem;
  double theta = 0.0;  // 0 when the region is not tied to a single theta
  SectorRegion region;
};

struct EigenvalueReport {
  Complex lambda;
  double residual = 0.0;
  double residual_bound = 0.0;  // tol (|lambda|^2 + |lambda| ||D||_2 + ||A||_2)
};

struct RegionReport {
  LabeledRegion region;
  std::size_t violations = 0;
  double worst_margin_re = 0.0;  // smallest margin over the spectrum
  double worst_margin_im = 0.0;
  std::vector<std::size_t> violating;  // indices into eigenvalues
};

struct SpectrumReport {
  std::vector<EigenvalueReport> eigenvalues;
  std::vector<RegionReport> regions;
  double spectral_abscissa = 0.0;
  std::size_t residual_failures = 0;
  bool inclusion_checked = false;
  std::optional<std::string> note;

  /// No violations in any region, the remark enclosures included.
  bool all_inside() const;
  /// No violations in the Proposition and Theorem regions.
  bool certified_inside() const;
  bool passed() const { return residual_failures == 0 && certified_inside(); }
};

struct InclusionTolerances {
  double inclusion = 1e-8;  // margin >= -inclusion (1 + |lambda|)
  double residual = 1e-8;
};

/// Sector regions for the Proposition (one per theta in `thetas`, each with
/// every b <= sqrt(theta) of the certificate's table) and the Theorem (one
/// per M_b entry).
std::vector<LabeledRegion> standard_regions(const RateCertificate& cert,
                                            const std::vector<double>& thetas);

/// Checks every eigenvalue against every region plus both remark regions,
/// and records pencil residuals. When `consts.delta <= 0` the sector and
/// remark checks are skipped and `note` records why.
SpectrumReport verify_inclusion(const SystemPair& sys, const std::vector<Complex>& eigs,
                                const std::vector<LabeledRegion>& regions, const ConstantSet& consts,
                                const InclusionTolerances& tol = {});

}  // namespace decaycert
