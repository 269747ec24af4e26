#include "decaycert/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace decaycert {
namespace {

double spectral_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

std::string format_label(const char* prefix, double theta, double b) {
  std::ostringstream ss;
  ss.precision(6);
  ss << prefix;
  if (theta > 0.0) ss << " theta=" << theta;
  ss << " b=" << b;
  return ss.str();
}

}  // namespace

Linearization build_linearization(const SystemPair& sys) {
  const Index n = sys.dimension();
  Matrix t = Matrix::Zero(2 * n, 2 * n);
  t.topLeftCorner(n, n) = -sys.d();
  t.topRightCorner(n, n) = -sys.a();
  t.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return Linearization{std::move(t)};
}

std::vector<Complex> eigenvalues(const Linearization& lin) {
  Eigen::ComplexEigenSolver<Matrix> es(lin.block, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "complex Schur iteration did not converge");
  }
  std::vector<Complex> eigs(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(eigs.begin(), eigs.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() < y.imag();
  });
  return eigs;
}

double pencil_residual(const SystemPair& sys, Complex lambda) {
  const Index n = sys.dimension();
  const Matrix l = lambda * lambda * Matrix::Identity(n, n) + lambda * sys.d() + sys.a();
  Eigen::JacobiSVD<Matrix> svd(l);
  return svd.singularValues()(n - 1);
}

QTPair build_QT(const SystemPair& sys, double theta) {
  const Index n = sys.dimension();
  const Matrix& a = sys.a();
  const Matrix& d = sys.d();
  const Matrix& a_inv = sys.scale().inverse();
  const Matrix id = Matrix::Identity(n, n);

  QTPair qt;
  qt.Q.resize(2 * n, 2 * n);
  qt.Q.topLeftCorner(n, n) = id + theta * a_inv;
  qt.Q.topRightCorner(n, n) = theta * a_inv * d;
  qt.Q.bottomLeftCorner(n, n) = theta * d.adjoint() * a_inv;
  qt.Q.bottomRightCorner(n, n) = a + theta * id + theta * d.adjoint() * a_inv * d;

  qt.T.resize(2 * n, 2 * n);
  qt.T.topLeftCorner(n, n) = -d;
  qt.T.topRightCorner(n, n) = -a - theta * id;
  qt.T.bottomLeftCorner(n, n) = a + theta * id;
  qt.T.bottomRightCorner(n, n) = -theta * d.adjoint();

  const Matrix block = build_linearization(sys).block;
  qt.identity_residual = (qt.T - qt.Q * block).norm() / qt.T.norm();
  qt.hermitian_residual = (qt.Q - qt.Q.adjoint()).norm() / qt.Q.norm();
  return qt;
}

const char* to_string(RegionKind kind) noexcept {
  switch (kind) {
    case RegionKind::Proposition: return "proposition";
    case RegionKind::Theorem: return "theorem";
    case RegionKind::RemarkSector: return "remark_sector";
    case RegionKind::RemarkQuotient: return "remark_quotient";
  }
  return "unknown";
}

bool SpectrumReport::all_inside() const {
  return std::all_of(regions.begin(), regions.end(),
                     [](const RegionReport& r) { return r.violations == 0; });
}

bool SpectrumReport::certified_inside() const {
  return std::all_of(regions.begin(), regions.end(), [](const RegionReport& r) {
    const bool remark = r.region.kind == RegionKind::RemarkSector || r.region.kind == RegionKind::RemarkQuotient;
    return remark || r.violations == 0;
  });
}

std::vector<LabeledRegion> standard_regions(const RateCertificate& cert,
                                            const std::vector<double>& thetas) {
  std::vector<LabeledRegion> out;
  for (double theta : thetas) {
    const double w = omega_theta(theta, cert.consts);
    for (const MbEntry& e : cert.Mb_table) {
      if (e.b > std::sqrt(theta)) continue;
      out.push_back({format_label("proposition", theta, e.b), RegionKind::Proposition, theta,
                     SectorRegion{w, M_theta_b(theta, e.b, cert.consts), e.b}});
    }
  }
  for (const MbEntry& e : cert.Mb_table) {
    out.push_back({format_label("theorem", 0.0, e.b), RegionKind::Theorem, 0.0,
                   SectorRegion{cert.omega, e.M, e.b}});
  }
  return out;
}

SpectrumReport verify_inclusion(const SystemPair& sys, const std::vector<Complex>& eigs,
                                const std::vector<LabeledRegion>& regions, const ConstantSet& consts,
                                const InclusionTolerances& tol) {
  SpectrumReport report;
  const double norm_a = spectral_norm(sys.a());
  const double norm_d = spectral_norm(sys.d());

  report.spectral_abscissa = -std::numeric_limits<double>::infinity();
  for (Complex lambda : eigs) {
    EigenvalueReport e;
    e.lambda = lambda;
    e.residual = pencil_residual(sys, lambda);
    const double mag = std::abs(lambda);
    e.residual_bound = tol.residual * (mag * mag + mag * norm_d + norm_a);
    if (!(e.residual <= e.residual_bound)) ++report.residual_failures;
    report.spectral_abscissa = std::max(report.spectral_abscissa, lambda.real());
    report.eigenvalues.push_back(e);
  }

  if (!(consts.delta > 0.0)) {
    report.note = "certificate refused: delta <= 0; inclusion checks skipped (NonPositiveDelta)";
    return report;
  }
  report.inclusion_checked = true;

  auto slack = [&](Complex lambda) { return -tol.inclusion * (1.0 + std::abs(lambda)); };
  constexpr double inf = std::numeric_limits<double>::infinity();

  for (const LabeledRegion& lr : regions) {
    RegionReport rr{lr, 0, inf, inf, {}};
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      const RegionMembership m = region_contains(eigs[i], lr.region);
      rr.worst_margin_re = std::min(rr.worst_margin_re, m.margin_re);
      rr.worst_margin_im = std::min(rr.worst_margin_im, m.margin_im);
      if (m.margin_re < slack(eigs[i]) || m.margin_im < slack(eigs[i])) {
        ++rr.violations;
        rr.violating.push_back(i);
      }
    }
    report.regions.push_back(std::move(rr));
  }

  RegionReport sector{{"remark sector", RegionKind::RemarkSector, 0.0, {}}, 0, inf, inf, {}};
  RegionReport quotient{{"remark quotient", RegionKind::RemarkQuotient, 0.0, {}}, 0, inf, inf, {}};
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const RemarkMembership m = remark_regions_contain(eigs[i], consts);
    sector.worst_margin_re = std::min(sector.worst_margin_re, m.margin_first_re);
    sector.worst_margin_im = std::min(sector.worst_margin_im, m.margin_first_im);
    if (m.margin_first_re < slack(eigs[i]) || m.margin_first_im < slack(eigs[i])) {
      ++sector.violations;
      sector.violating.push_back(i);
    }
    quotient.worst_margin_re = std::min(quotient.worst_margin_re, m.margin_second);
    if (eigs[i] == Complex(0.0, 0.0) || m.margin_second < slack(eigs[i])) {
      ++quotient.violations;
      quotient.violating.push_back(i);
    }
  }
  report.regions.push_back(std::move(sector));
  report.regions.push_back(std::move(quotient));
  return report;
}

}  // namespace decaycert
