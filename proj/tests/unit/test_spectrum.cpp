#include <doctest.h>

#include <cmath>
#include <vector>

#include <decaycert/constants.hpp>
#include <decaycert/models.hpp>
#include <decaycert/random.hpp>
#include <decaycert/rate_bounds.hpp>
#include <decaycert/spectrum.hpp>

#include "oracles.hpp"

using namespace decaycert;

TEST_CASE("linearization of the scalar system") {
  const Linearization lin = build_linearization(scalar(4, 4, 0));
  Matrix want(2, 2);
  want << -4, -4, 1, 0;
  CHECK(lin.block == want);
}

TEST_CASE("eigenvalues of small systems against the quadratic formula") {
  SUBCASE("critically damped scalar") {
    const auto eigs = eigenvalues(build_linearization(scalar(4, 4, 0)));
    REQUIRE(eigs.size() == 2);
    for (Complex e : eigs) CHECK(std::abs(e - Complex(-2.0)) <= 1e-7);
  }
  SUBCASE("underdamped scalar") {
    const auto eigs = eigenvalues(build_linearization(scalar(1, 1, 0)));
    const auto [r1, r2] = oracle::quadratic_roots(1.0, 1.0);
    REQUIRE(eigs.size() == 2);
    // sorted by real part descending, then imaginary part ascending
    CHECK(std::abs(eigs[0] - Complex(-0.5, -std::sqrt(3.0) / 2.0)) <= 1e-12);
    CHECK(std::abs(eigs[1] - Complex(-0.5, std::sqrt(3.0) / 2.0)) <= 1e-12);
    CHECK(std::abs(r1 - eigs[1]) <= 1e-12);
    CHECK(std::abs(r2 - eigs[0]) <= 1e-12);
  }
  SUBCASE("A = I, D = 2I") {
    const auto eigs = eigenvalues(
        build_linearization(validate_system(Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2))));
    REQUIRE(eigs.size() == 4);
    for (Complex e : eigs) CHECK(std::abs(e - Complex(-1.0)) <= 1e-7);
  }
  SUBCASE("undamped oscillator") {
    const auto eigs =
        eigenvalues(build_linearization(validate_system(Matrix::Identity(2, 2), Matrix::Zero(2, 2))));
    REQUIRE(eigs.size() == 4);
    for (Complex e : eigs) CHECK(std::abs(std::abs(e.imag()) - 1.0) <= 1e-12);
    for (Complex e : eigs) CHECK(std::abs(e.real()) <= 1e-12);
  }
}

TEST_CASE("zero is never an eigenvalue of the linearization") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SystemPair sys = random_sectorial(4, seed, 0.2, 1.0);
    for (Complex e : eigenvalues(build_linearization(sys))) CHECK(std::abs(e) > 1e-6);
  }
}

TEST_CASE("pencil_residual examples") {
  const SystemPair s44 = scalar(4, 4, 0);
  CHECK(pencil_residual(s44, -2.0) <= 1e-14);
  CHECK(pencil_residual(s44, 0.0) == doctest::Approx(4.0));
  CHECK(pencil_residual(validate_system(Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)), -1.0) <= 1e-14);
}

TEST_CASE("every eigenvalue of the linearization is a root of the pencil") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SystemPair sys = random_sectorial(1 + static_cast<int>(seed % 9), seed, 0.3, 2.0);
    const double na = sys.a().operatorNorm();
    const double nd = sys.d().operatorNorm();
    for (Complex e : eigenvalues(build_linearization(sys))) {
      const double mag = std::abs(e);
      CHECK(pencil_residual(sys, e) <= 1e-8 * (mag * mag + mag * nd + na));
    }
  }
}

TEST_CASE("no pencil root hides off the computed spectrum") {
  // Scan a grid on the Theorem region boundary: sigma_min(L(lambda)) stays
  // away from zero unless lambda is near an eigenvalue.
  const SystemPair sys = random_sectorial(3, 4, 0.5, 0.5);
  const auto eigs = eigenvalues(build_linearization(sys));
  const RateCertificate cert = certify(compute_constants(sys), std::vector<double>{0.0});
  const double slope = cert.Mb_table[0].M;
  for (int k = 0; k < 400; ++k) {
    const double re = -cert.omega - 0.05 * k;
    for (double sign : {1.0, -1.0}) {
      const Complex lambda(re, sign * slope * std::abs(re));
      double nearest = INFINITY;
      for (Complex e : eigs) nearest = std::min(nearest, std::abs(lambda - e));
      if (nearest > 1e-3) CHECK(pencil_residual(sys, lambda) > 1e-10);
    }
  }
}

TEST_CASE("real systems have conjugation-symmetric spectra") {
  const SystemPair sys = wave_1d(6, 0.2, 0.05, 0.0);
  const auto eigs = eigenvalues(build_linearization(sys));
  for (Complex e : eigs) {
    double nearest = INFINITY;
    for (Complex f : eigs) nearest = std::min(nearest, std::abs(std::conj(e) - f));
    CHECK(nearest <= 1e-9 * (1 + std::abs(e)));
  }
}

TEST_CASE("build_QT on the scalar system") {
  const QTPair qt = build_QT(scalar(4, 4, 0), 2.0);
  Matrix q(2, 2), t(2, 2);
  q << 1.5, 2, 2, 14;
  t << -4, -6, 6, -8;
  CHECK((qt.Q - q).norm() <= 1e-14);
  CHECK((qt.T - t).norm() <= 1e-14);
  CHECK(qt.identity_residual <= 1e-15);
}

TEST_CASE("Q at theta -> 0 is the energy Gram matrix") {
  const SystemPair sys = random_sectorial(4, 2, 0.5, 1.0);
  const QTPair qt = build_QT(sys, 1e-14);
  CHECK((qt.Q - oracle::energy_gram(sys.a())).norm() <= 1e-10);
}

TEST_CASE("T = Q * block and Q is Hermitian positive definite") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SystemPair sys = random_sectorial(1 + static_cast<int>(seed % 7), seed, 0.3, 1.0);
    const Matrix block = build_linearization(sys).block;
    for (double theta : {0.1, 1.0, 10.0}) {
      const QTPair qt = build_QT(sys, theta);
      CHECK((qt.T - qt.Q * block).operatorNorm() <= 1e-10 * qt.T.operatorNorm());
      CHECK(qt.hermitian_residual <= 1e-14);
      Eigen::SelfAdjointEigenSolver<Matrix> es(qt.Q);
      CHECK(es.eigenvalues()(0) > 0.0);
    }
  }
}

TEST_CASE("-T is accretive in the energy inner product") {
  Rng rng(31);
  const SystemPair sys = random_sectorial(5, 6, 0.2, 2.0);
  const Matrix block = build_linearization(sys).block;
  const Matrix g = oracle::energy_gram(sys.a());
  for (int k = 0; k < 10000; ++k) {
    const Vector w = rng.complex_normal_vector(10);
    const double re = w.dot(g * (block * w)).real();
    const Vector w1 = w.head(5);
    CHECK(re == doctest::Approx(-w1.dot(sys.d() * w1).real()).epsilon(1e-10));
    CHECK(re <= 1e-12);
  }
}

TEST_CASE("verify_inclusion on the scalar example") {
  const SystemPair sys = scalar(4, 4, 0);
  const ConstantSet c = compute_constants(sys);
  const RateCertificate cert = certify(c, std::vector<double>{0.0});
  const auto eigs = eigenvalues(build_linearization(sys));
  const SpectrumReport report = verify_inclusion(sys, eigs, standard_regions(cert, {cert.theta_star}), c);
  CHECK(report.passed());
  CHECK(report.inclusion_checked);
  CHECK(report.spectral_abscissa == doctest::Approx(-2.0).epsilon(1e-7));
  bool found = false;
  for (const RegionReport& r : report.regions) {
    if (r.region.kind != RegionKind::Theorem) continue;
    found = true;
    CHECK(r.region.region.M == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.worst_margin_re == doctest::Approx(2.0 - 0.58578643762690497).epsilon(1e-7));
    CHECK(r.worst_margin_im == doctest::Approx(2.0).epsilon(1e-7));
  }
  CHECK(found);
}

TEST_CASE("verify_inclusion with A = I, D = 2I") {
  const SystemPair sys = validate_system(Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2));
  const ConstantSet c = compute_constants(sys);
  const RateCertificate cert = certify(c, std::vector<double>{0.0});
  CHECK(cert.omega == doctest::Approx(0.29289321881345254).epsilon(1e-12));
  const SpectrumReport report =
      verify_inclusion(sys, eigenvalues(build_linearization(sys)), standard_regions(cert, {1.0}), c);
  CHECK(report.passed());
}

TEST_CASE("undamped systems skip inclusion with a note") {
  const SystemPair sys = validate_system(Matrix::Identity(2, 2), Matrix::Zero(2, 2));
  const ConstantSet c = compute_constants(sys);
  const SpectrumReport report = verify_inclusion(sys, eigenvalues(build_linearization(sys)), {}, c);
  CHECK_FALSE(report.inclusion_checked);
  REQUIRE(report.note.has_value());
  CHECK(report.note->find("NonPositiveDelta") != std::string::npos);
  CHECK(report.regions.empty());
  CHECK(report.residual_failures == 0);
}

TEST_CASE("verify_inclusion flags an eigenvalue outside a region") {
  const SystemPair sys = scalar(4, 4, 0);
  const ConstantSet c = compute_constants(sys);
  const std::vector<LabeledRegion> too_tight{{"tight", RegionKind::Theorem, 0.0, SectorRegion{3.0, 1.0, 0.0}}};
  const SpectrumReport report = verify_inclusion(sys, eigenvalues(build_linearization(sys)), too_tight, c);
  CHECK_FALSE(report.passed());
  CHECK(report.regions.front().violations == 2);
}
