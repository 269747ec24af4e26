#include <doctest.h>

#include <decaycert/hilbert_scale.hpp>
#include <decaycert/models.hpp>
#include <decaycert/random.hpp>

#include "oracles.hpp"

using namespace decaycert;

namespace {

Matrix m1(Complex v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

Vector v1(Complex v) {
  Vector x(1);
  x(0) = v;
  return x;
}

}  // namespace

TEST_CASE("validate_system accepts identity stiffness with scalar damping") {
  const SystemPair sys = validate_system(Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2));
  CHECK(sys.dimension() == 2);
  CHECK(sys.lambda_min_a() == doctest::Approx(1.0));
  CHECK(sys.lambda_min_herm_d() == doctest::Approx(2.0));
}

TEST_CASE("validate_system rejects indefinite stiffness") {
  Matrix a(2, 2);
  a << 1, 0, 0, -1;
  try {
    validate_system(a, Matrix::Identity(2, 2));
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
  }
}

TEST_CASE("validate_system rejects negative damping") {
  try {
    validate_system(m1(4.0), m1(-1.0));
    FAIL("expected NotAccretive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAccretive);
  }
}

TEST_CASE("validate_system rejects non-Hermitian stiffness and mismatched sizes") {
  Matrix a(2, 2);
  a << 2, 1, 0, 2;
  try {
    validate_system(a, Matrix::Identity(2, 2));
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitian);
  }
  try {
    validate_system(Matrix::Identity(2, 2), Matrix::Identity(3, 3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("validate_system symmetrizes rounding noise below tolerance") {
  Matrix a(2, 2);
  a << 2, 1, 1 + 1e-14, 2;
  const SystemPair sys = validate_system(a, Matrix::Identity(2, 2));
  CHECK((sys.a() - sys.a().adjoint()).norm() == 0.0);
}

TEST_CASE("norm_s on a scalar system") {
  const SystemPair sys = validate_system(m1(4.0), m1(4.0));
  CHECK(norm_s(sys, v1(1.0), 1) == doctest::Approx(2.0));
  CHECK(norm_s(sys, v1(1.0), -1) == doctest::Approx(0.5));
  CHECK(norm_s(sys, v1(1.0), 2) == doctest::Approx(4.0));
  CHECK(norm_s(sys, v1(1.0), -2) == doctest::Approx(0.25));
  for (int s = -2; s <= 2; ++s) CHECK(norm_s(sys, v1(0.0), s) == 0.0);
  CHECK_THROWS_AS(norm_s(sys, v1(1.0), 3), Error);
  CHECK_THROWS_AS(norm_s(sys, Vector::Zero(2), 0), Error);
}

TEST_CASE("energy_norm on a scalar system") {
  const SystemPair sys = validate_system(m1(4.0), m1(4.0));
  CHECK(energy_norm(sys, {v1(1.0), v1(0.0)}) == doctest::Approx(1.0));
  CHECK(energy_norm(sys, {v1(0.0), v1(1.0)}) == doctest::Approx(2.0));
  CHECK(energy_norm(sys, {v1(3.0), v1(2.0)}) == doctest::Approx(5.0));
  CHECK_THROWS_AS(energy_norm(sys, {Vector::Zero(2), v1(1.0)}), Error);
}

TEST_CASE("cached fractional powers reproduce A and the identity") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SystemPair sys = random_sectorial(8, seed, 0.5, 1.0);
    const auto& c = sys.scale();
    const double norm_a = sys.a().operatorNorm();
    CHECK((c.sqrt() * c.sqrt() - sys.a()).operatorNorm() <= 1e-10 * norm_a);
    CHECK((c.sqrt() * c.inv_sqrt() - Matrix::Identity(8, 8)).operatorNorm() <= 1e-10);
    CHECK((c.inverse() * sys.a() - Matrix::Identity(8, 8)).operatorNorm() <= 1e-10);
  }
}

TEST_CASE("Hilbert scale inequalities on random vectors") {
  Rng rng(2024);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SystemPair sys = random_sectorial(6, seed, 0.3, 0.5);
    const double a0 = sys.lambda_min_a();
    for (int k = 0; k < 1000; ++k) {
      const Vector x = rng.complex_normal_vector(6);
      const Vector y = rng.complex_normal_vector(6);
      const double n1 = norm_s(sys, x, 1), n0 = norm_s(sys, x, 0), nm1 = norm_s(sys, x, -1);
      CHECK(n1 * n1 >= a0 * n0 * n0 * (1 - 1e-12));
      CHECK(a0 * n0 * n0 >= a0 * a0 * nm1 * nm1 * (1 - 1e-12));

      // cached A^{s/2} against sqrt(<A^s x, x>)
      CHECK(oracle::relative_error(n1, std::sqrt(x.dot(sys.a() * x).real())) <= 1e-10);
      CHECK(oracle::relative_error(nm1, std::sqrt(x.dot(sys.a().inverse() * x).real())) <= 1e-10);

      // duality of H_{-1} and H_1 through the pivot space
      CHECK(std::abs(y.dot(x)) <= norm_s(sys, x, -1) * norm_s(sys, y, 1) * (1 + 1e-12));
    }
  }
}

TEST_CASE("StateVector stacking") {
  const StateVector w{v1(1.0), v1(2.0)};
  const Vector s = w.stacked();
  CHECK(s.size() == 2);
  const StateVector back = StateVector::from_stacked(s);
  CHECK(back.w1(0) == Complex(1.0));
  CHECK(back.w2(0) == Complex(2.0));
  CHECK_THROWS_AS(StateVector::from_stacked(Vector::Zero(3)), Error);
}
