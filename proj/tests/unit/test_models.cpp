#include <doctest.h>

#include <cmath>
#include <numbers>

#include <decaycert/constants.hpp>
#include <decaycert/models.hpp>

using namespace decaycert;

TEST_CASE("wave1d lowest stiffness eigenvalue") {
  const SystemPair sys = wave_1d(3, 0.0, 1.0, 0.0);
  CHECK(sys.dimension() == 3);
  CHECK(sys.lambda_min_a() == doctest::Approx(16.0 * (2.0 - std::numbers::sqrt2)).epsilon(1e-13));
  CHECK(sys.lambda_min_a() == doctest::Approx(9.372583002030479).epsilon(1e-13));
}

TEST_CASE("Kelvin-Voigt damping has a sector constant of zero") {
  for (double c1 : {0.1, 1.0, 3.0}) {
    const ConstantSet c = compute_constants(wave_1d(8, 0.0, c1, 0.0));
    CHECK(c.nu == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.delta == doctest::Approx(c1).epsilon(1e-10));
    CHECK(c.sector_defined);
  }
}

TEST_CASE("wave1d with an imaginary Kelvin-Voigt part") {
  const ConstantSet c = compute_constants(wave_1d(8, 0.0, 1.0, 0.5));
  CHECK(c.nu == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("spring_chain is a valid system with Rayleigh damping") {
  const SystemPair sys = spring_chain(6, 2.0, 0.1, 0.05);
  CHECK(sys.dimension() == 6);
  CHECK(sys.lambda_min_a() > 0.0);
  const ConstantSet c = compute_constants(sys);
  CHECK(c.nu == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.delta > 0.05);
}

TEST_CASE("random_sectorial is deterministic and honours its controls") {
  const SystemPair a = random_sectorial(7, 11, 0.5, 2.0);
  const SystemPair b = random_sectorial(7, 11, 0.5, 2.0);
  CHECK(a.a() == b.a());
  CHECK(a.d() == b.d());
  CHECK(random_sectorial(7, 12, 0.5, 2.0).a() != a.a());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ConstantSet c = compute_constants(random_sectorial(5, seed, 0.3, 1.5));
    CHECK(c.delta >= 0.3 * (1 - 1e-10));
    CHECK(c.nu == doctest::Approx(1.5).epsilon(1e-9));
  }
  CHECK(compute_constants(random_sectorial(5, 1, 0.3, 0.0)).nu == doctest::Approx(0.0));
}

TEST_CASE("scalar systems") {
  const ConstantSet c = compute_constants(scalar(4, 4, 0));
  CHECK(c.a0 == 4.0);
  CHECK(c.beta == 4.0);
  CHECK(c.alpha == doctest::Approx(16.0));
  CHECK(c.delta == doctest::Approx(1.0));
  CHECK(c.nu == 0.0);
  CHECK(compute_constants(scalar(1, 2, 3)).nu == doctest::Approx(1.5));
  CHECK_THROWS_AS(scalar(0, 1, 0), Error);
  CHECK_THROWS_AS(scalar(1, -1, 0), Error);
}

TEST_CASE("parse_model_spec") {
  const ModelSpec w = parse_model_spec("wave1d:8,0,1,0");
  CHECK(w.kind == ModelKind::Wave1d);
  CHECK(w.parameters == std::vector<double>{8, 0, 1, 0});
  CHECK(parse_model_spec("random_sectorial:4,1,0.5,1").kind == ModelKind::RandomSectorial);
  CHECK(parse_model_spec("random:4,1,0.5,1").kind == ModelKind::RandomSectorial);
  CHECK(build_model(parse_model_spec("scalar:4,4,0")).a()(0, 0) == Complex(4.0));
  CHECK(parse_model_spec(parse_model_spec("spring_chain:3,1,0.1,0.2").to_string()).parameters ==
        std::vector<double>{3, 1, 0.1, 0.2});

  for (const char* bad : {"", "wave1d", "wave1d:8,0,1", "plate:3", "scalar:a,b,c", "scalar:1,2,3,4",
                          "wave1d:0,0,1,0", "wave1d:2.5,0,1,0"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(build_model(parse_model_spec(bad)), Error);
  }
}
