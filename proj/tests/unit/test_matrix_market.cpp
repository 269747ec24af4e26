#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <decaycert/error.hpp>
#include <decaycert/matrix_market.hpp>
#include <decaycert/random.hpp>

using namespace decaycert;

namespace {

Matrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("coordinate real general") {
  const Matrix m = parse(
      "%%MatrixMarket matrix coordinate real general\n"
      "% a comment\n"
      "2 3 2\n"
      "1 1 1.5\n"
      "2 3 -2\n");
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 3);
  CHECK(m(0, 0) == Complex(1.5));
  CHECK(m(1, 2) == Complex(-2.0));
  CHECK(m(0, 1) == Complex(0.0));
}

TEST_CASE("coordinate complex hermitian fills the upper triangle with conjugates") {
  const Matrix m = parse(
      "%%MatrixMarket matrix coordinate complex hermitian\n"
      "2 2 3\n"
      "1 1 2 0\n"
      "2 1 1 0.5\n"
      "2 2 3 0\n");
  CHECK(m(0, 1) == Complex(1.0, -0.5));
  CHECK(m(1, 0) == Complex(1.0, 0.5));
  CHECK((m - m.adjoint()).norm() == 0.0);
}

TEST_CASE("array symmetric lists the lower triangle column-major") {
  const Matrix m = parse(
      "%%MatrixMarket matrix array real symmetric\n"
      "2 2\n"
      "4\n"
      "1\n"
      "5\n");
  CHECK(m(0, 0) == Complex(4.0));
  CHECK(m(1, 0) == Complex(1.0));
  CHECK(m(0, 1) == Complex(1.0));
  CHECK(m(1, 1) == Complex(5.0));
}

TEST_CASE("array skew-symmetric and integer fields") {
  const Matrix m = parse(
      "%%MatrixMarket matrix array integer skew-symmetric\n"
      "2 2\n"
      "3\n");
  CHECK(m(1, 0) == Complex(3.0));
  CHECK(m(0, 1) == Complex(-3.0));
  CHECK(m(0, 0) == Complex(0.0));
}

TEST_CASE("pattern coordinate entries are ones") {
  const Matrix m = parse(
      "%%MatrixMarket matrix coordinate pattern symmetric\n"
      "2 2 1\n"
      "2 1\n");
  CHECK(m(0, 1) == Complex(1.0));
  CHECK(m(1, 0) == Complex(1.0));
}

TEST_CASE("malformed inputs raise ParseError") {
  CHECK(parse_error_kind("") == ErrorKind::ParseError);
  CHECK(parse_error_kind("%%NotMatrixMarket matrix array real general\n1 1\n1\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("%%MatrixMarket matrix array real general\n2 2\n1\n2\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n") ==
        ErrorKind::ParseError);
  CHECK(parse_error_kind("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n") ==
        ErrorKind::ParseError);
  CHECK(parse_error_kind("%%MatrixMarket matrix array real symmetric\n2 3\n1\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("%%MatrixMarket matrix array complex general\n1 1\n1\n") == ErrorKind::ParseError);
}

TEST_CASE("missing file raises FileNotFound") {
  try {
    read_matrix_market_file("/nonexistent/dir/A.mtx");
    FAIL("expected FileNotFound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FileNotFound);
  }
}

TEST_CASE("written matrices read back bit-exactly") {
  Rng rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    Matrix m = rng.complex_normal_matrix(3 + trial, 2 + trial);
    if (trial % 2 == 0) m = m.real().cast<Complex>();
    std::stringstream ss;
    write_matrix_market(ss, m);
    const Matrix back = read_matrix_market(ss);
    CHECK(back == m);
  }
  const auto path = std::filesystem::temp_directory_path() / "decaycert_mm_roundtrip.mtx";
  const Matrix m = rng.complex_normal_matrix(2, 2);
  write_matrix_market_file(path, m);
  CHECK(read_matrix_market_file(path) == m);
  std::filesystem::remove(path);
}
