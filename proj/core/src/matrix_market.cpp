#include "decaycert/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "decaycert/error.hpp"

namespace decaycert {
namespace {

enum class Storage { Coordinate, Array };
enum class Field { Real, Integer, Complex, Pattern };
enum class Symmetry { General, Symmetric, Hermitian, SkewSymmetric };

struct Banner {
  Storage storage;
  Field field;
  Symmetry symmetry;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void parse_fail(const std::string& what, std::size_t line) {
  throw Error(ErrorKind::ParseError, "Matrix Market line " + std::to_string(line) + ": " + what);
}

Banner parse_banner(const std::string& line) {
  std::istringstream ss(line);
  std::string tag, object, storage, field, symmetry;
  ss >> tag >> object >> storage >> field >> symmetry;
  if (tag != "%%MatrixMarket") parse_fail("missing %%MatrixMarket banner", 1);
  if (lower(object) != "matrix") parse_fail("unsupported object '" + object + "'", 1);

  Banner b{};
  storage = lower(storage);
  if (storage == "coordinate") b.storage = Storage::Coordinate;
  else if (storage == "array") b.storage = Storage::Array;
  else parse_fail("unsupported storage '" + storage + "'", 1);

  field = lower(field);
  if (field == "real" || field == "double") b.field = Field::Real;
  else if (field == "integer") b.field = Field::Integer;
  else if (field == "complex") b.field = Field::Complex;
  else if (field == "pattern") b.field = Field::Pattern;
  else parse_fail("unsupported field '" + field + "'", 1);

  symmetry = lower(symmetry);
  if (symmetry == "general") b.symmetry = Symmetry::General;
  else if (symmetry == "symmetric") b.symmetry = Symmetry::Symmetric;
  else if (symmetry == "hermitian") b.symmetry = Symmetry::Hermitian;
  else if (symmetry == "skew-symmetric") b.symmetry = Symmetry::SkewSymmetric;
  else parse_fail("unsupported symmetry '" + symmetry + "'", 1);

  if (b.storage == Storage::Array && b.field == Field::Pattern) {
    parse_fail("pattern field requires coordinate storage", 1);
  }
  if (b.symmetry == Symmetry::Hermitian && b.field != Field::Complex) {
    // Real hermitian is just symmetric.
    b.symmetry = Symmetry::Symmetric;
  }
  return b;
}

Complex read_value(std::istringstream& ss, Field field, std::size_t line) {
  double re = 1.0, im = 0.0;
  if (field == Field::Pattern) return {re, im};
  if (!(ss >> re)) parse_fail("expected a numeric value", line);
  if (field == Field::Complex && !(ss >> im)) parse_fail("expected an imaginary part", line);
  return {re, im};
}

void mirror(Matrix& m, Index i, Index j, Complex v, Symmetry symmetry) {
  m(i, j) = v;
  if (i == j) return;
  switch (symmetry) {
    case Symmetry::General: break;
    case Symmetry::Symmetric: m(j, i) = v; break;
    case Symmetry::Hermitian: m(j, i) = std::conj(v); break;
    case Symmetry::SkewSymmetric: m(j, i) = -v; break;
  }
}

}  // namespace

Matrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) parse_fail("empty input", line_no);
  const Banner banner = parse_banner(line);

  // Skip comments and blank lines up to the size line.
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) parse_fail("missing size line", line_no);
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, entries = 0;
  if (!(size_line >> rows >> cols)) parse_fail("malformed size line", line_no);
  if (banner.storage == Storage::Coordinate && !(size_line >> entries)) {
    parse_fail("coordinate size line needs an entry count", line_no);
  }
  if (rows <= 0 || cols <= 0 || entries < 0) parse_fail("non-positive dimensions", line_no);
  if (banner.symmetry != Symmetry::General && rows != cols) {
    parse_fail("symmetric storage requires a square matrix", line_no);
  }

  Matrix m = Matrix::Zero(rows, cols);

  if (banner.storage == Storage::Coordinate) {
    for (long long k = 0; k < entries; ++k) {
      if (!next_data_line(line)) parse_fail("expected " + std::to_string(entries) + " entries", line_no);
      std::istringstream ss(line);
      long long i = 0, j = 0;
      if (!(ss >> i >> j)) parse_fail("malformed coordinate entry", line_no);
      if (i < 1 || i > rows || j < 1 || j > cols) parse_fail("index out of range", line_no);
      mirror(m, i - 1, j - 1, read_value(ss, banner.field, line_no), banner.symmetry);
    }
    return m;
  }

  // Array storage is column-major; symmetric variants list the lower
  // triangle only (strictly lower for skew-symmetric).
  for (Index j = 0; j < cols; ++j) {
    Index first_row = 0;
    if (banner.symmetry == Symmetry::SkewSymmetric) first_row = j + 1;
    else if (banner.symmetry != Symmetry::General) first_row = j;
    for (Index i = first_row; i < rows; ++i) {
      if (!next_data_line(line)) parse_fail("too few array entries", line_no);
      std::istringstream ss(line);
      mirror(m, i, j, read_value(ss, banner.field, line_no), banner.symmetry);
    }
  }
  return m;
}

Matrix read_matrix_market_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::FileNotFound, "cannot open matrix file '" + path.string() + "'");
  }
  try {
    return read_matrix_market(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_matrix_market(std::ostream& out, const Matrix& m) {
  const bool real = m.imag().isZero(0.0);
  out << "%%MatrixMarket matrix array " << (real ? "real" : "complex") << " general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[64];
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (real) {
        std::snprintf(buf, sizeof buf, "%.17g", m(i, j).real());
      } else {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", m(i, j).real(), m(i, j).imag());
      }
      out << buf << '\n';
    }
  }
}

void write_matrix_market_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::FileNotFound, "cannot write matrix file '" + path.string() + "'");
  }
  write_matrix_market(out, m);
}

}  // namespace decaycert
