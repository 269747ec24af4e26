#pragma once

#include <filesystem>
#include <iosfwd>

#include "decaycert/types.hpp"

namespace decaycert {

// Dense reader/writer for the NIST Matrix Market exchange format.
//
// Accepted banners: `coordinate` or `array` storage; `real`, `integer`,
// `complex` or `pattern` fields; `general`, `symmetric`, `hermitian` or
// `skew-symmetric` symmetry. Missing triangle entries are filled from the
// declared symmetry. Errors raise decaycert::Error with ParseError or
// FileNotFound.

Matrix read_matrix_market(std::istream& in);
Matrix read_matrix_market_file(const std::filesystem::path& path);

/// Writes `array` storage, `general` symmetry, 17 significant digits. Uses
/// the `real` field when every imaginary part is exactly zero.
void write_matrix_market(std::ostream& out, const Matrix& m);
void write_matrix_market_file(const std::filesystem::path& path, const Matrix& m);

}  // namespace decaycert
