#pragma once

#include <filesystem>
#include <iosfwd>

#include "rectexp/linalg.hpp"

namespace rectexp {

/// Reads `array` and `coordinate` Matrix Market files with `real`, `integer`
/// or `complex` fields and `general`, `symmetric`, `skew-symmetric` or
/// `hermitian` symmetry. Throws IoError on malformed input.
ComplexMatrix read_matrix_market(std::istream& in);
ComplexMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes `%%MatrixMarket matrix array complex general` with 17 significant digits.
void write_matrix_market(std::ostream& out, const ComplexMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const ComplexMatrix& a);

}  // namespace rectexp
