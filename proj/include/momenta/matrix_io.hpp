#pragma once

// Matrix files.
//
// JSON: {"rows": n, "cols": n, "entries": [[re, im], ...]}, row-major, n² pairs.
// CSV:  n lines of n comma-separated reals (real matrices only).
//
// Writers use 17 significant digits, so a write/parse cycle is exact.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "momenta/linalg.hpp"

namespace momenta {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedMatrix {
  ComplexMatrix matrix;
  /// True when the asymmetry was within the ingest tolerance; `matrix` is then
  /// the symmetrized (M + M*)/2. Otherwise `matrix` is the raw input.
  bool hermitian = false;
};

enum class MatrixFormat { Json, Csv };

LoadedMatrix parse_matrix_json(std::string_view text);
LoadedMatrix parse_matrix_csv(std::string_view text);

/// Picks the format from the extension, falling back to the first
/// non-blank character ('{' means JSON).
LoadedMatrix parse_matrix(const std::filesystem::path& path);

std::string format_double(double value);
std::string write_matrix_json(const ComplexMatrix& m);
/// Real parts only; throws DomainError if any entry has a nonzero imaginary part.
std::string write_matrix_csv(const ComplexMatrix& m);

}  // namespace momenta
