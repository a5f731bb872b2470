#pragma once

#include <stdexcept>
#include <string>

#include "hsvd/dense_matrix.hpp"

namespace hsvd {

enum class MatrixFormat { Csv, Hsvd1 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed content: ragged CSV rows, bad magic, truncated payload,
/// non-finite values.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "csv" or "hsvd"; throws std::invalid_argument otherwise.
MatrixFormat format_from_name(const std::string& name);

/// Picks the format from the file extension (.csv -> Csv, anything else ->
/// Hsvd1 binary).
MatrixFormat format_for_path(const std::string& path);

/// CSV: headerless, comma-separated, one row per line. HSVD1: little-endian
/// binary, 22-byte header ("HSVD1\0", u64 rows, u64 cols) followed by
/// rows*cols row-major real64 values. Both reject NaN/Inf and empty
/// matrices.
DenseMatrix load_matrix(const std::string& path, MatrixFormat format);

/// Binary round-trips bit-exactly; CSV uses shortest round-trip decimals.
void save_matrix(const DenseMatrix& x, const std::string& path, MatrixFormat format);

/// Shortest decimal representation that parses back to exactly v.
std::string format_double(double v);

}  // namespace hsvd
