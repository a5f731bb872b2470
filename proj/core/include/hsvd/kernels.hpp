#pragma once

#include <stdexcept>
#include <string>

#include "hsvd/dense_matrix.hpp"
#include "hsvd/svd_factor.hpp"

namespace hsvd {

/// A dense kernel (SVD or QR) failed to converge.
struct DecompositionError : std::runtime_error {
  DecompositionError(const std::string& what, Index rows, Index cols)
      : std::runtime_error(what), rows(rows), cols(cols) {}
  Index rows;
  Index cols;
};

struct ThinQr {
  DenseMatrix q;  // rows x p, orthonormal columns
  DenseMatrix r;  // p x cols, upper triangular (square when rows >= cols)
};

/// Thin SVD of a nonempty matrix: U rows x p, sigma length p nonincreasing,
/// V cols x p with p = min(rows, cols).
SvdFactor full_svd(const DenseMatrix& a);

/// Thin (economy) QR with p = min(rows, cols) columns in Q.
ThinQr qr_thin(const DenseMatrix& a);

}  // namespace hsvd
