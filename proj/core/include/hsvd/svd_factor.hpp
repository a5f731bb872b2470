#pragma once

#include <optional>
#include <stdexcept>

#include "hsvd/dense_matrix.hpp"

namespace hsvd {

/// A possibly truncated factorization U * diag(sigma) * V^T.
///
/// Either side may be absent: the merge tree drops whichever factor is not
/// propagated. sigma is always present, nonincreasing and nonnegative.
struct SvdFactor {
  std::optional<DenseMatrix> u;  // m x r, orthonormal columns
  Vector sigma;                  // length r
  std::optional<DenseMatrix> v;  // n x r, orthonormal columns

  // Set when an all-zero input was collapsed to a rank-1 zero factor.
  bool degenerate = false;

  Index rank() const { return sigma.size(); }
  bool has_u() const { return u.has_value(); }
  bool has_v() const { return v.has_value(); }
};

/// Algorithm parameters shared by the hierarchical pipeline.
struct MatConfig {
  double gamma = 1e-2;       // merge/truncate parameter
  Index row_block_rows = 0;  // d; 0 means a single row slice
  Index col_block_cols = 0;  // c; 0 means a single column slice
  double epsilon = 1e-3;     // refinement convergence tolerance
  int max_iters = 10;
  std::optional<Index> max_rank;  // hard rank cap on every truncation
};

/// Throws std::invalid_argument when a field violates its range.
void validate(const MatConfig& cfg);

/// Number of leading singular values with sigma_i >= gamma * sigma_1 (ties
/// kept). Returns 1 for an all-zero spectrum so factors stay total.
Index retained_count(const Vector& sigma, double gamma);

/// Keeps the leading singular values with sigma_i >= gamma * sigma_1, then
/// applies the optional hard rank cap. Columns of u/v are sliced to match.
/// An all-zero spectrum collapses to a rank-1 zero factor with the
/// degenerate flag set.
SvdFactor truncate_factor(const SvdFactor& f, double gamma,
                          std::optional<Index> max_rank = std::nullopt);

/// u * diag(sigma) * v^T. Both sides must be present.
DenseMatrix reconstruct(const SvdFactor& f);

/// Relative Frobenius error ||X_k - Xhat_k||_F / ||X_k||_F where X_k is the
/// rank-k truncation of the full SVD of x and Xhat_k the rank-k truncation
/// of approx. Requires k <= approx.rank() and both sides of approx.
double rank_k_error(const DenseMatrix& x, const SvdFactor& approx, Index k);

/// Same metric with the full SVD of x supplied by the caller; avoids
/// redecomposing x when the metric is evaluated many times.
double rank_k_error(const SvdFactor& full_of_x, const SvdFactor& approx, Index k);

/// Flips each singular-vector pair so the largest-magnitude entry of the
/// left vector is positive. Resolves SVD sign ambiguity when comparing
/// factors; used by tests, not by the pipeline.
void normalize_signs(SvdFactor& f);

}  // namespace hsvd
