#pragma once

#include <vector>

#include "hsvd/merge.hpp"
#include "hsvd/svd_factor.hpp"

namespace hsvd {

struct Slice {
  Index start = 0;
  Index count = 0;
};

/// Contiguous partition of [0, rows) x [0, cols) into d-row and c-column
/// slices; the trailing slice is smaller when the block size does not
/// divide the dimension.
struct BlockPlan {
  std::vector<Slice> row_slices;
  std::vector<Slice> col_slices;

  static BlockPlan make(Index rows, Index cols, Index d, Index c);
};

struct MergeStats {
  int pair_merges = 0;
};

/// Pairwise tree reduction: each level merges adjacent factors (0,1), (2,3),
/// ... with merge_pair_qr, carrying an odd trailing factor up unmerged,
/// until one factor remains. Every merge truncates with gamma.
SvdFactor tree_merge(std::vector<SvdFactor> factors, MergeOrientation orient,
                     double gamma, std::optional<Index> max_rank = std::nullopt,
                     MergeStats* stats = nullptr);

/// Splits x_slice into ceil(n/c) column slices, takes the truncated SVD of
/// each and tree-merges them ColumnConcat. Returns a (U, Sigma) factor with
/// v absent.
SvdFactor svd_of_col_slices(const DenseMatrix& x_slice, Index c, double gamma,
                            std::optional<Index> max_rank = std::nullopt);

/// The full block pipeline: column-phase merge per row slice, right-factor
/// recovery from the SVD of U_j^T X_j, then a RowConcat tree merge across
/// the row slices. Returns a (Sigma, V) factor with u absent.
SvdFactor hierarchical_svd(const DenseMatrix& x, const MatConfig& cfg);

/// Completes a (Sigma, V) factor into full (U, Sigma, V) by decomposing
/// Y = X * V_r: the result is the exact SVD of the projection X V_r V_r^T,
/// with U orthonormal by construction even though V_r is approximate.
SvdFactor recover_left_vectors(const DenseMatrix& x, const DenseMatrix& v_r);

}  // namespace hsvd
