#include "hsvd/hierarchy.hpp"

#include <string>

#include "hsvd/kernels.hpp"

namespace hsvd {

namespace {

std::vector<Slice> partition(Index extent, Index block) {
  if (block < 1 || block > extent) block = extent;
  std::vector<Slice> slices;
  slices.reserve(static_cast<std::size_t>((extent + block - 1) / block));
  for (Index start = 0; start < extent; start += block)
    slices.push_back({start, std::min(block, extent - start)});
  return slices;
}

}  // namespace

BlockPlan BlockPlan::make(Index rows, Index cols, Index d, Index c) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("BlockPlan: matrix must be nonempty");
  BlockPlan plan;
  plan.row_slices = partition(rows, d);
  plan.col_slices = partition(cols, c);
  return plan;
}

SvdFactor tree_merge(std::vector<SvdFactor> factors, MergeOrientation orient,
                     double gamma, std::optional<Index> max_rank,
                     MergeStats* stats) {
  if (factors.empty())
    throw std::invalid_argument("tree_merge: factor list is empty");

  while (factors.size() > 1) {
    std::vector<SvdFactor> next;
    next.reserve(factors.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2) {
      next.push_back(merge_pair_qr(factors[i], factors[i + 1], orient, gamma, max_rank));
      if (stats) ++stats->pair_merges;
    }
    if (factors.size() % 2 == 1) next.push_back(std::move(factors.back()));
    factors = std::move(next);
  }
  return std::move(factors.front());
}

SvdFactor svd_of_col_slices(const DenseMatrix& x_slice, Index c, double gamma,
                            std::optional<Index> max_rank) {
  const auto slices = partition(x_slice.cols(), c);

  std::vector<SvdFactor> leaves;
  leaves.reserve(slices.size());
  for (const Slice& s : slices) {
    SvdFactor f = truncate_factor(full_svd(x_slice.middleCols(s.start, s.count)),
                                  gamma, max_rank);
    f.v.reset();  // the right factors of column slices are never needed
    leaves.push_back(std::move(f));
  }
  return tree_merge(std::move(leaves), MergeOrientation::ColumnConcat, gamma, max_rank);
}

SvdFactor hierarchical_svd(const DenseMatrix& x, const MatConfig& cfg) {
  if (x.rows() == 0 || x.cols() == 0)
    throw std::invalid_argument("hierarchical_svd: matrix is empty");
  validate(cfg);

  const auto row_slices = partition(x.rows(), cfg.row_block_rows);

  std::vector<SvdFactor> slice_factors;
  slice_factors.reserve(row_slices.size());
  for (std::size_t j = 0; j < row_slices.size(); ++j) {
    const Slice& s = row_slices[j];
    try {
      const auto x_j = x.middleRows(s.start, s.count);
      SvdFactor col_merged =
          svd_of_col_slices(x_j, cfg.col_block_cols, cfg.gamma, cfg.max_rank);

      // Right-factor recovery: the SVD of U_j^T X_j supplies the slice's V
      // and replaces its singular values.
      SvdFactor recovered = full_svd(col_merged.u->transpose() * x_j);
      recovered.u.reset();
      slice_factors.push_back(truncate_factor(recovered, cfg.gamma, cfg.max_rank));
    } catch (const DecompositionError& err) {
      throw DecompositionError("row slice " + std::to_string(j) + ": " + err.what(),
                               err.rows, err.cols);
    }
  }

  return tree_merge(std::move(slice_factors), MergeOrientation::RowConcat,
                    cfg.gamma, cfg.max_rank);
}

SvdFactor recover_left_vectors(const DenseMatrix& x, const DenseMatrix& v_r) {
  if (v_r.rows() != x.cols())
    throw std::invalid_argument("recover_left_vectors: v_r must have x.cols() rows");
  const Index r = v_r.cols();
  const double ortho_defect =
      (v_r.transpose() * v_r - DenseMatrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (ortho_defect > 1e-6)
    throw std::invalid_argument("recover_left_vectors: v_r columns are not orthonormal");

  // Y = X V_r; the SVD of Y is the exact SVD of the projection X V_r V_r^T.
  SvdFactor y = full_svd(x * v_r);
  SvdFactor out;
  out.u = std::move(*y.u);
  out.sigma = std::move(y.sigma);
  out.v = v_r * *y.v;
  return out;
}

}  // namespace hsvd
