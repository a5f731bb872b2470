#include "hsvd/merge.hpp"

#include "hsvd/kernels.hpp"

namespace hsvd {

namespace {

// The basis carried through a merge: U for side-by-side blocks, V for
// stacked blocks.
const DenseMatrix& carried_basis(const SvdFactor& f, MergeOrientation orient) {
  if (orient == MergeOrientation::ColumnConcat) {
    if (!f.u) throw std::invalid_argument("merge: ColumnConcat requires both factors to carry u");
    return *f.u;
  }
  if (!f.v) throw std::invalid_argument("merge: RowConcat requires both factors to carry v");
  return *f.v;
}

void check_dims(const DenseMatrix& b1, const DenseMatrix& b2, MergeOrientation orient) {
  if (b1.rows() != b2.rows())
    throw std::invalid_argument(
        orient == MergeOrientation::ColumnConcat
            ? "merge: ColumnConcat factors must have equal row counts"
            : "merge: RowConcat factors must have equal column counts");
}

SvdFactor make_result(DenseMatrix basis, Vector sigma, MergeOrientation orient,
                      bool degenerate) {
  SvdFactor out;
  out.sigma = std::move(sigma);
  if (orient == MergeOrientation::ColumnConcat)
    out.u = std::move(basis);
  else
    out.v = std::move(basis);
  out.degenerate = degenerate;
  return out;
}

}  // namespace

SvdFactor merge_pair_naive(const SvdFactor& f1, const SvdFactor& f2,
                           MergeOrientation orient, double gamma,
                           std::optional<Index> max_rank) {
  const DenseMatrix& b1 = carried_basis(f1, orient);
  const DenseMatrix& b2 = carried_basis(f2, orient);
  check_dims(b1, b2, orient);

  const Index k = f1.rank(), l = f2.rank();

  // Stack the weighted vectors and take one SVD. ColumnConcat decomposes
  // [U1*S1 | U2*S2]; RowConcat decomposes [S1*V1^T; S2*V2^T], whose right
  // factor is the merged V.
  SvdFactor s;
  if (orient == MergeOrientation::ColumnConcat) {
    DenseMatrix stacked(b1.rows(), k + l);
    stacked.leftCols(k) = b1 * f1.sigma.asDiagonal();
    stacked.rightCols(l) = b2 * f2.sigma.asDiagonal();
    s = full_svd(stacked);
    s.v.reset();
  } else {
    DenseMatrix stacked(k + l, b1.rows());
    stacked.topRows(k) = f1.sigma.asDiagonal() * b1.transpose();
    stacked.bottomRows(l) = f2.sigma.asDiagonal() * b2.transpose();
    s = full_svd(stacked);
    s.u.reset();
  }
  return truncate_factor(s, gamma, max_rank);
}

SvdFactor merge_pair_qr(const SvdFactor& f1, const SvdFactor& f2,
                        MergeOrientation orient, double gamma,
                        std::optional<Index> max_rank) {
  const DenseMatrix& b1 = carried_basis(f1, orient);
  const DenseMatrix& b2 = carried_basis(f2, orient);
  check_dims(b1, b2, orient);

  const Index k = f1.rank(), l = f2.rank();
  const Index shared_dim = b1.rows();

  // The (k+l) x (k+l) trick saves nothing once the combined rank reaches the
  // shared dimension, and the stacked basis [b1 b_o] could not stay
  // orthonormal there.
  if (k + l > shared_dim) return merge_pair_naive(f1, f2, orient, gamma, max_rank);

  const DenseMatrix w = b1.transpose() * b2;           // k x l
  DenseMatrix q = b2 - b1 * w;                         // component orthogonal to b1
  ThinQr qr = qr_thin(q);
  DenseMatrix b_o = std::move(qr.q);                   // shared_dim x l
  DenseMatrix r = std::move(qr.r);                     // l x l

  // Block Gram-Schmidt can lose orthogonality against b1; one re-projection
  // pass restores it ("twice is enough").
  if ((b_o.transpose() * b1).cwiseAbs().maxCoeff() > 1e-8) {
    q = b_o - b1 * (b1.transpose() * b_o);
    ThinQr qr2 = qr_thin(q);
    b_o = std::move(qr2.q);
    r = qr2.r * r;
  }

  DenseMatrix e = DenseMatrix::Zero(k + l, k + l);
  e.topLeftCorner(k, k) = DenseMatrix(f1.sigma.asDiagonal());
  e.topRightCorner(k, l) = w * f2.sigma.asDiagonal();
  e.bottomRightCorner(l, l) = r * f2.sigma.asDiagonal();

  SvdFactor se = full_svd(e);
  const Index keep = std::min(retained_count(se.sigma, gamma),
                              max_rank ? std::max<Index>(*max_rank, 1)
                                       : static_cast<Index>(k + l));

  // basis = [b1 b_o] * U_E, assembled only for the retained columns.
  const DenseMatrix& ue = *se.u;
  DenseMatrix basis = b1 * ue.topRows(k).leftCols(keep) + b_o * ue.bottomRows(l).leftCols(keep);

  return make_result(std::move(basis), se.sigma.head(keep), orient,
                     se.sigma(0) == 0.0);
}

}  // namespace hsvd
