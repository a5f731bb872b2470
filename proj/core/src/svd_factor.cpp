#include "hsvd/svd_factor.hpp"

#include <algorithm>
#include <cmath>

#include "hsvd/kernels.hpp"

namespace hsvd {

void validate(const MatConfig& cfg) {
  if (cfg.gamma < 0.0 || !std::isfinite(cfg.gamma))
    throw std::invalid_argument("MatConfig: gamma must be finite and >= 0");
  if (!(cfg.epsilon > 0.0))
    throw std::invalid_argument("MatConfig: epsilon must be > 0");
  if (cfg.max_iters < 1)
    throw std::invalid_argument("MatConfig: max_iters must be >= 1");
  if (cfg.row_block_rows < 0 || cfg.col_block_cols < 0)
    throw std::invalid_argument("MatConfig: block sizes must be >= 0");
  if (cfg.max_rank && *cfg.max_rank < 1)
    throw std::invalid_argument("MatConfig: max_rank must be >= 1");
}

Index retained_count(const Vector& sigma, double gamma) {
  if (sigma.size() == 0) return 0;
  if (sigma(0) == 0.0) return 1;  // all-zero spectrum collapses to rank 1
  const double cutoff = gamma * sigma(0);
  Index kept = 0;
  while (kept < sigma.size() && sigma(kept) >= cutoff) ++kept;
  return std::max<Index>(kept, 1);
}

SvdFactor truncate_factor(const SvdFactor& f, double gamma,
                          std::optional<Index> max_rank) {
  if (f.sigma.size() == 0)
    throw std::invalid_argument("truncate_factor: factor has an empty spectrum");

  Index keep = retained_count(f.sigma, gamma);
  if (max_rank) keep = std::min(keep, std::max<Index>(*max_rank, 1));

  SvdFactor out;
  out.sigma = f.sigma.head(keep);
  if (f.u) out.u = f.u->leftCols(keep);
  if (f.v) out.v = f.v->leftCols(keep);
  out.degenerate = f.degenerate || f.sigma(0) == 0.0;
  return out;
}

DenseMatrix reconstruct(const SvdFactor& f) {
  if (!f.u || !f.v)
    throw std::invalid_argument("reconstruct: factor must carry both u and v");
  return *f.u * f.sigma.asDiagonal() * f.v->transpose();
}

namespace {

SvdFactor head_factor(const SvdFactor& f, Index k) {
  SvdFactor out;
  out.sigma = f.sigma.head(k);
  if (f.u) out.u = f.u->leftCols(k);
  if (f.v) out.v = f.v->leftCols(k);
  return out;
}

}  // namespace

double rank_k_error(const SvdFactor& full_of_x, const SvdFactor& approx, Index k) {
  if (!approx.u || !approx.v)
    throw std::invalid_argument("rank_k_error: approx must carry both u and v");
  if (k < 1 || k > approx.rank())
    throw std::invalid_argument("rank_k_error: k must be in [1, approx.rank()]");

  const Index k_ref = std::min(k, full_of_x.rank());
  const DenseMatrix x_k = reconstruct(head_factor(full_of_x, k_ref));
  const double denom = x_k.norm();
  if (denom == 0.0)
    throw std::invalid_argument("rank_k_error: reference rank-k approximation is zero");

  const DenseMatrix xhat_k = reconstruct(head_factor(approx, k));
  return (x_k - xhat_k).norm() / denom;
}

double rank_k_error(const DenseMatrix& x, const SvdFactor& approx, Index k) {
  return rank_k_error(full_svd(x), approx, k);
}

void normalize_signs(SvdFactor& f) {
  const Index r = f.rank();
  for (Index j = 0; j < r; ++j) {
    double flip = 1.0;
    if (f.u) {
      Index imax = 0;
      f.u->col(j).cwiseAbs().maxCoeff(&imax);
      if ((*f.u)(imax, j) < 0.0) flip = -1.0;
    } else if (f.v) {
      Index imax = 0;
      f.v->col(j).cwiseAbs().maxCoeff(&imax);
      if ((*f.v)(imax, j) < 0.0) flip = -1.0;
    }
    if (flip < 0.0) {
      if (f.u) f.u->col(j) = -f.u->col(j);
      if (f.v) f.v->col(j) = -f.v->col(j);
    }
  }
}

}  // namespace hsvd
