#pragma once

#include <stdexcept>

#include "hsvd/dense_matrix.hpp"

namespace hsvd {

/// Idealized single-level flop counts for a column partition into P blocks
/// of s = n/P columns each, merged with a fixed retained rank k. A
/// prediction aid; measured wall clock is always reported alongside.
struct CostEstimate {
  double flops_full = 0.0;
  double flops_mat = 0.0;
  double bound = 0.0;
  Index partitions = 0;        // P
  double cols_per_block = 0.0; // s = n/P, real-valued when P does not divide n
  Index merge_rank = 0;        // k
};

/// Flops for a full thin SVD of a tall m x n matrix: 6*m*n^2 + 16*n^3.
inline double flops_full_svd(Index m, Index n) {
  if (m < n || n < 1)
    throw std::invalid_argument("flops_full_svd: requires m >= n >= 1 (pass the tall orientation)");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return 6.0 * md * nd * nd + 16.0 * nd * nd * nd;
}

/// Flops for the column-partitioned merge pipeline:
/// P*(6*m*s^2 + 16*s^3) + (P-1)*(14*m*k^2 + 176*k^3) with s = n/P.
inline double flops_mat_partition(Index m, Index n, Index p, Index k) {
  if (p < 1) throw std::invalid_argument("flops_mat_partition: P must be >= 1");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  const double pd = static_cast<double>(p), kd = static_cast<double>(k);
  const double s = nd / pd;
  if (s < 1.0) throw std::invalid_argument("flops_mat_partition: requires s = n/P >= 1");
  if (kd > s) throw std::invalid_argument("flops_mat_partition: model assumes k <= s");
  return pd * (6.0 * md * s * s + 16.0 * s * s * s) +
         (pd - 1.0) * (14.0 * md * kd * kd + 176.0 * kd * kd * kd);
}

/// Upper bound on the partitioned cost for any k <= s:
/// 20*m*n^2/P + 192*n^3/P^2.
inline double speedup_bound(Index m, Index n, Index p) {
  if (p < 1) throw std::invalid_argument("speedup_bound: P must be >= 1");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  return 20.0 * md * nd * nd / pd + 192.0 * nd * nd * nd / (pd * pd);
}

inline CostEstimate estimate_costs(Index m, Index n, Index p, Index k) {
  CostEstimate est;
  est.partitions = p;
  est.cols_per_block = static_cast<double>(n) / static_cast<double>(p);
  est.merge_rank = k;
  est.flops_full = flops_full_svd(std::max(m, n), std::min(m, n));
  est.flops_mat = flops_mat_partition(m, n, p, k);
  est.bound = speedup_bound(m, n, p);
  return est;
}

}  // namespace hsvd
