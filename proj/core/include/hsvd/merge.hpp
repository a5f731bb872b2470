#pragma once

#include <optional>

#include "hsvd/svd_factor.hpp"

namespace hsvd {

/// Whether the two factors represent side-by-side blocks [X1 X2]
/// (ColumnConcat, merged through the U factors) or stacked blocks [X1; X2]
/// (RowConcat, merged through the V factors).
enum class MergeOrientation { ColumnConcat, RowConcat };

/// Merge by stacking the weighted singular vectors and taking one SVD:
/// ColumnConcat decomposes [U1*S1 | U2*S2], RowConcat decomposes
/// [S1*V1^T; S2*V2^T]. Exact up to the final gamma-truncation; kept as the
/// reference the fast merge is tested against, and as the fallback when the
/// combined rank exceeds the shared dimension.
SvdFactor merge_pair_naive(const SvdFactor& f1, const SvdFactor& f2,
                           MergeOrientation orient, double gamma,
                           std::optional<Index> max_rank = std::nullopt);

/// Merge through the orthogonal complement: project the second basis out of
/// the first, thin-QR the remainder, and decompose the small
/// (k+l) x (k+l) matrix E = [S1, W*S2; 0, R*S2]. Singular values agree with
/// merge_pair_naive to roundoff; falls back to it when k+l exceeds the
/// shared dimension.
SvdFactor merge_pair_qr(const SvdFactor& f1, const SvdFactor& f2,
                        MergeOrientation orient, double gamma,
                        std::optional<Index> max_rank = std::nullopt);

}  // namespace hsvd
