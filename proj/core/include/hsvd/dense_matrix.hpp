#pragma once

#include <Eigen/Core>

namespace hsvd {

// All matrices are dense, real64 and row-major; row-major matches the file
// formats and the merge arithmetic.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline double frobenius_norm(const DenseMatrix& a) { return a.norm(); }

inline bool all_finite(const DenseMatrix& a) { return a.allFinite(); }

}  // namespace hsvd
