#pragma once

#include "hsvd/svd_factor.hpp"

namespace hsvd {

struct RefineResult {
  SvdFactor factor;  // full (U, Sigma, V)
  int iterations = 0;
  double final_error = 0.0;  // last inter-iteration Sigma change
  bool converged = false;
};

/// Power-iteration style improvement of an approximate factor: alternate
/// thin SVDs of X*Vhat and Ui^T*X, tracking the relative change of the
/// singular-value vector, until it drops below epsilon or max_iters is hit.
/// Non-convergence is reported through the flag, not thrown.
RefineResult refine_factors(const DenseMatrix& x, const DenseMatrix& v_hat,
                            const Vector& sigma_hat, double epsilon,
                            int max_iters);

}  // namespace hsvd
