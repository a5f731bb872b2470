#include "hsvd/refine.hpp"

#include <cmath>
#include <limits>

#include "hsvd/kernels.hpp"

namespace hsvd {

namespace {

// ||a - b||_2 with the shorter vector zero-padded; the rank can change
// between iterations.
double padded_diff_norm(const Vector& a, const Vector& b) {
  const Index n = std::max(a.size(), b.size());
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double d = (i < a.size() ? a(i) : 0.0) - (i < b.size() ? b(i) : 0.0);
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

RefineResult refine_factors(const DenseMatrix& x, const DenseMatrix& v_hat,
                            const Vector& sigma_hat, double epsilon,
                            int max_iters) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("refine_factors: epsilon must be > 0");
  if (max_iters < 1)
    throw std::invalid_argument("refine_factors: max_iters must be >= 1");
  if (sigma_hat.size() != v_hat.cols())
    throw std::invalid_argument("refine_factors: sigma_hat length must match v_hat columns");
  if (v_hat.rows() != x.cols())
    throw std::invalid_argument("refine_factors: v_hat must have x.cols() rows");
  const double ortho_defect =
      (v_hat.transpose() * v_hat - DenseMatrix::Identity(v_hat.cols(), v_hat.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (ortho_defect > 1e-6)
    throw std::invalid_argument("refine_factors: v_hat columns are not orthonormal");

  Vector sigma = sigma_hat;
  DenseMatrix v = v_hat;
  DenseMatrix u_outer, u_inner;

  RefineResult res;
  double error = 0.0;
  do {
    ++res.iterations;

    SvdFactor left = full_svd(x * v);  // only the left basis is used
    u_outer = std::move(*left.u);

    SvdFactor step = full_svd(u_outer.transpose() * x);
    const double denom = sigma.norm();
    const double diff = padded_diff_norm(sigma, step.sigma);
    error = denom > 0.0 ? diff / denom : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);

    sigma = std::move(step.sigma);
    v = std::move(*step.v);
    u_inner = std::move(*step.u);
  } while (error > epsilon && res.iterations < max_iters);

  res.factor.u = u_outer * u_inner;
  res.factor.sigma = std::move(sigma);
  res.factor.v = std::move(v);
  res.final_error = error;
  res.converged = error <= epsilon;
  return res;
}

}  // namespace hsvd
