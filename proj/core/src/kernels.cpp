#include "hsvd/kernels.hpp"

#include <Eigen/Dense>

namespace hsvd {

namespace {

// Two-sided Jacobi: slower but exact to roundoff on every input.
SvdFactor jacobi_svd(const DenseMatrix& a) {
  Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactor f;
  f.u = svd.matrixU();
  f.sigma = svd.singularValues();
  f.v = svd.matrixV();
  return f;
}

}  // namespace

SvdFactor full_svd(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    throw std::invalid_argument("full_svd: matrix is empty");

  // Divide-and-conquer mishandles deflation on some inputs near its internal
  // crossover size and can return singular values that are badly wrong while
  // looking plausible. Jacobi costs nothing at these sizes and is exact.
  if (std::min(a.rows(), a.cols()) <= 32) return jacobi_svd(a);

  Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw DecompositionError("SVD did not converge for a " + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " matrix",
                             a.rows(), a.cols());

  // Misfactorizations redistribute spectral energy; the Frobenius identity
  // sum(sigma_i^2) = |A|_F^2 catches them at O(mn) cost. Fall back to the
  // exact kernel on violation.
  const double energy = a.squaredNorm();
  const double sigma_energy = svd.singularValues().squaredNorm();
  if (std::abs(sigma_energy - energy) > 1e-10 * energy) return jacobi_svd(a);

  SvdFactor f;
  f.u = svd.matrixU();
  f.sigma = svd.singularValues();
  f.v = svd.matrixV();
  return f;
}

ThinQr qr_thin(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    throw std::invalid_argument("qr_thin: matrix is empty");

  const Index p = std::min(a.rows(), a.cols());
  Eigen::HouseholderQR<DenseMatrix> qr(a);

  ThinQr out;
  out.q = qr.householderQ() * DenseMatrix::Identity(a.rows(), p);
  out.r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  return out;
}

}  // namespace hsvd
