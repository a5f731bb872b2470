#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "hsvd/kernels.hpp"
#include "test_support.hpp"

using namespace hsvd;
using test::orthonormality_defect;
using test::random_matrix;

TEST_CASE("full_svd of the identity") {
  const SvdFactor f = full_svd(DenseMatrix::Identity(2, 2));
  CHECK(f.sigma(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.sigma(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(orthonormality_defect(*f.u) < 1e-12);
  CHECK(orthonormality_defect(*f.v) < 1e-12);
  CHECK((reconstruct(f) - DenseMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("full_svd absorbs signs into the vectors") {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = -2.0;
  const SvdFactor f = full_svd(a);
  CHECK(f.sigma(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.sigma(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("full_svd of a random 5x3 matrix reconstructs it") {
  const DenseMatrix a = random_matrix(5, 3, 7);
  const SvdFactor f = full_svd(a);
  CHECK(f.u->cols() == 3);
  CHECK(f.v->cols() == 3);
  CHECK(orthonormality_defect(*f.u) < 1e-10);
  CHECK(orthonormality_defect(*f.v) < 1e-10);
  CHECK(frobenius_norm(reconstruct(f) - a) < 1e-12 * frobenius_norm(a));
}

TEST_CASE("full_svd spectrum is transpose invariant") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseMatrix a = random_matrix(3 + seed % 48, 50 - seed % 37, 100 + seed);
    const Vector s1 = full_svd(a).sigma;
    const Vector s2 = full_svd(DenseMatrix(a.transpose())).sigma;
    REQUIRE(s1.size() == s2.size());
    CHECK((s1 - s2).cwiseAbs().maxCoeff() < 1e-10 * s1(0));
  }
}

TEST_CASE("full_svd sigma is nonincreasing and nonnegative") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index m = 1 + seed % 17, n = 1 + (seed * 7) % 13;
    const Vector s = full_svd(random_matrix(m, n, 300 + seed)).sigma;
    for (Index i = 0; i < s.size(); ++i) {
      CHECK(s(i) >= 0.0);
      if (i > 0) CHECK(s(i) <= s(i - 1));
    }
  }
}

TEST_CASE("qr_thin of an already orthonormal matrix") {
  DenseMatrix a = DenseMatrix::Zero(3, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  const ThinQr qr = qr_thin(a);
  CHECK((qr.q.cwiseAbs() - a).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((qr.r.cwiseAbs() - DenseMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("qr_thin normalizes a single column") {
  DenseMatrix a(2, 1);
  a << 3.0, 4.0;
  const ThinQr qr = qr_thin(a);
  CHECK(std::abs(qr.r(0, 0)) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(std::abs(qr.q(0, 0)) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::abs(qr.q(1, 0)) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("qr_thin reconstructs a random 6x3 matrix") {
  const DenseMatrix a = random_matrix(6, 3, 11);
  const ThinQr qr = qr_thin(a);
  CHECK(qr.q.rows() == 6);
  CHECK(qr.q.cols() == 3);
  CHECK(qr.r.rows() == 3);
  CHECK(orthonormality_defect(qr.q) < 1e-10);
  for (Index i = 0; i < qr.r.rows(); ++i)
    for (Index j = 0; j < i; ++j) CHECK(qr.r(i, j) == 0.0);
  CHECK(frobenius_norm(qr.q * qr.r - a) < 1e-12 * frobenius_norm(a));
}

TEST_CASE("qr_thin preserves singular values") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseMatrix a = random_matrix(20, 8, 500 + seed);
    const Vector s_a = full_svd(a).sigma;
    const Vector s_r = full_svd(qr_thin(a).r).sigma;
    CHECK((s_a - s_r).cwiseAbs().maxCoeff() < 1e-10 * s_a(0));
  }
}

TEST_CASE("frobenius_norm basics") {
  DenseMatrix a(1, 2);
  a << 3.0, 4.0;
  CHECK(frobenius_norm(a) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(frobenius_norm(DenseMatrix::Zero(4, 7)) == 0.0);
  CHECK(frobenius_norm(DenseMatrix::Identity(9, 9)) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("singular values match the Gram spectrum oracle across sizes") {
  // Independent oracle: sqrt of the eigenvalues of A^T A. Covers both sides
  // of the internal small/large kernel crossover.
  for (const Index n : {Index(8), Index(16), Index(31), Index(32), Index(33), Index(48)}) {
    const DenseMatrix a = random_matrix(2 * n, n, 5000 + static_cast<std::uint64_t>(n));
    const SvdFactor f = full_svd(a);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a.transpose() * a);
    REQUIRE(es.info() == Eigen::Success);
    for (Index i = 0; i < n; ++i) {
      const double oracle = std::sqrt(std::max(es.eigenvalues()(n - 1 - i), 0.0));
      CHECK(f.sigma(i) == doctest::Approx(oracle).epsilon(1e-10));
    }
    CHECK(f.sigma.squaredNorm() == doctest::Approx(a.squaredNorm()).epsilon(1e-12));
  }
}
