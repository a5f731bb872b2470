#include <doctest.h>

#include "hsvd/kernels.hpp"
#include "hsvd/merge.hpp"
#include "test_support.hpp"

using namespace hsvd;
using test::max_sigma_rel_diff;
using test::orthonormality_defect;
using test::random_factor;
using test::random_matrix;
using test::subspace_angle_sin;

namespace {

// Exact truncated factor of a concrete block, both sides present.
SvdFactor factor_of(const DenseMatrix& x) { return full_svd(x); }

SvdFactor drop_v(SvdFactor f) {
  f.v.reset();
  return f;
}

SvdFactor drop_u(SvdFactor f) {
  f.u.reset();
  return f;
}

}  // namespace

TEST_CASE("merging a column with itself scales sigma by sqrt(2)") {
  DenseMatrix e1 = DenseMatrix::Zero(4, 1);
  e1(0, 0) = 1.0;
  SvdFactor f;
  f.u = e1;
  f.sigma = Vector::Constant(1, 1.0);
  const SvdFactor merged = merge_pair_qr(f, f, MergeOrientation::ColumnConcat, 0.0);
  REQUIRE(merged.rank() >= 1);
  CHECK(merged.sigma(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs((*merged.u)(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  for (Index i = 1; i < merged.sigma.size(); ++i) CHECK(merged.sigma(i) < 1e-12);
}

TEST_CASE("merging orthogonal unit columns keeps both singular values") {
  DenseMatrix e1 = DenseMatrix::Zero(4, 1), e2 = DenseMatrix::Zero(4, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  SvdFactor f1, f2;
  f1.u = e1;
  f1.sigma = Vector::Constant(1, 1.0);
  f2.u = e2;
  f2.sigma = Vector::Constant(1, 1.0);
  for (auto* merge : {&merge_pair_naive, &merge_pair_qr}) {
    const SvdFactor merged = (*merge)(f1, f2, MergeOrientation::ColumnConcat, 0.0, std::nullopt);
    REQUIRE(merged.rank() == 2);
    CHECK(merged.sigma(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(merged.sigma(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("naive merge matches the concatenation oracle") {
  const DenseMatrix x1 = random_matrix(20, 6, 51), x2 = random_matrix(20, 6, 52);
  DenseMatrix both(20, 12);
  both.leftCols(6) = x1;
  both.rightCols(6) = x2;
  const Vector oracle = full_svd(both).sigma;

  const SvdFactor merged = merge_pair_naive(drop_v(factor_of(x1)), drop_v(factor_of(x2)),
                                            MergeOrientation::ColumnConcat, 0.0);
  REQUIRE(merged.rank() == oracle.size());
  CHECK((merged.sigma - oracle).cwiseAbs().maxCoeff() < 1e-10 * oracle(0));
  CHECK_FALSE(merged.has_v());
  CHECK(merged.has_u());
}

TEST_CASE("naive merge matches the stacking oracle for RowConcat") {
  const DenseMatrix x1 = random_matrix(5, 14, 53), x2 = random_matrix(7, 14, 54);
  DenseMatrix both(12, 14);
  both.topRows(5) = x1;
  both.bottomRows(7) = x2;
  const Vector oracle = full_svd(both).sigma;

  const SvdFactor merged = merge_pair_naive(drop_u(factor_of(x1)), drop_u(factor_of(x2)),
                                            MergeOrientation::RowConcat, 0.0);
  REQUIRE(merged.rank() == oracle.size());
  CHECK((merged.sigma - oracle).cwiseAbs().maxCoeff() < 1e-10 * oracle(0));
  CHECK_FALSE(merged.has_u());
  CHECK(merged.has_v());
}

TEST_CASE("qr merge with an identical basis stays within the subspace") {
  const DenseMatrix u = test::random_orthonormal(10, 3, 55);
  SvdFactor f1, f2;
  f1.u = u;
  f1.sigma = test::geometric_sigma(3, 2.0, 0.5);
  f2.u = u;
  f2.sigma = test::geometric_sigma(3, 1.0, 0.25);
  const SvdFactor naive = merge_pair_naive(f1, f2, MergeOrientation::ColumnConcat, 0.0);
  const SvdFactor fast = merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0);
  CHECK(orthonormality_defect(*fast.u) < 1e-8);
  // Rank cannot exceed the shared 3-dimensional subspace.
  Index effective = fast.rank();
  while (effective > 0 && fast.sigma(effective - 1) < 1e-12) --effective;
  CHECK(effective <= 3);
  CHECK((fast.sigma.head(3) - naive.sigma.head(3)).cwiseAbs().maxCoeff() < 1e-10 * naive.sigma(0));
}

TEST_CASE("qr merge of mutually orthogonal subspaces unions the spectra") {
  DenseMatrix u1 = DenseMatrix::Zero(8, 2), u2 = DenseMatrix::Zero(8, 2);
  u1(0, 0) = u1(1, 1) = 1.0;
  u2(2, 0) = u2(3, 1) = 1.0;
  SvdFactor f1, f2;
  f1.u = u1;
  f1.sigma = Vector(2);
  f1.sigma << 5.0, 2.0;
  f2.u = u2;
  f2.sigma = Vector(2);
  f2.sigma << 4.0, 3.0;
  const SvdFactor merged = merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0);
  REQUIRE(merged.rank() == 4);
  Vector expected(4);
  expected << 5.0, 4.0, 3.0, 2.0;
  CHECK((merged.sigma - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("qr merge equals the naive merge over 100 random pairs") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const Index m = 8 + trial % 23;                  // shared dimension
    const Index k = 1 + trial % 5, l = 1 + (trial * 3) % 5;
    const bool column = trial % 2 == 0;
    const MergeOrientation orient =
        column ? MergeOrientation::ColumnConcat : MergeOrientation::RowConcat;

    SvdFactor f1 = random_factor(column ? m : 6, column ? 6 : m, k, 1000 + 7 * trial);
    SvdFactor f2 = random_factor(column ? m : 9, column ? 9 : m, l, 2000 + 7 * trial);
    if (column) {
      f1.v.reset();
      f2.v.reset();
    } else {
      f1.u.reset();
      f2.u.reset();
    }

    const SvdFactor naive = merge_pair_naive(f1, f2, orient, 0.0);
    const SvdFactor fast = merge_pair_qr(f1, f2, orient, 0.0);
    REQUIRE(fast.rank() == naive.rank());
    CHECK(max_sigma_rel_diff(fast.sigma, naive.sigma, 1e-6) < 1e-9);

    const DenseMatrix& bn = column ? *naive.u : *naive.v;
    const DenseMatrix& bf = column ? *fast.u : *fast.v;
    CHECK(orthonormality_defect(bf) < 1e-8);
    CHECK(subspace_angle_sin(bn, bf) < 1e-7);
    CHECK(subspace_angle_sin(bf, bn) < 1e-7);
  }
}

TEST_CASE("merged top singular value never shrinks") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SvdFactor f1 = random_factor(15, 4, 3, 3000 + trial);
    SvdFactor f2 = random_factor(15, 4, 4, 4000 + trial);
    f1.v.reset();
    f2.v.reset();
    const SvdFactor merged = merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0);
    CHECK(merged.sigma(0) >= std::max(f1.sigma(0), f2.sigma(0)) - 1e-10);
  }
}

TEST_CASE("merge energy is additive at gamma zero") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SvdFactor f1 = random_factor(18, 5, 4, 5000 + trial);
    SvdFactor f2 = random_factor(18, 6, 5, 6000 + trial);
    f1.v.reset();
    f2.v.reset();
    const SvdFactor merged = merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0);
    const double expected = f1.sigma.squaredNorm() + f2.sigma.squaredNorm();
    CHECK(merged.sigma.squaredNorm() == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("merge is commutative up to ordering of sigma") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SvdFactor f1 = random_factor(16, 5, 3, 7000 + trial);
    SvdFactor f2 = random_factor(16, 4, 5, 8000 + trial);
    f1.v.reset();
    f2.v.reset();
    const SvdFactor a = merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0);
    const SvdFactor b = merge_pair_qr(f2, f1, MergeOrientation::ColumnConcat, 0.0);
    REQUIRE(a.rank() == b.rank());
    CHECK((a.sigma - b.sigma).cwiseAbs().maxCoeff() < 1e-10 * a.sigma(0));
  }
}

TEST_CASE("merge truncates with gamma like truncate_factor") {
  SvdFactor f1 = random_factor(12, 5, 3, 9100);
  SvdFactor f2 = random_factor(12, 5, 3, 9200);
  f1.v.reset();
  f2.v.reset();
  const SvdFactor untruncated = merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0);
  const double gamma = 0.3;
  const SvdFactor merged = merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, gamma);
  const SvdFactor expected = truncate_factor(untruncated, gamma);
  REQUIRE(merged.rank() == expected.rank());
  CHECK((merged.sigma - expected.sigma).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("merge respects the max_rank cap") {
  SvdFactor f1 = random_factor(12, 5, 4, 9300);
  SvdFactor f2 = random_factor(12, 5, 4, 9400);
  f1.v.reset();
  f2.v.reset();
  for (auto* merge : {&merge_pair_naive, &merge_pair_qr}) {
    const SvdFactor merged = (*merge)(f1, f2, MergeOrientation::ColumnConcat, 0.0, Index{3});
    CHECK(merged.rank() == 3);
  }
}

TEST_CASE("fallback when combined rank exceeds the shared dimension") {
  // 5-dimensional shared space, ranks 4 + 4: [U1 Uo] cannot hold 8
  // orthonormal columns, so the naive route must take over.
  SvdFactor f1 = random_factor(5, 4, 4, 9500);
  SvdFactor f2 = random_factor(5, 4, 4, 9600);
  f1.v.reset();
  f2.v.reset();
  const SvdFactor naive = merge_pair_naive(f1, f2, MergeOrientation::ColumnConcat, 0.0);
  const SvdFactor fast = merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0);
  REQUIRE(fast.rank() == naive.rank());
  CHECK(fast.rank() <= 5);
  CHECK((fast.sigma - naive.sigma).cwiseAbs().maxCoeff() < 1e-10 * naive.sigma(0));
  CHECK(orthonormality_defect(*fast.u) < 1e-8);
}

TEST_CASE("merging degenerate zero factors stays total") {
  SvdFactor zero;
  zero.u = test::random_orthonormal(10, 1, 9700);
  zero.sigma = Vector::Zero(1);
  zero.degenerate = true;
  SvdFactor f = random_factor(10, 4, 3, 9800);
  f.v.reset();
  const SvdFactor merged = merge_pair_qr(zero, f, MergeOrientation::ColumnConcat, 1e-3);
  REQUIRE(merged.rank() == 3);
  CHECK((merged.sigma - f.sigma).cwiseAbs().maxCoeff() < 1e-10);

  const SvdFactor both = merge_pair_qr(zero, zero, MergeOrientation::ColumnConcat, 1e-3);
  CHECK(both.rank() == 1);
  CHECK(both.sigma(0) < 1e-14);
}

TEST_CASE("merge rejects mismatched dimensions") {
  SvdFactor f1 = random_factor(10, 4, 2, 9900);
  SvdFactor f2 = random_factor(11, 4, 2, 9901);
  f1.v.reset();
  f2.v.reset();
  CHECK_THROWS_AS(merge_pair_naive(f1, f2, MergeOrientation::ColumnConcat, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0),
                  std::invalid_argument);
}

TEST_CASE("merge rejects a missing carried basis") {
  SvdFactor f1 = random_factor(10, 4, 2, 9902);
  SvdFactor f2 = random_factor(10, 4, 2, 9903);
  f1.u.reset();
  CHECK_THROWS_AS(merge_pair_qr(f1, f2, MergeOrientation::ColumnConcat, 0.0),
                  std::invalid_argument);
}
