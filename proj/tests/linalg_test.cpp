#include "support.hpp"

namespace tiltkit::test {
namespace {

class LinalgTest : public ::testing::TestWithParam<FieldSpec> {
 protected:
  FieldSpec f = GetParam();
  std::mt19937_64 rng{7};

  /// Random r x c matrix of rank at most k.
  Matrix low_rank(std::size_t r, std::size_t c, std::size_t k) {
    return random_matrix(rng, f, r, k) * random_matrix(rng, f, k, c);
  }
};

TEST_P(LinalgTest, RankNullity) {
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 6;
    const std::size_t c = 1 + (trial * 5) % 7;
    Matrix m = low_rank(r, c, 1 + trial % 4);
    const std::size_t rk = rank(m);
    EXPECT_EQ(rk, naive_rank(m));
    Matrix k = solve_right_kernel(m);
    EXPECT_EQ(k.rows() + rk, r);
    EXPECT_TRUE((k * m).is_zero());
    EXPECT_EQ(naive_rank(k), k.rows());
    EXPECT_EQ(row_basis(m).rows(), rk);
  }
}

TEST_P(LinalgTest, SolveConsistentSystems) {
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = low_rank(5, 4, 3);
    Matrix x = random_matrix(rng, f, 2, 5);
    Matrix b = x * a;
    LinearSolution s = solve_linear_system(a, b);
    ASSERT_TRUE(s.particular);
    EXPECT_EQ(*s.particular * a, b);
    EXPECT_TRUE((s.kernel * a).is_zero());
  }
}

TEST_P(LinalgTest, InconsistentSystemHasNoSolution) {
  Matrix a = Matrix{{1, 0}, {2, 0}}.in_field(f);
  Matrix b = Matrix{{0, 1}}.in_field(f);
  EXPECT_FALSE(solve_linear_system(a, b).particular);
}

TEST_P(LinalgTest, InverseOfInvertible) {
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(rng, f, 4, 4);
    auto inv = inverse(m);
    ASSERT_EQ(inv.has_value(), naive_rank(m) == 4);
    if (inv) EXPECT_EQ(m * *inv, Matrix::identity(4).in_field(f));
  }
  EXPECT_FALSE(inverse(low_rank(3, 3, 2)));
}

TEST_P(LinalgTest, SumAndIntersectionDimensions) {
  for (int trial = 0; trial < 20; ++trial) {
    Matrix u = row_basis(low_rank(3, 6, 3));
    Matrix w = row_basis(low_rank(4, 6, 4));
    const std::size_t s = sum_subspaces(u, w).rows();
    const std::size_t i = intersect_subspaces(u, w).rows();
    EXPECT_EQ(s + i, u.rows() + w.rows());
  }
}

TEST_P(LinalgTest, QuotientAndSubquotient) {
  Matrix sub = row_basis(low_rank(2, 5, 2));
  QuotientBasis q = quotient_basis(5, sub);
  EXPECT_EQ(q.section.rows(), 5 - sub.rows());
  EXPECT_TRUE((sub * q.projection).is_zero());
  EXPECT_EQ(q.section * q.projection, Matrix::identity(q.section.rows()).in_field(f));

  Matrix z = Matrix::vstack(sub, row_basis(low_rank(1, 5, 1)));
  Subquotient h = subquotient(5, z, sub);
  EXPECT_EQ(h.dim(), rank(z) - sub.rows());
  for (std::size_t r = 0; r < sub.rows(); ++r) EXPECT_TRUE(h.class_of(sub.row(r))->is_zero());
}

TEST_P(LinalgTest, FieldArithmetic) {
  Scalar half = parse_scalar("1/2", f);
  EXPECT_EQ(half + half, Scalar::one(f));
  EXPECT_EQ(half * Scalar::from_int(2, f), Scalar::one(f));
  EXPECT_EQ(parse_scalar("-2/5", f) * Scalar::from_int(5, f), Scalar::from_int(-2, f));
  if (!f.is_rational()) {
    EXPECT_EQ(half.as_residue(), 51u);
    EXPECT_TRUE(Scalar::from_int(101, f).is_zero());
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, LinalgTest, both_fields(), field_label);

TEST(Field, RejectsComposite) { EXPECT_THROW(FieldSpec::prime(100), InputError); }

}  // namespace
}  // namespace tiltkit::test
