#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ncgerm;

TEST(Scalar, ParseAndFormat) {
    EXPECT_EQ(parse_scalar("3/6"), oracle::frac(1, 2));
    EXPECT_EQ(parse_scalar("-4"), Scalar(-4));
    EXPECT_EQ(format_scalar(Scalar(3)), "3/1");
    EXPECT_EQ(format_scalar(oracle::frac(-2, 4)), "-1/2");
    EXPECT_THROW(parse_scalar("1.5"), ParseError);
    EXPECT_THROW(parse_scalar("1/0"), ParseError);
    EXPECT_THROW(parse_scalar(""), ParseError);
}

TEST(Rank, SmallExamples) {
    EXPECT_EQ(rank(Mat{{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(rank(Mat{{1, 0}, {0, 1}}), 2u);
    EXPECT_EQ(rank(Mat(3, 2)), 0u);
    EXPECT_EQ(rank(Mat{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 2u);
}

TEST(SolveLinear, ConsistentWithKernel) {
    Mat a{{1, 1, 0}, {0, 1, 1}};
    Mat b{{2}, {3}};
    LinearSolution sol = solve_linear(a, b);
    ASSERT_TRUE(sol.x);
    EXPECT_EQ(a * *sol.x, b);
    ASSERT_EQ(sol.kernel.size(), 1u);
    EXPECT_TRUE((a * sol.kernel.front()).is_zero());
}

TEST(SolveLinear, InconsistentStillReportsKernel) {
    Mat a{{1, 1}, {1, 1}};
    LinearSolution sol = solve_linear(a, Mat{{1}, {2}});
    EXPECT_FALSE(sol.x);
    ASSERT_EQ(sol.kernel.size(), 1u);
    EXPECT_TRUE((a * sol.kernel.front()).is_zero());
    EXPECT_THROW(solve_linear(a, Mat{{1}}), DimensionMismatch);
}

TEST(MatrixInverse, RandomInvertible) {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        Mat m = oracle::random_mat(rng, 1 + t % 4, 5);
        if (!is_invertible(m)) {
            EXPECT_THROW(matrix_inverse(m), SingularMatrix);
            continue;
        }
        Mat inv = matrix_inverse(m);
        EXPECT_EQ(m * inv, Mat::identity(m.rows()));
        EXPECT_EQ(inv * m, Mat::identity(m.rows()));
        ++checked;
    }
    EXPECT_GT(checked, 20);
}

TEST(MatrixInverse, SingularAndShape) {
    EXPECT_THROW(matrix_inverse(Mat{{1, 2}, {2, 4}}), SingularMatrix);
    EXPECT_THROW(matrix_inverse(Mat(2, 3)), DimensionMismatch);
    EXPECT_EQ(matrix_inverse(Mat{{2}}), (Mat{{oracle::frac(1, 2)}}));
}

TEST(Subspace, MembershipCoordinatesIntersection) {
    std::vector<Vec> a{{1, 0, 0}, {0, 1, 0}}, b{{0, 1, 0}, {0, 0, 1}};
    Subspace sa(a, 3);
    EXPECT_EQ(sa.dim(), 2u);
    EXPECT_TRUE(sa.contains(Vec{3, -2, 0}));
    EXPECT_FALSE(sa.contains(Vec{0, 0, 1}));
    auto i = intersect(a, b, 3);
    ASSERT_EQ(i.size(), 1u);
    EXPECT_TRUE(Subspace(i, 3) == Subspace(std::vector<Vec>{{0, 1, 0}}, 3));
    Coordinates co(a, 3);
    auto c = co.of(Vec{2, 5, 0});
    ASSERT_TRUE(c);
    EXPECT_EQ((*c)[0], 2);
    EXPECT_EQ((*c)[1], 5);
    EXPECT_FALSE(co.of(Vec{0, 0, 1}));
}

TEST(Matrix, KronAndDirectSum) {
    Mat a{{1, 2}, {3, 4}}, b{{0, 1}, {1, 0}};
    Mat k = kron(a, b);
    EXPECT_EQ(k.rows(), 4u);
    EXPECT_EQ(k(0, 1), 1);
    EXPECT_EQ(k(3, 2), 4);
    Mat d = direct_sum(a, Mat{{7}});
    EXPECT_EQ(d(2, 2), 7);
    EXPECT_EQ(d(0, 2), 0);
    EXPECT_EQ(a.trace(), 5);
}
