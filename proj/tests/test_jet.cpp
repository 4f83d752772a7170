#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ncgerm;

namespace {

MatTuple e12_e21() { return MatTuple(2, {Mat::unit(2, 0, 1), Mat::unit(2, 1, 0)}); }

NcPoly x(int j, std::size_t g = 2) { return NcPoly::letter(g, j); }

} // namespace

TEST(Evaluate, MatchesNaiveProducts) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        NcPoly p = oracle::random_poly(rng, 3, 4, 10);
        MatTuple y = oracle::random_point(rng, 1 + t % 3, 3);
        EXPECT_EQ(evaluate(p, y), oracle::naive_eval(p, y));
    }
}

TEST(JetEval, MatchesBidiagonalBlocks) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 12; ++t) {
        const std::size_t s = 1 + t % 2;
        NcPoly p = oracle::random_poly(rng, 2, 3, 6);
        MatTuple y = oracle::random_point(rng, s, 2);
        Jet jt = jet_eval(p, y, 2);
        ASSERT_EQ(jt.order(), 2u);
        EXPECT_EQ(jt.value(), oracle::naive_eval(p, y));
        for (std::size_t l = 1; l <= 2; ++l) {
            const MultiMap& f = jt.maps[l];
            for (std::size_t in = 0; in < f.inputs(); ++in) {
                std::vector<MatTuple> z;
                for (auto b : f.split_input(in)) z.push_back(oracle::unit_tuple(s, 2, b));
                EXPECT_EQ(f.value(in), oracle::naive_differential(p, y, z));
            }
        }
    }
}

TEST(JetEval, LinearityAndProductRule) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 8; ++t) {
        NcPoly p = oracle::random_poly(rng, 2, 3, 5), q = oracle::random_poly(rng, 2, 2, 4);
        MatTuple y = oracle::random_point(rng, 2, 2);
        EXPECT_EQ(jet_eval(p + q, y, 2), jet_eval(p, y, 2) + jet_eval(q, y, 2));
        EXPECT_EQ(jet_eval(p * q, y, 2), jet_mul(jet_eval(p, y, 2), jet_eval(q, y, 2)));
    }
}

TEST(JetEval, FirstDifferentialOfCommutator) {
    // d[x1,x2](Z) = Z1 Y2 + Y1 Z2 - Z2 Y1 - Y2 Z1.
    MatTuple y = e12_e21();
    Jet jt = jet_eval(x(0) * x(1) - x(1) * x(0), y, 1);
    MatTuple z(2, {Mat{{1, 2}, {3, 4}}, Mat{{0, 1}, {-1, 2}}});
    Mat expect = z[0] * y[1] + y[0] * z[1] - z[1] * y[0] - y[1] * z[0];
    EXPECT_EQ(jt.maps[1].apply({z}), expect);
}

TEST(JetInverse, InvertsConstantTermAndProduct) {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 6; ++t) {
        MatTuple y = oracle::random_point(rng, 2, 2);
        NcPoly p = oracle::random_poly(rng, 2, 2, 5) + NcPoly::constant(2, 5);
        Jet a = jet_eval(p, y, 2);
        if (!is_invertible(a.value())) continue;
        Jet b = jet_inverse(a);
        EXPECT_EQ(jet_mul(a, b), constant_jet(y, 2));
        EXPECT_EQ(jet_mul(b, a), constant_jet(y, 2));
    }
    EXPECT_THROW(jet_inverse(zero_jet(e12_e21(), 1)), NotInvertible);
}

TEST(JetMul, RejectsMismatchedBases) {
    MatTuple y = e12_e21();
    EXPECT_THROW(jet_mul(zero_jet(y, 1), zero_jet(y, 2)), PreconditionFailed);
    EXPECT_THROW(jet_mul(zero_jet(y, 1), zero_jet(direct_sum(y, y), 1)), PreconditionFailed);
}

TEST(Ampliate, DirectSumDifferentials) {
    std::mt19937_64 rng(25);
    for (int t = 0; t < 4; ++t) {
        NcPoly p = oracle::random_poly(rng, 2, 3, 6);
        MatTuple y = oracle::random_point(rng, 1 + t % 2, 2);
        Jet small = jet_eval(p, y, 2), big = jet_eval(p, direct_sum(y, y), 2);
        for (std::size_t l = 0; l <= 2; ++l) EXPECT_EQ(big.maps[l], ampliate(small.maps[l], 2));
    }
}

TEST(Nilpotent, JointNilpotency) {
    EXPECT_TRUE(is_jointly_nilpotent(MatTuple(2, {Mat::unit(2, 0, 1), Mat(2, 2)})));
    EXPECT_FALSE(is_jointly_nilpotent(e12_e21()));
    Mat a = Mat::unit(3, 0, 1), b = Mat::unit(3, 1, 2), c = Mat::unit(3, 0, 2);
    EXPECT_TRUE(is_jointly_nilpotent(MatTuple(3, {a, b, c})));
    EXPECT_FALSE(is_jointly_nilpotent(MatTuple(3, {a, b, Mat::unit(3, 2, 0)})));
}

TEST(Transduction, BlockShiftIdentity) {
    std::mt19937_64 rng(26);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 1 + t % 2;
        NcSeries f = oracle::random_series(rng, 2, 4, 8);
        MatTuple X = oracle::random_point(rng, n, 2);
        std::vector<Scalar> alpha{oracle::draw(rng, 4), oracle::frac(oracle::draw(rng, 4), 3)};
        std::vector<Mat> comps;
        for (std::size_t j = 0; j < 2; ++j) {
            Mat m(2 * n, 2 * n);
            m.set_block(0, 0, X[j]);
            m.set_block(n, 0, Mat::scalar(n, alpha[j]));
            comps.push_back(m);
        }
        Mat lhs = evaluate(f, MatTuple(2 * n, comps));
        Mat rhs(2 * n, 2 * n);
        rhs.set_block(0, 0, evaluate(f, X));
        Mat low(n, n);
        for (int j = 0; j < 2; ++j) low += alpha[j] * evaluate(f.transduct(j), X);
        rhs.set_block(n, 0, low);
        rhs.set_block(n, n, Mat::scalar(n, f.poly().constant_term()));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(TensorGuard, EnvironmentCap) {
    MatTuple y = e12_e21();
    ::setenv("NCGERM_MEM_CAP", "100", 1);
    EXPECT_THROW(jet_eval(x(0), y, 3), ResourceLimit);
    ::unsetenv("NCGERM_MEM_CAP");
    EXPECT_NO_THROW(jet_eval(x(0), y, 3));
}
