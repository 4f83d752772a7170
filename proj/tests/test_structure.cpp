#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ncgerm;

namespace {

MatTuple e12_e21() { return MatTuple(2, {Mat::unit(2, 0, 1), Mat::unit(2, 1, 0)}); }
MatTuple scalar_pair(long a, long b) { return MatTuple(1, {Mat{{a}}, Mat{{b}}}); }

} // namespace

TEST(GeneratedAlgebra, Dimensions) {
    EXPECT_EQ(generated_algebra(e12_e21()).dim(), 4u);
    EXPECT_EQ(generated_algebra(MatTuple(2, {Mat{{1, 0}, {0, 2}}})).dim(), 2u);
    EXPECT_EQ(generated_algebra(MatTuple(2, {Mat::unit(2, 0, 1)})).dim(), 2u);
    AlgebraBasis a = generated_algebra(direct_sum(e12_e21(), scalar_pair(1, 2)));
    EXPECT_EQ(a.dim(), 5u);
    for (const auto& b : a.basis)
        for (const auto& c : a.basis) EXPECT_TRUE(a.contains(b * c));
}

TEST(Centralizer, CommutesWithEveryComponent) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 6; ++t) {
        MatTuple y = oracle::random_point(rng, 2, 1);
        y = direct_sum(y, oracle::random_point(rng, 1, 1));
        AlgebraBasis c = centralizer(y);
        for (const auto& m : c.basis)
            for (const auto& yj : y.components()) EXPECT_EQ(m * yj, yj * m);
    }
    EXPECT_EQ(centralizer(e12_e21()).dim(), 1u);
    EXPECT_EQ(centralizer(direct_sum(e12_e21(), e12_e21())).dim(), 4u);
}

TEST(Semisimple, JordanBlockIsNot) {
    EXPECT_FALSE(is_semisimple(MatTuple(2, {Mat::unit(2, 0, 1)})));
    EXPECT_TRUE(is_semisimple(MatTuple(2, {Mat{{1, 0}, {0, 2}}})));
    EXPECT_TRUE(is_semisimple(e12_e21()));
    EXPECT_FALSE(is_semisimple(MatTuple(2, {Mat{{1, 1}, {0, 1}}, Mat{{2, 0}, {0, 2}}})));
}

TEST(Irreducible, BurnsideCriterion) {
    EXPECT_TRUE(is_irreducible(e12_e21()));
    EXPECT_TRUE(is_irreducible(scalar_pair(3, 4)));
    EXPECT_FALSE(is_irreducible(direct_sum(e12_e21(), scalar_pair(0, 0))));
    // Rotation by 90 degrees: irreducible over Q, split over Q(i).
    IrreducibilityReport r = irreducibility(MatTuple(2, {Mat{{0, -1}, {1, 0}}}));
    EXPECT_FALSE(r.irreducible);
    EXPECT_TRUE(r.split_caveat);
    EXPECT_FALSE(irreducibility(MatTuple(2, {Mat{{1, 0}, {0, 2}}})).split_caveat);
}

TEST(Separated, SimilarBlocksAreNot) {
    MatTuple y = e12_e21();
    Mat p{{1, 1}, {0, 1}};
    MatTuple conj = conjugate(y, p, matrix_inverse(p));
    EXPECT_FALSE(are_separated({y, conj}));
    EXPECT_TRUE(are_separated({y, scalar_pair(1, 2)}));
    EXPECT_FALSE(are_separated({scalar_pair(1, 2), scalar_pair(1, 2)}));
    EXPECT_THROW(are_separated({MatTuple(2, {Mat::unit(2, 0, 1)})}), NotSemisimple);
}

TEST(BimoduleOps, InvariantsHold) {
    std::mt19937_64 rng(32);
    std::vector<MatTuple> points{e12_e21(), direct_sum(e12_e21(), scalar_pair(1, 2)),
                                 direct_sum(scalar_pair(0, 1), scalar_pair(0, 1)), oracle::random_point(rng, 2, 2)};
    for (const auto& y : points) {
        BimoduleOps ops = bimodule_ops(y);
        EXPECT_NO_THROW(verify_bimodule_ops(ops));
        EXPECT_EQ(ops.W.size(), rank(ad_operator(y)));
    }
}

TEST(BimoduleOps, IndependentOfCentralizerBasisOrder) {
    MatTuple y = direct_sum(e12_e21(), direct_sum(scalar_pair(1, 2), scalar_pair(1, 2)));
    BimoduleOptions rev;
    rev.reverse_basis = true;
    BimoduleOps a = bimodule_ops(y), b = bimodule_ops(y, rev);
    EXPECT_EQ(a.pi, b.pi);
    EXPECT_EQ(a.phi, b.phi);
}

TEST(BimoduleOps, RejectsNonSemisimple) {
    EXPECT_THROW(bimodule_ops(MatTuple(2, {Mat::unit(2, 0, 1), Mat(2, 2)})), NotSemisimple);
}
