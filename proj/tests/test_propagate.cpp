#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ncgerm;

namespace {

MatTuple e12_e21() { return MatTuple(2, {Mat::unit(2, 0, 1), Mat::unit(2, 1, 0)}); }
MatTuple scalar_pair(long a, long b) { return MatTuple(1, {Mat{{a}}, Mat{{b}}}); }

void check_propagation(const MatTuple& y, const NcPoly& p, std::size_t L, std::size_t M) {
    PropagationConfig cfg = make_config(y, jet_eval(p, y, L), M);
    Jet out = propagate_minimal(cfg);
    ASSERT_EQ(out.order(), M);
    EXPECT_TRUE(check_lac_chain(y, out).holds);
    EXPECT_TRUE(check_lac_truncated(y, out, M).holds);
    auto ker = kernel_of_pi(cfg.ops);
    oracle::AdaptedBasis ab = oracle::adapted_basis(y, cfg.ops);
    ASSERT_TRUE(ab.spans);
    for (std::size_t l = 0; l <= L; ++l) EXPECT_EQ(out.maps[l], cfg.seed.maps[l]);
    for (std::size_t l = L + 1; l <= M; ++l) {
        EXPECT_TRUE(vanishes_on(out.maps[l], ker)) << "order " << l;
        EXPECT_EQ(out.maps[l], oracle::adapted_solution(y, ab, out.maps[l - 1])) << "order " << l;
    }
}

} // namespace

TEST(Propagation, MinimalExtensionIsUnique) {
    std::mt19937_64 rng(61);
    std::vector<MatTuple> points{e12_e21(), direct_sum(scalar_pair(0, 1), scalar_pair(2, 3)),
                                 MatTuple(2, {Mat{{1, 2}, {0, 3}}, Mat{{0, 1}, {1, 1}}})};
    for (const auto& y : points) {
        ASSERT_TRUE(is_semisimple(y));
        for (int t = 0; t < 2; ++t) check_propagation(y, oracle::random_poly(rng, 2, 3, 5), 1, 4);
    }
}

TEST(Propagation, MixedBlockSizes) {
    std::mt19937_64 rng(62);
    MatTuple y = direct_sum(e12_e21(), scalar_pair(1, 2));
    check_propagation(y, oracle::random_poly(rng, 2, 3, 5), 1, 3);
    check_propagation(y, oracle::random_poly(rng, 2, 3, 5), 2, 3);
}

TEST(Propagation, ConstantSeedAtOrderZero) {
    MatTuple y = e12_e21();
    check_propagation(y, NcPoly::letter(2, 0) * NcPoly::letter(2, 1), 0, 3);
}

TEST(Propagation, Preconditions) {
    MatTuple y = e12_e21();
    Jet seed = jet_eval(NcPoly::letter(2, 0), y, 1);
    EXPECT_THROW(propagate_minimal(make_config(y, seed, 0)), PreconditionFailed);
    seed.maps[1].at(0, 0, 0) += 1;
    EXPECT_THROW(propagate_minimal(make_config(y, seed, 2)), PreconditionFailed);
    EXPECT_THROW(make_config(MatTuple(2, {Mat::unit(2, 0, 1), Mat(2, 2)}), zero_jet(y, 1), 2), NotSemisimple);
}

TEST(Embedding, NilpotentGerm) {
    MatTuple y = e12_e21();
    auto jets = embed_algebra(y, {Mat::unit(2, 0, 1)}, 4);
    ASSERT_EQ(jets.size(), 1u);
    const Jet& f = jets.front();
    EXPECT_FALSE(f.is_zero());
    EXPECT_TRUE(jet_mul(f, f).is_zero());
    EXPECT_TRUE(check_lac_chain(y, f).holds);
}

TEST(Embedding, MultiplicativeOnRandomPairs) {
    std::mt19937_64 rng(63);
    MatTuple y = direct_sum(e12_e21(), scalar_pair(1, 2));
    AlgebraBasis sy = generated_algebra(y);
    for (int t = 0; t < 3; ++t) {
        Mat a(3, 3), b(3, 3);
        for (const auto& m : sy.basis) {
            a += Scalar(oracle::draw(rng, 3)) * m;
            b += Scalar(oracle::draw(rng, 3)) * m;
        }
        auto jets = embed_algebra(y, {a, b, a * b}, 2);
        EXPECT_EQ(jet_mul(jets[0], jets[1]), jets[2]);
    }
    EXPECT_THROW(embed_algebra(y, {Mat::unit(3, 0, 2)}, 2), NotInAlgebra);
    EXPECT_THROW(embed_algebra(MatTuple(2, {Mat::unit(2, 0, 1)}), {Mat::identity(2)}, 2), NotSemisimple);
}

TEST(Growth, ClosedForms) {
    using namespace oracle;
    for (long a : {1, 2})
        for (long b : {2, 3, 5}) {
            const Scalar alpha(a), beta(b);
            GrowthSeq gs = growth_bound(alpha, beta, 12);
            EXPECT_EQ(gs.at(0, 0), 1);
            EXPECT_EQ(gs.at(0, -1), 1);
            for (std::size_t l = 2; l <= 12; ++l) {
                const Scalar lead = 2 * power(alpha, l) * power(beta, l);
                for (std::size_t m = 1; m <= l; ++m)
                    EXPECT_EQ(gs.at(l, static_cast<long>(m)), lead * at(shift_down(one_plus_t_pow(l - 2), m - 1), beta))
                        << "l=" << l << " m=" << m;
                EXPECT_EQ(gs.at(l, 0), 2 * power(alpha, l) * power(beta, l + 1) * power(beta + 1, l - 2));
                EXPECT_EQ(gs.at(l, -1), gs.at(l, 0));
            }
        }
    EXPECT_THROW(growth_bound(0, 2, 3), PreconditionFailed);
}

TEST(Growth, BinomialIdentities) {
    using namespace oracle;
    for (std::size_t l = 1; l <= 12; ++l)
        for (std::size_t m = 1; m <= 12; ++m) {
            EXPECT_EQ(add(shift_down(one_plus_t_pow(l - 1), m - 1), shift_down(one_plus_t_pow(l - 1), m)),
                      shift_down(one_plus_t_pow(l), m));
            Uni lhs = add(shift_down(one_plus_t_pow(l), m), scaled(times_t(shift_down(one_plus_t_pow(l), m + 1)), -1));
            Uni rhs = trim(Uni{binomial(l, m)});
            EXPECT_EQ(lhs, rhs) << "l=" << l << " m=" << m;
        }
}

TEST(SeparatingExample, VanishesOnBlockDiagonal) {
    SeparatingExample ex = separating_example(e12_e21(), scalar_pair(1, 2), 3);
    EXPECT_EQ(ex.block_diagonal.size(), 10u);
    EXPECT_FALSE(ex.jet.maps[1].is_zero());
    for (std::size_t l = 1; l <= 3; ++l) EXPECT_TRUE(vanishes_on(ex.jet.maps[l], ex.block_diagonal)) << l;
    EXPECT_TRUE(check_lac_chain(ex.jet.Y, ex.jet).holds);
    EXPECT_THROW(separating_example(e12_e21(), e12_e21(), 2), NotSeparated);
}
