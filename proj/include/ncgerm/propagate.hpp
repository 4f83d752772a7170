#ifndef NCGERM_PROPAGATE_HPP
#define NCGERM_PROPAGATE_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/jet.hpp"
#include "ncgerm/lac.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/multimap.hpp"
#include "ncgerm/structure.hpp"

namespace ncgerm {

struct PropagationConfig {
    MatTuple Y;
    BimoduleOps ops;
    Jet seed;              // order L
    std::size_t extend_to; // M >= L
};

inline PropagationConfig make_config(const MatTuple& y, const Jet& seed, std::size_t extend_to,
                                     const BimoduleOptions& opt = {}) {
    return PropagationConfig{y, bimodule_ops(y, opt), seed, extend_to};
}

/// Minimal propagation: extends a truncated LAC sequence so that every higher
/// map vanishes on (ker pi)^l. f_l is assembled from the slot m carrying the
/// first [M_s,Y]-component: earlier slots are projected by sigma, slot m is
/// replaced by [phi(pi Z), Y] and the matching chain rule is applied.
inline Jet propagate_minimal(const PropagationConfig& cfg) {
    const MatTuple& y = cfg.Y;
    const std::size_t L = cfg.seed.order(), M = cfg.extend_to;
    if (cfg.seed.Y != y) throw PreconditionFailed("seed is pinned to a different basepoint");
    if (cfg.ops.Y != y) throw PreconditionFailed("bimodule data belongs to a different point");
    if (M < L) throw PreconditionFailed("extend_to is below the seed order");
    LacReport rep = check_lac_truncated(y, cfg.seed, L);
    if (!rep.holds)
        throw PreconditionFailed("seed violates the truncated conditions (" + rep.violations.front().tag + ", order " +
                                 std::to_string(rep.violations.front().order) + ")");
    const Mat& psi = cfg.ops.phi;
    const Mat& sigma = cfg.ops.sigma;
    Jet out = cfg.seed;
    for (std::size_t l = L + 1; l <= M; ++l) {
        const MultiMap& prev = out.maps[l - 1];
        MultiMap fl(y.size(), y.g(), l);
        for (std::size_t m = 0; m < l; ++m) {
            MultiMap head = m == 0 ? prev.left_act(psi) : prev.split_right(m - 1, psi);
            MultiMap tail = m + 1 == l ? prev.right_act(psi) : prev.split_left(m, psi);
            MultiMap term = head - tail;
            for (std::size_t k = 0; k < m; ++k) term = term.precompose(k, sigma);
            fl += term;
        }
        out.maps.push_back(std::move(fl));
    }
    return out;
}

/// Restriction of f to basis tuples of a subspace in every slot is zero.
inline bool vanishes_on(const MultiMap& f, const std::vector<Vec>& basis) {
    if (f.arity() == 0) return f.is_zero();
    // Contract slots from the last, branching over basis vectors.
    std::vector<MultiMap> level{f};
    for (std::size_t k = f.arity(); k-- > 0;) {
        std::vector<MultiMap> next;
        for (const auto& g : level)
            for (const auto& v : basis) {
                MultiMap c = g.contract(k, v);
                if (!c.is_zero()) next.push_back(std::move(c));
            }
        if (next.empty()) return true;
        level = std::move(next);
    }
    return level.empty();
}

/// Basis of ker(pi) = image(sigma).
inline std::vector<Vec> kernel_of_pi(const BimoduleOps& ops) {
    std::vector<Vec> cols;
    const std::size_t N = ops.n();
    for (std::size_t b = 0; b < N; ++b) {
        Vec v(N);
        for (std::size_t r = 0; r < N; ++r) v[r] = ops.sigma(r, b);
        cols.push_back(std::move(v));
    }
    return Subspace(cols, N).basis();
}

/// One-term propagations of elements of S(Y); multiplicativity on all
/// supplied pairs whose product lies in S(Y) is verified.
inline std::vector<Jet> embed_algebra(const MatTuple& y, const std::vector<Mat>& a, std::size_t M,
                                      const BimoduleOptions& opt = {}) {
    AlgebraBasis sy = generated_algebra(y);
    if (!is_semisimple_algebra(sy)) throw NotSemisimple("embed_algebra requires a semisimple point");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!sy.contains(a[i])) throw NotInAlgebra("element " + std::to_string(i + 1) + " is not in S(Y)");
    BimoduleOps ops = bimodule_ops(y, opt);
    auto lift = [&](const Mat& m) {
        Jet seed{y, {MultiMap::constant(m, y.g())}};
        return propagate_minimal(PropagationConfig{y, ops, seed, M});
    };
    std::vector<Jet> out;
    for (const auto& m : a) out.push_back(lift(m));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (jet_mul(out[i], out[j]) != lift(a[i] * a[j]))
                throw InternalCheckFailure("embedding is not multiplicative on elements " + std::to_string(i + 1) +
                                           " and " + std::to_string(j + 1));
    return out;
}

/// c_{l,m} for 0 <= l <= Lmax and -1 <= m <= l.
struct GrowthSeq {
    Scalar alpha, beta;
    std::size_t lmax = 0;
    std::vector<std::vector<Scalar>> table; // table[l][m+1]

    const Scalar& at(std::size_t l, long m) const { return table.at(l).at(static_cast<std::size_t>(m + 1)); }
};

/// Equality case c_{l,m} = beta max(c_{l,m+1}, alpha (c_{l-1,m-1} + c_{l-1,m})),
/// with c_{0,0} = 1, c_{l,l} = 0 for l > 0 and c_{l,-1} = c_{l,0} for every l.
inline GrowthSeq growth_bound(const Scalar& alpha, const Scalar& beta, std::size_t lmax) {
    if (alpha <= 0 || beta <= 0) throw PreconditionFailed("alpha and beta must be positive");
    GrowthSeq gs{alpha, beta, lmax, {}};
    gs.table.push_back({Scalar(1), Scalar(1)});
    for (std::size_t l = 1; l <= lmax; ++l) {
        std::vector<Scalar> row(l + 2);
        row[l + 1] = 0;
        const auto& up = gs.table[l - 1];
        auto prev = [&](long m) -> Scalar {
            if (m > static_cast<long>(l - 1)) return 0;
            return up[static_cast<std::size_t>(m + 1)];
        };
        for (long m = static_cast<long>(l) - 1; m >= 0; --m) {
            Scalar a = row[static_cast<std::size_t>(m + 2)];
            Scalar b = alpha * (prev(m - 1) + prev(m));
            row[static_cast<std::size_t>(m + 1)] = beta * std::max(a, b);
        }
        row[0] = row[1];
        gs.table.push_back(std::move(row));
    }
    return gs;
}

struct SeparatingExample {
    Jet jet;
    std::vector<Vec> block_diagonal; // basis of (M_s' + M_s'')^g
    BimoduleOps ops;
};

/// Basis of the block-diagonal directions (M_s' + M_s'')^g inside M_s^g.
inline std::vector<Vec> block_diagonal_basis(std::size_t s1, std::size_t s2, std::size_t g) {
    const std::size_t s = s1 + s2, ss = s * s;
    std::vector<Vec> out;
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t p = 0; p < s; ++p)
            for (std::size_t q = 0; q < s; ++q)
                if ((p < s1) == (q < s1)) {
                    Vec v(g * ss);
                    v[j * ss + p * s + q] = 1;
                    out.push_back(std::move(v));
                }
    return out;
}

/// Admissible f_1 vanishing on [M_s,Y] and block-diagonal directions at
/// Y = Y' + Y'', propagated with a pi preserving the block-diagonal subspace.
inline SeparatingExample separating_example(const MatTuple& yp, const MatTuple& ypp, std::size_t M) {
    if (!are_separated({yp, ypp})) throw NotSeparated("the two points are not separated");
    const MatTuple y = direct_sum(yp, ypp);
    const std::size_t s = y.size(), g = y.g(), ss = s * s, N = g * ss;
    auto D = block_diagonal_basis(yp.size(), ypp.size(), g);
    AlgebraBasis C = centralizer(y);
    Mat ad = ad_operator(y);

    // Unknown f_1 is the s*s x N matrix F, flattened row-major.
    std::vector<Vec> rows;
    auto constrain_kills = [&](const Vec& z) {
        for (std::size_t o = 0; o < ss; ++o) {
            Vec r(ss * N);
            for (std::size_t b = 0; b < N; ++b) r[o * N + b] = z[b];
            rows.push_back(std::move(r));
        }
    };
    for (std::size_t e = 0; e < ss; ++e) {
        Vec w(N);
        for (std::size_t r = 0; r < N; ++r) w[r] = ad(r, e);
        constrain_kills(w);
    }
    for (const auto& d : D) constrain_kills(d);
    // F L_c = Lc' F and F R_c = Rc' F for c in C(Y).
    for (const auto& c : C.basis) {
        for (int side = 0; side < 2; ++side) {
            Mat big = side == 0 ? left_mult_operator(c, g) : right_mult_operator(c, g);
            Mat small = side == 0 ? left_mult_operator(c, 1) : right_mult_operator(c, 1);
            for (std::size_t o = 0; o < ss; ++o)
                for (std::size_t b = 0; b < N; ++b) {
                    Vec r(ss * N);
                    for (std::size_t k = 0; k < N; ++k)
                        if (big(k, b) != 0) r[o * N + k] += big(k, b);
                    for (std::size_t k = 0; k < ss; ++k)
                        if (small(o, k) != 0) r[k * N + b] -= small(o, k);
                    rows.push_back(std::move(r));
                }
        }
    }
    Mat sys(rows.size(), ss * N);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < ss * N; ++k) sys(i, k) = rows[i][k];
    auto ker = kernel_basis(sys);
    if (ker.empty()) throw Infeasible("no nonzero admissible map kills [M_s,Y] and the block-diagonal directions");
    MultiMap f1(s, g, 1);
    for (std::size_t o = 0; o < ss; ++o)
        for (std::size_t b = 0; b < N; ++b) f1.at(b, o / s, o % s) = ker.front()[o * N + b];

    BimoduleOptions opt;
    opt.preserve = D;
    BimoduleOps ops = bimodule_ops(y, opt);
    Jet seed = zero_jet(y, 1);
    seed.maps[1] = f1;
    Jet jet = propagate_minimal(PropagationConfig{y, ops, seed, std::max<std::size_t>(M, 1)});
    return {std::move(jet), std::move(D), std::move(ops)};
}

} // namespace ncgerm

#endif // NCGERM_PROPAGATE_HPP
