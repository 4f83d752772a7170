#ifndef NCGERM_LAC_HPP
#define NCGERM_LAC_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ncgerm/jet.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/multimap.hpp"
#include "ncgerm/structure.hpp"

namespace ncgerm {

struct LacViolation {
    std::string tag;        // first, middle, last, module-left, module-middle, module-right, module-center
    std::size_t order = 0;  // the l of the failing identity
    std::size_t slot = 0;   // 0-based slot carrying [S,Y] or the module element
    Mat witness;            // S (chain rules) or C (module conditions)
    std::size_t index = 0;  // first differing tensor entry
    Scalar deviation;       // lhs - rhs at that entry
};

struct LacReport {
    bool holds = true;
    std::vector<LacViolation> violations;
};

namespace detail {

inline void record(LacReport& rep, const std::string& tag, std::size_t order, std::size_t slot, const Mat& w,
                   const MultiMap& lhs, const MultiMap& rhs) {
    if (lhs == rhs) return;
    auto [idx, val] = (lhs - rhs).first_nonzero();
    rep.holds = false;
    rep.violations.push_back({tag, order, slot, w, idx, val});
}

/// Chain-rule identities linking f_l to f_{l-1} for every elementary S.
inline void check_chain(LacReport& rep, const MatTuple& y, const MultiMap& fl, const MultiMap& fprev) {
    const std::size_t s = y.size(), g = y.g(), l = fl.arity();
    for (std::size_t e = 0; e < s * s; ++e) {
        Mat S = Mat::unit(s, e / s, e % s);
        Vec adS = tuple_to_vector(commutator(S, y));
        if (l == 1) {
            MultiMap lhs = fl.contract(0, adS);
            MultiMap rhs = fprev.left_multiply(S) - fprev.right_multiply(S);
            record(rep, "first", 1, 0, S, lhs, rhs);
            continue;
        }
        Mat LS = left_mult_operator(S, g), RS = right_mult_operator(S, g);
        {
            MultiMap lhs = fl.contract(0, adS);
            MultiMap rhs = fprev.left_multiply(S) - fprev.precompose(0, LS);
            record(rep, "first", l, 0, S, lhs, rhs);
        }
        for (std::size_t j = 1; j + 1 < l; ++j) {
            MultiMap lhs = fl.contract(j, adS);
            MultiMap rhs = fprev.precompose(j - 1, RS) - fprev.precompose(j, LS);
            record(rep, "middle", l, j, S, lhs, rhs);
        }
        {
            MultiMap lhs = fl.contract(l - 1, adS);
            MultiMap rhs = fprev.precompose(l - 2, RS) - fprev.right_multiply(S);
            record(rep, "last", l, l - 1, S, lhs, rhs);
        }
    }
}

/// C(Y)-module conditions on the top map.
inline void check_module(LacReport& rep, const MatTuple& y, const MultiMap& f, const AlgebraBasis& c) {
    const std::size_t g = y.g(), L = f.arity();
    for (const auto& C : c.basis) {
        if (L == 0) {
            Mat f0 = f.matrix();
            MultiMap lhs = MultiMap::constant(f0 * C, g), rhs = MultiMap::constant(C * f0, g);
            record(rep, "module-center", 0, 0, C, lhs, rhs);
            continue;
        }
        Mat LC = left_mult_operator(C, g), RC = right_mult_operator(C, g);
        record(rep, "module-left", L, 0, C, f.left_multiply(C), f.precompose(0, LC));
        for (std::size_t j = 0; j + 1 < L; ++j)
            record(rep, "module-middle", L, j, C, f.precompose(j, RC), f.precompose(j + 1, LC));
        record(rep, "module-right", L, L - 1, C, f.precompose(L - 1, RC), f.right_multiply(C));
    }
}

} // namespace detail

/// Checks the chain rules for l <= L and the C(Y)-module conditions at order L.
inline LacReport check_lac_truncated(const MatTuple& y, const Jet& jet, std::size_t L) {
    if (jet.maps.size() < L + 1) throw PreconditionFailed("jet is shorter than the requested order");
    if (jet.Y != y) throw PreconditionFailed("jet is pinned to a different basepoint");
    LacReport rep;
    for (std::size_t l = 1; l <= L; ++l) detail::check_chain(rep, y, jet.maps[l], jet.maps[l - 1]);
    detail::check_module(rep, y, jet.maps[L], centralizer(y));
    return rep;
}

/// Checks only the chain rules for 1 <= l <= jet order (the untruncated conditions).
inline LacReport check_lac_chain(const MatTuple& y, const Jet& jet) {
    LacReport rep;
    for (std::size_t l = 1; l < jet.maps.size(); ++l) detail::check_chain(rep, y, jet.maps[l], jet.maps[l - 1]);
    return rep;
}

/// f is admissible iff (0, ..., 0, f) satisfies the truncated conditions at its arity.
inline bool check_admissible(const MatTuple& y, const MultiMap& f) {
    Jet padded = zero_jet(y, f.arity());
    padded.maps[f.arity()] = f;
    return check_lac_truncated(y, padded, f.arity()).holds;
}

} // namespace ncgerm

#endif // NCGERM_LAC_HPP
