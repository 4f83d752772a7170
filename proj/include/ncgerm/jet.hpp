#ifndef NCGERM_JET_HPP
#define NCGERM_JET_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/freealg.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/matrix.hpp"
#include "ncgerm/multimap.hpp"
#include "ncgerm/parallel.hpp"

namespace ncgerm {

/// Substitutes X_j for x_j; the empty word becomes the identity.
inline Mat evaluate(const NcPoly& p, const MatTuple& x) {
    if (p.g() != x.g()) throw DimensionMismatch("polynomial and point have different letter counts");
    const std::size_t n = x.size();
    Mat acc(n, n);
    std::map<Word, Mat> cache;
    for (const auto& [w, c] : p.terms()) {
        Mat m = Mat::identity(n);
        std::size_t k = 0;
        // Reuse the longest cached prefix.
        for (std::size_t len = w.size(); len > 0; --len) {
            auto it = cache.find(Word(w.begin(), w.begin() + len));
            if (it != cache.end()) {
                m = it->second;
                k = len;
                break;
            }
        }
        for (; k < w.size(); ++k) {
            m = m * x[w[k]];
            cache.emplace(Word(w.begin(), w.begin() + k + 1), m);
        }
        acc += c * m;
    }
    return acc;
}

inline Mat evaluate(const NcSeries& p, const MatTuple& x) { return evaluate(p.poly(), x); }

/// Truncated formal germ at Y: maps[l] has arity l.
struct Jet {
    MatTuple Y;
    std::vector<MultiMap> maps;

    std::size_t order() const { return maps.empty() ? 0 : maps.size() - 1; }
    std::size_t s() const { return Y.size(); }
    std::size_t g() const { return Y.g(); }

    Mat value() const { return maps.at(0).matrix(); }

    bool is_zero() const {
        for (const auto& m : maps)
            if (!m.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Jet& a, const Jet& b) { return a.Y == b.Y && a.maps == b.maps; }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }
};

inline Jet zero_jet(const MatTuple& y, std::size_t L) {
    Jet j{y, {}};
    for (std::size_t l = 0; l <= L; ++l) j.maps.emplace_back(y.size(), y.g(), l);
    return j;
}

/// Jet of the constant function c*I.
inline Jet constant_jet(const MatTuple& y, std::size_t L, const Scalar& c = 1) {
    Jet j = zero_jet(y, L);
    j.maps[0] = MultiMap::constant(Mat::scalar(y.size(), c), y.g());
    return j;
}

/// Jet of the coordinate function x_j.
inline Jet letter_jet(const MatTuple& y, std::size_t L, std::size_t j) {
    Jet r = zero_jet(y, L);
    r.maps[0] = MultiMap::constant(y[j], y.g());
    if (L >= 1) r.maps[1] = MultiMap::coordinate(y.size(), y.g(), j);
    return r;
}

inline void check_same_base(const Jet& a, const Jet& b) {
    if (a.Y != b.Y) throw PreconditionFailed("jets are pinned to different basepoints");
    if (a.maps.size() != b.maps.size()) throw PreconditionFailed("jets have different orders");
}

inline Jet operator+(Jet a, const Jet& b) {
    check_same_base(a, b);
    for (std::size_t l = 0; l < a.maps.size(); ++l) a.maps[l] += b.maps[l];
    return a;
}

inline Jet operator-(Jet a, const Jet& b) {
    check_same_base(a, b);
    for (std::size_t l = 0; l < a.maps.size(); ++l) a.maps[l] -= b.maps[l];
    return a;
}

inline Jet operator*(const Scalar& c, Jet a) {
    for (auto& m : a.maps) m *= c;
    return a;
}

/// Leibniz product: (ab)_l = sum_i a_i b_{l-i}.
inline Jet jet_mul(const Jet& a, const Jet& b) {
    check_same_base(a, b);
    Jet r = zero_jet(a.Y, a.order());
    for (std::size_t l = 0; l < a.maps.size(); ++l)
        for (std::size_t i = 0; i <= l; ++i) r.maps[l] += product(a.maps[i], b.maps[l - i]);
    return r;
}

inline Jet jet_inverse(const Jet& a) {
    Mat a0inv;
    try {
        a0inv = matrix_inverse(a.value());
    } catch (const SingularMatrix&) {
        throw NotInvertible("constant term of the jet is singular");
    }
    Jet b = zero_jet(a.Y, a.order());
    b.maps[0] = MultiMap::constant(a0inv, a.g());
    for (std::size_t l = 1; l < a.maps.size(); ++l) {
        MultiMap acc(a.s(), a.g(), l);
        for (std::size_t i = 1; i <= l; ++i) acc += product(a.maps[i], b.maps[l - i]);
        b.maps[l] = (Scalar(-1) * acc).left_multiply(a0inv);
    }
    return b;
}

namespace detail {

/// Top block row of products of the block-bidiagonal point with Y on the
/// diagonal and Z^1..Z^l on the superdiagonal. Block c of the row holds the
/// coefficient of the path ending at column block c.
struct TopRow {
    std::vector<Mat> blocks;
};

inline TopRow step(const TopRow& r, const MatTuple& y, const std::vector<MatTuple>& z, int letter) {
    TopRow out;
    const std::size_t l = z.size();
    out.blocks.resize(l + 1);
    for (std::size_t c = 0; c <= l; ++c) {
        Mat m = r.blocks[c] * y[letter];
        if (c > 0 && !r.blocks[c - 1].is_zero()) m += r.blocks[c - 1] * z[c - 1][letter];
        out.blocks[c] = std::move(m);
    }
    return out;
}

/// Top-right block of p evaluated at the block-bidiagonal point.
inline Mat top_right(const NcPoly& p, const MatTuple& y, const std::vector<MatTuple>& z) {
    const std::size_t s = y.size(), l = z.size();
    TopRow start;
    start.blocks.assign(l + 1, Mat(s, s));
    start.blocks[0] = Mat::identity(s);
    std::map<Word, TopRow> cache;
    Mat acc(s, s);
    for (const auto& [w, c] : p.terms()) {
        if (w.size() < l) continue;
        TopRow cur = start;
        std::size_t k = 0;
        for (std::size_t len = w.size(); len > 0; --len) {
            auto it = cache.find(Word(w.begin(), w.begin() + len));
            if (it != cache.end()) {
                cur = it->second;
                k = len;
                break;
            }
        }
        for (; k < w.size(); ++k) {
            cur = step(cur, y, z, w[k]);
            cache.emplace(Word(w.begin(), w.begin() + k + 1), cur);
        }
        acc += c * cur.blocks[l];
    }
    return acc;
}

} // namespace detail

/// The block-bidiagonal point with Y on the diagonal and Z^i on the superdiagonal.
inline MatTuple bidiagonal_point(const MatTuple& y, const std::vector<MatTuple>& z) {
    const std::size_t s = y.size(), l = z.size();
    std::vector<Mat> comps;
    for (std::size_t j = 0; j < y.g(); ++j) {
        Mat m((l + 1) * s, (l + 1) * s);
        for (std::size_t c = 0; c <= l; ++c) m.set_block(c * s, c * s, y[j]);
        for (std::size_t c = 0; c < l; ++c) m.set_block(c * s, (c + 1) * s, z[c][j]);
        comps.push_back(std::move(m));
    }
    return MatTuple((l + 1) * s, std::move(comps));
}

/// Differential of order l at Y, one bidiagonal evaluation per basis tuple.
inline MultiMap differential(const NcPoly& p, const MatTuple& y, std::size_t l) {
    if (p.g() != y.g()) throw DimensionMismatch("polynomial and point have different letter counts");
    const std::size_t s = y.size(), g = y.g();
    MultiMap f(s, g, l);
    if (l == 0) {
        f.set_value(0, evaluate(p, y));
        return f;
    }
    parallel_for(f.inputs(), [&](std::size_t in) {
        std::vector<MatTuple> z;
        for (auto b : f.split_input(in)) z.push_back(basis_tuple(s, g, b));
        f.set_value(in, detail::top_right(p, y, z));
    });
    return f;
}

inline Jet jet_eval(const NcPoly& p, const MatTuple& y, std::size_t L) {
    Jet j{y, {}};
    for (std::size_t l = 0; l <= L; ++l) j.maps.push_back(differential(p, y, l));
    return j;
}

inline Jet jet_eval(const NcSeries& p, const MatTuple& y, std::size_t L) { return jet_eval(p.poly(), y, L); }

/// Blockwise extension T_n of an l-linear map to size n*s. Block (u,v) of a
/// size-n*s matrix occupies rows u*s.. and columns v*s...
inline MultiMap ampliate(const MultiMap& f, std::size_t n) {
    const std::size_t s = f.s(), g = f.g(), l = f.arity(), S = n * s;
    MultiMap r(S, g, l);
    const std::size_t ss = s * s, SS = S * S;
    const std::size_t chains = ipow(n, l + 1);
    for (std::size_t in = 0; in < f.inputs(); ++in) {
        auto b = f.split_input(in);
        for (std::size_t ch = 0; ch < chains; ++ch) {
            // u_0 .. u_l, u_0 most significant.
            std::vector<std::size_t> u(l + 1);
            std::size_t t = ch;
            for (std::size_t k = l + 1; k-- > 0;) {
                u[k] = t % n;
                t /= n;
            }
            std::size_t big = 0;
            for (std::size_t k = 0; k < l; ++k) {
                const std::size_t j = b[k] / ss, p = (b[k] % ss) / s, q = b[k] % s;
                big = big * (g * SS) + j * SS + (u[k] * s + p) * S + (u[k + 1] * s + q);
            }
            for (std::size_t p = 0; p < s; ++p)
                for (std::size_t q = 0; q < s; ++q) {
                    const Scalar& x = f.at(in, p, q);
                    if (x != 0) r.at(big, u[0] * s + p, u[l] * s + q) += x;
                }
        }
    }
    return r;
}

/// True iff every product of length n of the Z_j vanishes (n = matrix size).
inline bool is_jointly_nilpotent(const MatTuple& z) {
    const std::size_t n = z.size();
    if (n == 0) return true;
    std::vector<Vec> cur;
    for (const auto& m : z.components())
        if (!m.is_zero()) cur.push_back(m.data());
    for (std::size_t len = 1; len < n && !cur.empty(); ++len) {
        Subspace sp(n * n);
        std::vector<Vec> next;
        for (const auto& v : cur) {
            Mat a(n, n, v);
            for (const auto& m : z.components()) {
                Mat b = a * m;
                if (sp.add(b.data())) next.push_back(b.data());
            }
        }
        cur = std::move(next);
    }
    return cur.empty();
}

} // namespace ncgerm

#endif // NCGERM_JET_HPP
