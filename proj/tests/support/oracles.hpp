#ifndef NCGERM_TESTS_ORACLES_HPP
#define NCGERM_TESTS_ORACLES_HPP

// Reference computations for the tests, written independently of the
// library algorithms.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ncgerm/ncgerm.hpp"

namespace oracle {

using namespace ncgerm;

inline Mat naive_eval(const NcPoly& p, const MatTuple& x) {
    const std::size_t n = x.size();
    Mat acc(n, n);
    for (const auto& [w, c] : p.terms()) {
        Mat m = Mat::identity(n);
        for (int letter : w) m = m * x[letter];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc(i, j) += c * m(i, j);
    }
    return acc;
}

/// Y on the diagonal blocks, Z^k at block (k-1, k).
inline MatTuple bidiagonal(const MatTuple& y, const std::vector<MatTuple>& z) {
    const std::size_t s = y.size(), l = z.size(), n = (l + 1) * s;
    std::vector<Mat> comps;
    for (std::size_t j = 0; j < y.g(); ++j) {
        Mat m(n, n);
        for (std::size_t b = 0; b <= l; ++b)
            for (std::size_t p = 0; p < s; ++p)
                for (std::size_t q = 0; q < s; ++q) {
                    m(b * s + p, b * s + q) = y[j](p, q);
                    if (b < l) m(b * s + p, (b + 1) * s + q) = z[b][j](p, q);
                }
        comps.push_back(std::move(m));
    }
    return MatTuple(n, std::move(comps));
}

/// Top-right s x s block of p at the bidiagonal point.
inline Mat naive_differential(const NcPoly& p, const MatTuple& y, const std::vector<MatTuple>& z) {
    const std::size_t s = y.size(), l = z.size();
    Mat big = naive_eval(p, bidiagonal(y, z));
    Mat out(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) out(i, j) = big(i, l * s + j);
    return out;
}

/// Elementary tuple with a single 1 at component j, entry (p, q).
inline MatTuple unit_tuple(std::size_t s, std::size_t g, std::size_t b) {
    std::vector<Mat> comps(g, Mat(s, s));
    comps[b / (s * s)](b % (s * s) / s, b % s) = 1;
    return MatTuple(s, std::move(comps));
}

inline Scalar frac(long a, long b) {
    Scalar q(a, b);
    q.canonicalize();
    return q;
}

inline long draw(std::mt19937_64& rng, int bound) {
    return static_cast<long>(rng() % (2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
}

inline Mat random_mat(std::mt19937_64& rng, std::size_t s, int bound) {
    Mat m(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) m(i, j) = draw(rng, bound);
    return m;
}

inline MatTuple random_point(std::mt19937_64& rng, std::size_t s, std::size_t g, int bound = 3) {
    std::vector<Mat> comps;
    for (std::size_t j = 0; j < g; ++j) comps.push_back(random_mat(rng, s, bound));
    return MatTuple(s, std::move(comps));
}

inline NcPoly random_poly(std::mt19937_64& rng, std::size_t g, std::size_t maxdeg, std::size_t terms, int bound = 3) {
    NcPoly p(g);
    for (std::size_t t = 0; t < terms; ++t) {
        Word w(rng() % (maxdeg + 1));
        for (auto& x : w) x = static_cast<int>(rng() % g);
        p.add_term(w, frac(draw(rng, bound), static_cast<long>(1 + rng() % 3)));
    }
    return p;
}

/// Random series with terms of length <= D.
inline NcSeries random_series(std::mt19937_64& rng, std::size_t g, std::size_t D, std::size_t terms) {
    return NcSeries(random_poly(rng, g, D, terms), D);
}

// --- univariate polynomials over Q, coefficient k of t^k ---------------------

using Uni = std::vector<Scalar>;

inline Uni trim(Uni p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

/// D(p) = (p - p(0)) / t.
inline Uni shift_down(const Uni& p) { return p.size() <= 1 ? Uni{} : trim(Uni(p.begin() + 1, p.end())); }

inline Uni shift_down(Uni p, std::size_t times) {
    for (std::size_t k = 0; k < times; ++k) p = shift_down(p);
    return p;
}

inline Uni one_plus_t_pow(std::size_t k) {
    Uni p{Scalar(1)};
    for (std::size_t i = 0; i < k; ++i) {
        Uni q(p.size() + 1);
        for (std::size_t j = 0; j < p.size(); ++j) {
            q[j] += p[j];
            q[j + 1] += p[j];
        }
        p = q;
    }
    return p;
}

inline Uni add(const Uni& a, const Uni& b) {
    Uni r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(r);
}

inline Uni times_t(const Uni& a) {
    if (a.empty()) return a;
    Uni r(a.size() + 1);
    for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
    return r;
}

inline Uni scaled(Uni a, const Scalar& c) {
    for (auto& x : a) x *= c;
    return trim(a);
}

inline Scalar at(const Uni& p, const Scalar& t) {
    Scalar acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
    return acc;
}

inline Scalar power(const Scalar& x, std::size_t k) {
    Scalar r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= x;
    return r;
}

inline Scalar binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    Scalar r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * Scalar(static_cast<long>(n - i)) / Scalar(static_cast<long>(i + 1));
    return r;
}

// --- multilinear maps, read through the documented flat layout ----------------

/// f(z_1, ..., z_l) as an s x s matrix, summing over nonzero coordinates.
inline Mat apply_naive(const MultiMap& f, const std::vector<Vec>& z) {
    const std::size_t s = f.s(), ss = s * s, N = f.n(), l = f.arity();
    Mat out(s, s);
    std::function<void(std::size_t, std::size_t, const Scalar&)> rec = [&](std::size_t k, std::size_t idx,
                                                                           const Scalar& coef) {
        if (k == l) {
            for (std::size_t o = 0; o < ss; ++o) {
                const Scalar& v = f.data()[idx * ss + o];
                if (v != 0) out(o / s, o % s) += coef * v;
            }
            return;
        }
        for (std::size_t b = 0; b < N; ++b)
            if (z[k][b] != 0) rec(k + 1, idx * N + b, coef * z[k][b]);
    };
    rec(0, 0, Scalar(1));
    return out;
}

inline Vec left_mul(const Mat& a, const Vec& v, std::size_t s, std::size_t g) {
    MatTuple t = vector_to_tuple(v, s, g);
    std::vector<Mat> c;
    for (std::size_t j = 0; j < g; ++j) c.push_back(a * t[j]);
    return tuple_to_vector(MatTuple(s, c));
}

inline Vec right_mul(const Vec& v, const Mat& a, std::size_t s, std::size_t g) {
    MatTuple t = vector_to_tuple(v, s, g);
    std::vector<Mat> c;
    for (std::size_t j = 0; j < g; ++j) c.push_back(t[j] * a);
    return tuple_to_vector(MatTuple(s, c));
}

struct AdaptedBasis {
    std::vector<Vec> vectors;  // W part first, then ker(pi)
    std::vector<Mat> S;        // S with [S,Y] = vectors[i] for the W part
    std::size_t w = 0;
    bool spans = false;        // W + ker(pi) = M_s^g
};

inline AdaptedBasis adapted_basis(const MatTuple& y, const BimoduleOps& ops) {
    const std::size_t s = y.size(), g = y.g(), N = g * s * s;
    AdaptedBasis ab;
    Subspace span(N);
    for (std::size_t e = 0; e < s * s; ++e) {
        Mat E = Mat::unit(s, e / s, e % s);
        std::vector<Mat> c;
        for (std::size_t j = 0; j < g; ++j) c.push_back(E * y[j] - y[j] * E);
        Vec v = tuple_to_vector(MatTuple(s, c));
        if (span.add(v)) {
            ab.vectors.push_back(v);
            ab.S.push_back(E);
        }
    }
    ab.w = ab.vectors.size();
    for (const auto& k : kernel_of_pi(ops))
        if (span.add(k)) ab.vectors.push_back(k);
    ab.spans = ab.vectors.size() == N;
    return ab;
}

/// The unique f_l vanishing on ker(pi)^l whose values with a [M_s,Y]
/// argument follow the chain rule at the last such slot, given f_{l-1}.
inline MultiMap adapted_solution(const MatTuple& y, const AdaptedBasis& ab, const MultiMap& fprev) {
    const std::size_t s = y.size(), g = y.g(), ss = s * s, N = g * ss, l = fprev.arity() + 1;
    MultiMap adapted(s, g, l);
    std::vector<std::size_t> digits(l);
    for (std::size_t in = 0; in < adapted.inputs(); ++in) {
        std::size_t rest = in;
        for (std::size_t k = l; k-- > 0;) {
            digits[k] = rest % N;
            rest /= N;
        }
        std::size_t j = l;
        for (std::size_t k = l; k-- > 0;)
            if (digits[k] < ab.w) {
                j = k;
                break;
            }
        if (j == l) continue;
        const Mat& S = ab.S[digits[j]];
        std::vector<Vec> z;
        for (std::size_t k = 0; k < l; ++k)
            if (k != j) z.push_back(ab.vectors[digits[k]]);
        Mat val(s, s);
        if (l == 1) {
            Mat f0 = apply_naive(fprev, {});
            val = S * f0 - f0 * S;
        } else if (j == 0) {
            std::vector<Vec> z2 = z;
            z2[0] = left_mul(S, z2[0], s, g);
            val = S * apply_naive(fprev, z) - apply_naive(fprev, z2);
        } else if (j == l - 1) {
            std::vector<Vec> z2 = z;
            z2[l - 2] = right_mul(z2[l - 2], S, s, g);
            val = apply_naive(fprev, z2) - apply_naive(fprev, z) * S;
        } else {
            std::vector<Vec> za = z, zb = z;
            za[j - 1] = right_mul(za[j - 1], S, s, g);
            zb[j] = left_mul(S, zb[j], s, g);
            val = apply_naive(fprev, za) - apply_naive(fprev, zb);
        }
        for (std::size_t o = 0; o < ss; ++o) adapted.data()[in * ss + o] = val(o / s, o % s);
    }
    // Change of basis: e_b = sum_i Binv(i, b) B_i in every slot.
    Mat B(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t r = 0; r < N; ++r) B(r, i) = ab.vectors[i][r];
    Mat Binv = matrix_inverse(B);
    std::vector<Scalar> cur = adapted.data();
    for (std::size_t slot = 0; slot < l; ++slot) {
        std::size_t stride = ss;
        for (std::size_t k = slot + 1; k < l; ++k) stride *= N;
        std::vector<Scalar> next(cur.size());
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
            if (cur[idx] == 0) continue;
            const std::size_t i = idx / stride % N, base = idx - i * stride;
            for (std::size_t b = 0; b < N; ++b)
                if (Binv(i, b) != 0) next[base + b * stride] += Binv(i, b) * cur[idx];
        }
        cur = std::move(next);
    }
    MultiMap out(s, g, l);
    out.data() = std::move(cur);
    return out;
}

} // namespace oracle

#endif // NCGERM_TESTS_ORACLES_HPP
