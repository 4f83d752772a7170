#ifndef NCGERM_STRUCTURE_HPP
#define NCGERM_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/matrix.hpp"
#include "ncgerm/multimap.hpp"

namespace ncgerm {

/// A subalgebra of M_s given by a basis and its structure constants:
/// basis[i] * basis[j] = sum_k structure[i][j][k] basis[k].
struct AlgebraBasis {
    std::size_t s = 0;
    std::vector<Mat> basis;
    std::vector<std::vector<Vec>> structure;
    std::size_t rounds = 0; // span-growth rounds, for generated algebras

    std::size_t dim() const noexcept { return basis.size(); }

    Coordinates coordinates() const {
        std::vector<Vec> b;
        for (const auto& m : basis) b.push_back(m.data());
        return Coordinates(b, s * s);
    }

    bool contains(const Mat& m) const { return coordinates().of(m.data()).has_value(); }

    /// t(a,b) = trace of left multiplication by ab on the algebra.
    Mat trace_form() const {
        const std::size_t k = dim();
        Vec tr(k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t m = 0; m < k; ++m) tr[a] += structure[a][m][m];
        Mat g(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t a = 0; a < k; ++a)
                    if (structure[i][j][a] != 0) g(i, j) += structure[i][j][a] * tr[a];
        return g;
    }
};

/// Builds structure constants; throws if the span is not closed under products.
inline AlgebraBasis make_algebra(std::size_t s, std::vector<Mat> basis) {
    AlgebraBasis a;
    a.s = s;
    a.basis = std::move(basis);
    Coordinates co = a.coordinates();
    const std::size_t k = a.dim();
    a.structure.assign(k, std::vector<Vec>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            auto c = co.of((a.basis[i] * a.basis[j]).data());
            if (!c) throw InternalCheckFailure("span is not closed under multiplication");
            a.structure[i][j] = std::move(*c);
        }
    return a;
}

/// S(Y): the unital algebra generated by Y, grown from I by right multiplication.
inline AlgebraBasis generated_algebra(const MatTuple& y) {
    const std::size_t s = y.size();
    Subspace span(s * s);
    std::vector<Mat> basis{Mat::identity(s)};
    span.add(basis[0].data());
    std::vector<Mat> frontier = basis;
    std::size_t rounds = 0;
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const auto& b : frontier)
            for (const auto& yj : y.components()) {
                Mat m = b * yj;
                if (span.add(m.data())) next.push_back(m);
            }
        ++rounds;
        basis.insert(basis.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    AlgebraBasis a = make_algebra(s, std::move(basis));
    a.rounds = rounds;
    return a;
}

/// C(Y): solutions of [S,Y_j] = 0 for all j.
inline AlgebraBasis centralizer(const MatTuple& y) {
    const std::size_t s = y.size();
    std::vector<Mat> basis;
    if (y.g() == 0) {
        for (std::size_t e = 0; e < s * s; ++e) basis.push_back(Mat::unit(s, e / s, e % s));
    } else {
        for (const auto& v : kernel_basis(ad_operator(y))) basis.emplace_back(s, s, v);
    }
    return make_algebra(s, std::move(basis));
}

/// Semisimplicity via nondegeneracy of the regular trace form.
inline bool is_semisimple_algebra(const AlgebraBasis& a) {
    return rank(a.trace_form()) == a.dim();
}

inline bool is_semisimple(const MatTuple& y) { return is_semisimple_algebra(generated_algebra(y)); }

/// Characteristic polynomial det(tI - A), coefficient k of t^k (Faddeev-LeVerrier).
inline std::vector<Scalar> char_poly(const Mat& a) {
    const std::size_t n = a.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = 1;
    Mat m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + Mat::scalar(n, c[n - k + 1]);
        c[n - k] = -(a * m).trace() / Scalar(static_cast<long>(k));
    }
    return c;
}

namespace detail {

inline std::vector<mpz_class> divisors(mpz_class v, const mpz_class& limit) {
    v = abs(v);
    std::vector<mpz_class> out;
    if (v > limit) return out;
    for (mpz_class d = 1; d * d <= v; ++d)
        if (v % d == 0) {
            out.push_back(d);
            if (d * d != v) out.push_back(v / d);
        }
    return out;
}

/// Rational roots by the rational root theorem; empty when coefficients are too large to factor.
inline std::vector<Scalar> rational_roots(std::vector<Scalar> c) {
    std::vector<Scalar> roots;
    mpz_class den = 1;
    for (const auto& x : c) den = lcm(den, x.get_den());
    std::vector<mpz_class> z;
    for (const auto& x : c) z.push_back(mpz_class(x * den));
    std::size_t low = 0;
    while (low < z.size() && z[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low + 1 >= z.size()) return roots;
    const mpz_class limit = 1000000000000L;
    auto ps = divisors(z[low], limit), qs = divisors(z.back(), limit);
    for (const auto& p : ps)
        for (const auto& q : qs)
            for (int sign : {1, -1}) {
                Scalar r(sign * p, q);
                r.canonicalize();
                Scalar v = 0;
                for (std::size_t k = c.size(); k-- > 0;) v = v * r + c[k];
                if (v == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
    return roots;
}

} // namespace detail

/// True when some basis element, or a basis element shifted by one of its
/// rational eigenvalues, is a nonzero singular matrix of the algebra.
inline bool has_rational_zero_divisor(const AlgebraBasis& a) {
    for (const auto& m : a.basis) {
        if (!is_invertible(m)) return true;
        for (const auto& r : detail::rational_roots(char_poly(m))) {
            Mat shifted = m - Mat::scalar(a.s, r);
            if (!shifted.is_zero()) return true;
        }
    }
    return false;
}

struct IrreducibilityReport {
    bool irreducible = false;
    /// Set when S(Y) may be a non-split simple algebra: the point could be
    /// irreducible over the rationals while splitting over an extension.
    bool split_caveat = false;
    std::size_t dim_generated = 0;
    std::size_t dim_centralizer = 0;
};

inline IrreducibilityReport irreducibility(const MatTuple& y) {
    IrreducibilityReport r;
    const std::size_t s = y.size();
    AlgebraBasis sy = generated_algebra(y);
    r.dim_generated = sy.dim();
    r.irreducible = sy.dim() == s * s;
    if (!r.irreducible) {
        AlgebraBasis cy = centralizer(y);
        r.dim_centralizer = cy.dim();
        r.split_caveat = is_semisimple_algebra(sy) && sy.dim() * cy.dim() == s * s && cy.dim() > 1 &&
                         !has_rational_zero_divisor(cy);
    } else {
        r.dim_centralizer = 1;
    }
    return r;
}

/// Burnside criterion: dim S(Y) = s^2.
inline bool is_irreducible(const MatTuple& y) { return irreducibility(y).irreducible; }

inline MatTuple direct_sum(const std::vector<MatTuple>& ys) {
    if (ys.empty()) throw DimensionMismatch("direct sum of an empty list");
    MatTuple acc = ys.front();
    for (std::size_t i = 1; i < ys.size(); ++i) acc = direct_sum(acc, ys[i]);
    return acc;
}

/// dim C(Y^1 + ... + Y^h) = sum_i dim C(Y^i).
inline bool are_separated(const std::vector<MatTuple>& ys) {
    if (ys.empty()) return true;
    std::size_t total = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!is_semisimple(ys[i])) throw NotSemisimple("point " + std::to_string(i + 1) + " is not semisimple");
        total += centralizer(ys[i]).dim();
    }
    return centralizer(direct_sum(ys)).dim() == total;
}

/// C(Y)-bimodule splitting M_s^g = [M_s,Y] + ker(pi) and the right inverse phi.
struct BimoduleOps {
    MatTuple Y;
    AlgebraBasis C;
    std::vector<Vec> W;       // basis of [M_s,Y] in coordinates of M_s^g
    Mat pi;                   // N x N projection onto [M_s,Y]
    Mat sigma;                // I - pi
    Mat phi;                  // s*s x N: phi composed with pi
    std::optional<std::vector<Vec>> preserved; // subspace D with pi(D) in D, if requested

    std::size_t n() const noexcept { return pi.rows(); }
};

struct BimoduleOptions {
    /// A C(Y)-sub-bimodule D of M_s^g that pi must map into itself.
    std::optional<std::vector<Vec>> preserve;
    /// Reverses the internal order of the centralizer basis (the output must not change).
    bool reverse_basis = false;
};

namespace detail {

inline Mat apply_left_right(const Mat& l, const Mat& r, std::size_t g) {
    return left_mult_operator(l, g) * right_mult_operator(r, g);
}

inline Vec mat_vec(const Mat& a, const Vec& v) {
    Vec r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && v[j] != 0) r[i] += a(i, j) * v[j];
    return r;
}

} // namespace detail

/// Verifies every bimodule invariant; throws InternalCheckFailure with the first failure.
inline void verify_bimodule_ops(const BimoduleOps& ops) {
    const std::size_t s = ops.Y.size(), g = ops.Y.g(), N = g * s * s;
    const Mat& pi = ops.pi;
    auto fail = [](const std::string& what) { throw InternalCheckFailure("bimodule check failed: " + what); };
    if (pi * pi != pi) fail("pi is not idempotent");
    if (pi + ops.sigma != Mat::identity(N)) fail("sigma is not I - pi");
    Subspace w(ops.W, N);
    if (rank(pi) != w.dim()) fail("rank of pi differs from dim [M_s,Y]");
    for (std::size_t b = 0; b < N; ++b) {
        Vec col(N);
        for (std::size_t r = 0; r < N; ++r) col[r] = pi(r, b);
        if (!w.contains(col)) fail("image of pi leaves [M_s,Y]");
    }
    for (const auto& c : ops.C.basis) {
        Mat lc = left_mult_operator(c, g), rc = right_mult_operator(c, g);
        if (pi * lc != lc * pi) fail("pi is not left C(Y)-linear");
        if (pi * rc != rc * pi) fail("pi is not right C(Y)-linear");
        Mat lcs = left_mult_operator(c, 1), rcs = right_mult_operator(c, 1);
        if (ops.phi * lc != lcs * ops.phi) fail("phi is not left C(Y)-linear");
        if (ops.phi * rc != rcs * ops.phi) fail("phi is not right C(Y)-linear");
    }
    Mat ad = ad_operator(ops.Y);
    if (ad * ops.phi != pi) fail("[phi(W),Y] != W");
    if (ops.preserved) {
        Subspace d(*ops.preserved, N);
        for (const auto& v : *ops.preserved)
            if (!d.contains(detail::mat_vec(pi, v))) fail("pi does not preserve the requested subspace");
    }
}

/// Builds pi, sigma and phi by averaging arbitrary choices against the
/// separability idempotent of C(Y).
inline BimoduleOps bimodule_ops(const MatTuple& y, const BimoduleOptions& opt = {}) {
    if (!is_semisimple(y)) throw NotSemisimple("bimodule_ops requires a semisimple point");
    const std::size_t s = y.size(), g = y.g(), ss = s * s, N = g * ss;
    BimoduleOps ops;
    ops.Y = y;
    ops.C = centralizer(y);
    if (opt.reverse_basis) {
        std::vector<Mat> b(ops.C.basis.rbegin(), ops.C.basis.rend());
        ops.C = make_algebra(s, std::move(b));
    }
    const std::size_t k = ops.C.dim();

    // Separability idempotent sum_i x_i (x) y_i with x_i = b_i, y_i = u^{-1} b^i.
    Mat gram = ops.C.trace_form();
    Mat ginv;
    try {
        ginv = matrix_inverse(gram);
    } catch (const SingularMatrix&) {
        throw NotSemisimple("centralizer trace form is degenerate");
    }
    std::vector<Mat> dual(k, Mat(s, s));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (ginv(j, i) != 0) dual[i] += ginv(j, i) * ops.C.basis[j];
    Mat u(s, s);
    for (std::size_t i = 0; i < k; ++i) u += ops.C.basis[i] * dual[i];
    // u is central in C(Y); its inverse lies in C(Y).
    Mat uinv = matrix_inverse(u);
    std::vector<Mat> xs = ops.C.basis, ys;
    for (const auto& d : dual) ys.push_back(uinv * d);

    // W = [M_s,Y]: images of the pivot columns of ad.
    Mat ad = ad_operator(y);
    Echelon ead = rref(ad);
    std::vector<std::size_t> wsrc = ead.pivots;
    std::vector<Vec> W;
    for (auto e : wsrc) {
        Vec v(N);
        for (std::size_t r = 0; r < N; ++r) v[r] = ad(r, e);
        W.push_back(std::move(v));
    }
    const std::size_t r = W.size();

    // Complement of W, taken inside D first when D must be preserved.
    Subspace span(W, N);
    std::vector<Vec> comp;
    if (opt.preserve)
        for (const auto& d : *opt.preserve)
            if (span.add(d)) comp.push_back(d);
    for (std::size_t e = 0; e < N && span.dim() < N; ++e) {
        Vec v(N);
        v[e] = 1;
        if (span.add(v)) comp.push_back(v);
    }
    Mat basis(N, N);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t row = 0; row < N; ++row) basis(row, i) = W[i][row];
    for (std::size_t i = 0; i < comp.size(); ++i)
        for (std::size_t row = 0; row < N; ++row) basis(row, r + i) = comp[i][row];
    Mat binv = matrix_inverse(basis);
    Mat keep(N, N);
    for (std::size_t i = 0; i < r; ++i) keep(i, i) = 1;
    Mat p = basis * keep * binv;

    // psi0: W -> M_s sending the chosen image of E_e back to E_e, zero on the complement.
    Mat pre(ss, N);
    for (std::size_t i = 0; i < r; ++i) pre(wsrc[i], i) = 1;
    Mat psi0 = pre * binv;

    Mat pi(N, N), phi(ss, N);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            // Z -> x_i p(y_i Z x_j) y_j
            Mat inner = detail::apply_left_right(ys[i], xs[j], g);
            pi += detail::apply_left_right(xs[i], ys[j], g) * p * inner;
            phi += detail::apply_left_right(xs[i], ys[j], 1) * psi0 * inner;
        }
    ops.W = std::move(W);
    ops.pi = pi;
    ops.sigma = Mat::identity(N) - pi;
    ops.phi = phi * pi;
    ops.preserved = opt.preserve;
    verify_bimodule_ops(ops);
    return ops;
}

} // namespace ncgerm

#endif // NCGERM_STRUCTURE_HPP
