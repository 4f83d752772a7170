#ifndef NCGERM_MULTIMAP_HPP
#define NCGERM_MULTIMAP_HPP

#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/matrix.hpp"
#include "ncgerm/parallel.hpp"

namespace ncgerm {

/// Default cap on dense tensor entries; NCGERM_MEM_CAP overrides it.
inline constexpr double default_tensor_cap = 1e7;

inline double tensor_cap() {
    if (const char* env = std::getenv("NCGERM_MEM_CAP")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return default_tensor_cap;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

inline void check_tensor_size(std::size_t s, std::size_t g, std::size_t arity) {
    double n = static_cast<double>(g * s * s), total = static_cast<double>(s * s);
    for (std::size_t k = 0; k < arity; ++k) total *= n;
    if (total > tensor_cap())
        throw ResourceLimit("tensor with " + std::to_string(static_cast<long long>(total)) +
                            " entries exceeds the cap (set NCGERM_MEM_CAP to raise it)");
}

/// An l-linear map (M_s^g)^l -> M_s stored as a dense coefficient tensor.
///
/// Input basis element b = j*s*s + p*s + q stands for E_pq in component j.
/// The entry for inputs (b_1, ..., b_l) and output E_pq sits at
/// ((b_1*N + b_2)*N + ... + b_l)*s*s + p*s + q with N = g*s*s.
class MultiMap {
public:
    MultiMap() = default;
    MultiMap(std::size_t s, std::size_t g, std::size_t arity) : s_(s), g_(g), l_(arity) {
        check_tensor_size(s, g, arity);
        a_.assign(ipow(g * s * s, arity) * s * s, Scalar(0));
    }

    /// Arity-0 map with the given value.
    static MultiMap constant(const Mat& m, std::size_t g) {
        if (!m.square()) throw DimensionMismatch("constant map needs a square matrix");
        MultiMap f(m.rows(), g, 0);
        f.a_ = m.data();
        return f;
    }

    /// Z -> Z_j.
    static MultiMap coordinate(std::size_t s, std::size_t g, std::size_t j) {
        MultiMap f(s, g, 1);
        const std::size_t ss = s * s;
        for (std::size_t r = 0; r < ss; ++r) f.a_[(j * ss + r) * ss + r] = 1;
        return f;
    }

    std::size_t s() const noexcept { return s_; }
    std::size_t g() const noexcept { return g_; }
    std::size_t arity() const noexcept { return l_; }
    /// Dimension of M_s^g.
    std::size_t n() const noexcept { return g_ * s_ * s_; }
    std::size_t inputs() const noexcept { return a_.size() / (s_ * s_); }
    std::size_t entries() const noexcept { return a_.size(); }

    const std::vector<Scalar>& data() const noexcept { return a_; }
    std::vector<Scalar>& data() noexcept { return a_; }

    Scalar& at(std::size_t input, std::size_t p, std::size_t q) { return a_[input * s_ * s_ + p * s_ + q]; }
    const Scalar& at(std::size_t input, std::size_t p, std::size_t q) const {
        return a_[input * s_ * s_ + p * s_ + q];
    }

    /// Output matrix for a basis input tuple.
    Mat value(std::size_t input) const {
        const std::size_t ss = s_ * s_;
        return Mat(s_, s_, std::vector<Scalar>(a_.begin() + input * ss, a_.begin() + (input + 1) * ss));
    }

    void set_value(std::size_t input, const Mat& m) {
        const std::size_t ss = s_ * s_;
        for (std::size_t k = 0; k < ss; ++k) a_[input * ss + k] = m.data()[k];
    }

    /// Arity-0 value.
    Mat matrix() const {
        if (l_ != 0) throw DimensionMismatch("matrix() on a map of positive arity");
        return value(0);
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    /// Splits an input index into its slot components, slot 0 first.
    std::vector<std::size_t> split_input(std::size_t input) const {
        std::vector<std::size_t> b(l_);
        const std::size_t N = n();
        for (std::size_t k = l_; k-- > 0;) {
            b[k] = input % N;
            input /= N;
        }
        return b;
    }

    std::size_t join_input(const std::vector<std::size_t>& b) const {
        std::size_t idx = 0;
        for (auto x : b) idx = idx * n() + x;
        return idx;
    }

    /// Evaluates the map on arbitrary tuples by multilinear expansion.
    Mat apply(const std::vector<MatTuple>& z) const {
        if (z.size() != l_) throw DimensionMismatch("wrong number of arguments for multilinear map");
        std::vector<Vec> v;
        for (const auto& t : z) {
            if (t.size() != s_ || t.g() != g_) throw DimensionMismatch("argument does not match map shape");
            v.push_back(tuple_to_vector(t));
        }
        // Contract the slots one by one from the last.
        std::vector<Scalar> cur = a_;
        const std::size_t N = n(), ss = s_ * s_;
        for (std::size_t k = l_; k-- > 0;) {
            std::size_t outer = cur.size() / (N * ss);
            std::vector<Scalar> next(outer * ss);
            for (std::size_t o = 0; o < outer; ++o)
                for (std::size_t b = 0; b < N; ++b) {
                    if (v[k][b] == 0) continue;
                    for (std::size_t r = 0; r < ss; ++r) {
                        const Scalar& x = cur[(o * N + b) * ss + r];
                        if (x != 0) next[o * ss + r] += v[k][b] * x;
                    }
                }
            cur = std::move(next);
        }
        return Mat(s_, s_, std::move(cur));
    }

    MultiMap& operator+=(const MultiMap& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (o.a_[k] != 0) a_[k] += o.a_[k];
        return *this;
    }
    MultiMap& operator-=(const MultiMap& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (o.a_[k] != 0) a_[k] -= o.a_[k];
        return *this;
    }
    MultiMap& operator*=(const Scalar& c) {
        for (auto& x : a_)
            if (x != 0) x *= c;
        return *this;
    }
    friend MultiMap operator+(MultiMap a, const MultiMap& b) { return a += b; }
    friend MultiMap operator-(MultiMap a, const MultiMap& b) { return a -= b; }
    friend MultiMap operator*(const Scalar& c, MultiMap a) { return a *= c; }

    friend bool operator==(const MultiMap& a, const MultiMap& b) {
        return a.s_ == b.s_ && a.g_ == b.g_ && a.l_ == b.l_ && a.a_ == b.a_;
    }
    friend bool operator!=(const MultiMap& a, const MultiMap& b) { return !(a == b); }

    /// f(..., A z, ...) in the given slot, where A is an N x N matrix acting on coordinates.
    MultiMap precompose(std::size_t slot, const Mat& a) const {
        const std::size_t N = n();
        if (slot >= l_) throw DimensionMismatch("slot out of range");
        if (a.rows() != N || a.cols() != N) throw DimensionMismatch("precompose needs an N x N matrix");
        MultiMap r(s_, g_, l_);
        const std::size_t inner = ipow(N, l_ - slot - 1) * s_ * s_;
        const std::size_t outer = ipow(N, slot);
        std::vector<std::pair<std::size_t, std::size_t>> nz;
        for (std::size_t c = 0; c < N; ++c)
            for (std::size_t b = 0; b < N; ++b)
                if (a(c, b) != 0) nz.emplace_back(c, b);
        Scalar t;
        for (std::size_t o = 0; o < outer; ++o)
            for (auto [c, b] : nz) {
                const Scalar& coef = a(c, b);
                const Scalar* src = &a_[(o * N + c) * inner];
                Scalar* dst = &r.a_[(o * N + b) * inner];
                for (std::size_t i = 0; i < inner; ++i)
                    if (src[i] != 0) {
                        t = coef * src[i];
                        dst[i] += t;
                    }
            }
        return r;
    }

    /// Fixes one slot to the vector v (coordinates in M_s^g), lowering the arity by one.
    MultiMap contract(std::size_t slot, const Vec& v) const {
        const std::size_t N = n();
        if (slot >= l_) throw DimensionMismatch("slot out of range");
        if (v.size() != N) throw DimensionMismatch("contraction vector has wrong length");
        MultiMap r(s_, g_, l_ - 1);
        const std::size_t inner = ipow(N, l_ - slot - 1) * s_ * s_;
        const std::size_t outer = ipow(N, slot);
        Scalar t;
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t c = 0; c < N; ++c) {
                if (v[c] == 0) continue;
                const Scalar* src = &a_[(o * N + c) * inner];
                Scalar* dst = &r.a_[o * inner];
                for (std::size_t i = 0; i < inner; ++i)
                    if (src[i] != 0) {
                        t = v[c] * src[i];
                        dst[i] += t;
                    }
            }
        return r;
    }

    /// m * f(...).
    MultiMap left_multiply(const Mat& m) const {
        MultiMap r(s_, g_, l_);
        const std::size_t ss = s_ * s_;
        Scalar t;
        for (std::size_t in = 0; in < inputs(); ++in)
            for (std::size_t p = 0; p < s_; ++p)
                for (std::size_t k = 0; k < s_; ++k) {
                    if (m(p, k) == 0) continue;
                    for (std::size_t q = 0; q < s_; ++q) {
                        const Scalar& x = a_[in * ss + k * s_ + q];
                        if (x != 0) {
                            t = m(p, k) * x;
                            r.a_[in * ss + p * s_ + q] += t;
                        }
                    }
                }
        return r;
    }

    /// f(...) * m.
    MultiMap right_multiply(const Mat& m) const {
        MultiMap r(s_, g_, l_);
        const std::size_t ss = s_ * s_;
        Scalar t;
        for (std::size_t in = 0; in < inputs(); ++in)
            for (std::size_t p = 0; p < s_; ++p)
                for (std::size_t k = 0; k < s_; ++k) {
                    const Scalar& x = a_[in * ss + p * s_ + k];
                    if (x == 0) continue;
                    for (std::size_t q = 0; q < s_; ++q)
                        if (m(k, q) != 0) {
                            t = x * m(k, q);
                            r.a_[in * ss + p * s_ + q] += t;
                        }
                }
        return r;
    }

    /// (a*b)(Z^1..Z^{i+j}) = a(Z^1..Z^i) b(Z^{i+1}..Z^{i+j}).
    friend MultiMap product(const MultiMap& a, const MultiMap& b) {
        if (a.s_ != b.s_ || a.g_ != b.g_) throw DimensionMismatch("product of maps with different shapes");
        const std::size_t s = a.s_, ss = s * s;
        MultiMap r(s, a.g_, a.l_ + b.l_);
        const std::size_t nb = b.inputs();
        parallel_for(a.inputs(), [&](std::size_t ia) {
            Scalar t;
            for (std::size_t p = 0; p < s; ++p)
                for (std::size_t k = 0; k < s; ++k) {
                    const Scalar& x = a.a_[ia * ss + p * s + k];
                    if (x == 0) continue;
                    for (std::size_t ib = 0; ib < nb; ++ib)
                        for (std::size_t q = 0; q < s; ++q) {
                            const Scalar& y = b.a_[ib * ss + k * s + q];
                            if (y != 0) {
                                t = x * y;
                                r.a_[(ia * nb + ib) * ss + p * s + q] += t;
                            }
                        }
                }
        });
        return r;
    }

    /// Replaces a slot by two slots (U, V) feeding U * psi(V); psi is s*s x N.
    MultiMap split_right(std::size_t slot, const Mat& psi) const {
        check_psi(psi);
        if (slot >= l_) throw DimensionMismatch("slot out of range");
        const std::size_t N = n(), s = s_, ss = s * s;
        MultiMap r(s_, g_, l_ + 1);
        const std::size_t inner = ipow(N, l_ - slot - 1) * ss;
        const std::size_t outer = ipow(N, slot);
        Scalar t;
        // U = (j,p,k): U_j psi(V) = sum_q psi[(k,q),V] E_pq in component j.
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t u = 0; u < N; ++u) {
                const std::size_t j = u / ss, p = (u % ss) / s, k = u % s;
                for (std::size_t v = 0; v < N; ++v) {
                    Scalar* dst = &r.a_[((o * N + u) * N + v) * inner];
                    for (std::size_t q = 0; q < s; ++q) {
                        const Scalar& c = psi(k * s + q, v);
                        if (c == 0) continue;
                        const Scalar* src = &a_[(o * N + j * ss + p * s + q) * inner];
                        for (std::size_t i = 0; i < inner; ++i)
                            if (src[i] != 0) {
                                t = c * src[i];
                                dst[i] += t;
                            }
                    }
                }
            }
        return r;
    }

    /// Replaces a slot by two slots (U, V) feeding psi(U) * V.
    MultiMap split_left(std::size_t slot, const Mat& psi) const {
        check_psi(psi);
        if (slot >= l_) throw DimensionMismatch("slot out of range");
        const std::size_t N = n(), s = s_, ss = s * s;
        MultiMap r(s_, g_, l_ + 1);
        const std::size_t inner = ipow(N, l_ - slot - 1) * ss;
        const std::size_t outer = ipow(N, slot);
        Scalar t;
        // V = (j,k,q): psi(U) V_j = sum_p psi[(p,k),U] E_pq in component j.
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t u = 0; u < N; ++u)
                for (std::size_t v = 0; v < N; ++v) {
                    const std::size_t j = v / ss, k = (v % ss) / s, q = v % s;
                    Scalar* dst = &r.a_[((o * N + u) * N + v) * inner];
                    for (std::size_t p = 0; p < s; ++p) {
                        const Scalar& c = psi(p * s + k, u);
                        if (c == 0) continue;
                        const Scalar* src = &a_[(o * N + j * ss + p * s + q) * inner];
                        for (std::size_t i = 0; i < inner; ++i)
                            if (src[i] != 0) {
                                t = c * src[i];
                                dst[i] += t;
                            }
                    }
                }
        return r;
    }

    /// (U, Z...) -> psi(U) f(Z...).
    MultiMap left_act(const Mat& psi) const {
        check_psi(psi);
        const std::size_t N = n(), s = s_, ss = s * s, ni = inputs();
        MultiMap r(s_, g_, l_ + 1);
        Scalar t;
        for (std::size_t u = 0; u < N; ++u)
            for (std::size_t in = 0; in < ni; ++in)
                for (std::size_t p = 0; p < s; ++p)
                    for (std::size_t k = 0; k < s; ++k) {
                        const Scalar& c = psi(p * s + k, u);
                        if (c == 0) continue;
                        for (std::size_t q = 0; q < s; ++q) {
                            const Scalar& x = a_[in * ss + k * s + q];
                            if (x != 0) {
                                t = c * x;
                                r.a_[(u * ni + in) * ss + p * s + q] += t;
                            }
                        }
                    }
        return r;
    }

    /// (Z..., V) -> f(Z...) psi(V).
    MultiMap right_act(const Mat& psi) const {
        check_psi(psi);
        const std::size_t N = n(), s = s_, ss = s * s, ni = inputs();
        MultiMap r(s_, g_, l_ + 1);
        Scalar t;
        for (std::size_t in = 0; in < ni; ++in)
            for (std::size_t v = 0; v < N; ++v)
                for (std::size_t p = 0; p < s; ++p)
                    for (std::size_t k = 0; k < s; ++k) {
                        const Scalar& x = a_[in * ss + p * s + k];
                        if (x == 0) continue;
                        for (std::size_t q = 0; q < s; ++q) {
                            const Scalar& c = psi(k * s + q, v);
                            if (c != 0) {
                                t = x * c;
                                r.a_[(in * N + v) * ss + p * s + q] += t;
                            }
                        }
                    }
        return r;
    }

    /// Index and value of the first nonzero entry, or npos.
    std::pair<std::size_t, Scalar> first_nonzero() const {
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (a_[k] != 0) return {k, a_[k]};
        return {static_cast<std::size_t>(-1), Scalar(0)};
    }

private:
    void check_same(const MultiMap& o) const {
        if (s_ != o.s_ || g_ != o.g_ || l_ != o.l_) throw DimensionMismatch("multilinear maps differ in shape");
    }
    void check_psi(const Mat& psi) const {
        if (psi.rows() != s_ * s_ || psi.cols() != n()) throw DimensionMismatch("psi must be s*s x N");
    }

    std::size_t s_ = 0, g_ = 0, l_ = 0;
    std::vector<Scalar> a_;
};

/// Matrix of Z -> M Z (componentwise) on coordinates of M_s^g.
inline Mat left_mult_operator(const Mat& m, std::size_t g) {
    const std::size_t s = m.rows(), ss = s * s, N = g * ss;
    Mat a(N, N);
    // (M E_kq)_pq = M_pk.
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t k = 0; k < s; ++k)
            for (std::size_t q = 0; q < s; ++q)
                for (std::size_t p = 0; p < s; ++p) a(j * ss + p * s + q, j * ss + k * s + q) = m(p, k);
    return a;
}

/// Matrix of Z -> Z M (componentwise).
inline Mat right_mult_operator(const Mat& m, std::size_t g) {
    const std::size_t s = m.rows(), ss = s * s, N = g * ss;
    Mat a(N, N);
    // (E_pk M)_pq = M_kq.
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t p = 0; p < s; ++p)
            for (std::size_t k = 0; k < s; ++k)
                for (std::size_t q = 0; q < s; ++q) a(j * ss + p * s + q, j * ss + p * s + k) = m(k, q);
    return a;
}

/// Matrix (N x s*s) of S -> ([S,Y_1], ..., [S,Y_g]).
inline Mat ad_operator(const MatTuple& y) {
    const std::size_t s = y.size(), ss = s * s, N = y.g() * ss;
    Mat a(N, ss);
    for (std::size_t e = 0; e < ss; ++e) {
        Vec v = tuple_to_vector(commutator(Mat::unit(s, e / s, e % s), y));
        for (std::size_t r = 0; r < N; ++r) a(r, e) = v[r];
    }
    return a;
}

} // namespace ncgerm

#endif // NCGERM_MULTIMAP_HPP
