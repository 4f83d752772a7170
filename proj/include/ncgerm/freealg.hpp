#ifndef NCGERM_FREEALG_HPP
#define NCGERM_FREEALG_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/scalar.hpp"

namespace ncgerm {

/// A word in the free monoid; letters are 0-based internally.
using Word = std::vector<int>;

/// Degree-lexicographic order: shorter words first, then lexicographic.
struct DeglexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline std::string word_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '*';
        s += "x" + std::to_string(w[i] + 1);
    }
    return s;
}

/// All words of length d over g letters, in lexicographic order.
inline std::vector<Word> words_of_length(std::size_t g, std::size_t d) {
    std::vector<Word> out;
    Word w(d, 0);
    while (true) {
        out.push_back(w);
        std::size_t i = d;
        while (i > 0 && w[i - 1] == static_cast<int>(g) - 1) {
            w[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
        ++w[i - 1];
    }
    return out;
}

/// All words of length at most d, in deglex order.
inline std::vector<Word> words_up_to(std::size_t g, std::size_t d) {
    std::vector<Word> out;
    for (std::size_t k = 0; k <= d; ++k) {
        auto w = words_of_length(g, k);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

/// Finitely supported linear combination of words over g letters.
class NcPoly {
public:
    using Terms = std::map<Word, Scalar, DeglexLess>;

    NcPoly() = default;
    explicit NcPoly(std::size_t g) : g_(g) {}

    static NcPoly constant(std::size_t g, const Scalar& c) {
        NcPoly p(g);
        p.add_term({}, c);
        return p;
    }
    /// The letter x_{j+1}.
    static NcPoly letter(std::size_t g, int j) {
        NcPoly p(g);
        p.add_term({j}, 1);
        return p;
    }
    static NcPoly monomial(std::size_t g, const Word& w, const Scalar& c = 1) {
        NcPoly p(g);
        p.add_term(w, c);
        return p;
    }

    std::size_t g() const noexcept { return g_; }
    const Terms& terms() const noexcept { return t_; }
    bool is_zero() const noexcept { return t_.empty(); }
    std::size_t size() const noexcept { return t_.size(); }

    /// Highest word length present; -1 for the zero polynomial.
    int degree() const { return t_.empty() ? -1 : static_cast<int>(t_.rbegin()->first.size()); }

    Scalar coeff(const Word& w) const {
        auto it = t_.find(w);
        return it == t_.end() ? Scalar(0) : it->second;
    }

    Scalar constant_term() const { return coeff({}); }

    void add_term(const Word& w, const Scalar& c) {
        for (int x : w)
            if (x < 0 || static_cast<std::size_t>(x) >= g_)
                throw DimensionMismatch("letter index out of range");
        if (c == 0) return;
        auto [it, inserted] = t_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    NcPoly& operator+=(const NcPoly& o) {
        check(o);
        for (const auto& [w, c] : o.t_) add_term(w, c);
        return *this;
    }
    NcPoly& operator-=(const NcPoly& o) {
        check(o);
        for (const auto& [w, c] : o.t_) add_term(w, -c);
        return *this;
    }
    NcPoly& operator*=(const Scalar& c) {
        if (c == 0) {
            t_.clear();
            return *this;
        }
        for (auto& kv : t_) kv.second *= c;
        return *this;
    }

    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator-(NcPoly a) { return a *= Scalar(-1); }
    friend NcPoly operator*(NcPoly a, const Scalar& c) { return a *= c; }
    friend NcPoly operator*(const Scalar& c, NcPoly a) { return a *= c; }

    /// Product truncated to words of length at most max_len (no truncation if negative).
    static NcPoly product(const NcPoly& a, const NcPoly& b, long max_len = -1) {
        a.check(b);
        NcPoly r(a.g_);
        for (const auto& [u, cu] : a.t_) {
            if (max_len >= 0 && static_cast<long>(u.size()) > max_len) break;
            for (const auto& [v, cv] : b.t_) {
                if (max_len >= 0 && static_cast<long>(u.size() + v.size()) > max_len) break;
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                r.add_term(w, cu * cv);
            }
        }
        return r;
    }

    friend NcPoly operator*(const NcPoly& a, const NcPoly& b) { return product(a, b); }

    friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.g_ == b.g_ && a.t_ == b.t_; }
    friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

    /// Terms of word length exactly d.
    NcPoly homogeneous_component(std::size_t d) const {
        NcPoly r(g_);
        for (const auto& [w, c] : t_)
            if (w.size() == d) r.t_.emplace(w, c);
        return r;
    }

    /// Terms of word length at most d.
    NcPoly truncated(std::size_t d) const {
        NcPoly r(g_);
        for (const auto& [w, c] : t_)
            if (w.size() <= d) r.t_.emplace(w, c);
        return r;
    }

    /// L_j: keeps words starting with letter j and strips that letter.
    NcPoly transduct(int j) const {
        if (j < 0 || static_cast<std::size_t>(j) >= g_) throw DimensionMismatch("transduction letter out of range");
        NcPoly r(g_);
        for (const auto& [w, c] : t_)
            if (!w.empty() && w.front() == j) r.t_.emplace(Word(w.begin() + 1, w.end()), c);
        return r;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : t_) {
            Scalar a = abs(c);
            os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (w.empty())
                os << a.get_str();
            else {
                if (a != 1) os << a.get_str() << '*';
                os << word_string(w);
            }
            first = false;
        }
        return os.str();
    }

private:
    void check(const NcPoly& o) const {
        if (g_ != o.g_) throw DimensionMismatch("letter counts differ");
    }

    std::size_t g_ = 0;
    Terms t_;
};

/// A power series truncated at order D: only words of length at most D are kept.
class NcSeries {
public:
    NcSeries() = default;
    NcSeries(std::size_t g, std::size_t order) : p_(g), d_(order) {}
    NcSeries(const NcPoly& p, std::size_t order) : p_(p.truncated(order)), d_(order) {}

    std::size_t g() const noexcept { return p_.g(); }
    std::size_t order() const noexcept { return d_; }
    const NcPoly& poly() const noexcept { return p_; }
    bool is_zero() const noexcept { return p_.is_zero(); }

    NcSeries& operator+=(const NcSeries& o) {
        check(o);
        p_ += o.p_;
        return *this;
    }
    NcSeries& operator-=(const NcSeries& o) {
        check(o);
        p_ -= o.p_;
        return *this;
    }
    friend NcSeries operator+(NcSeries a, const NcSeries& b) { return a += b; }
    friend NcSeries operator-(NcSeries a, const NcSeries& b) { return a -= b; }
    friend NcSeries operator*(const Scalar& c, NcSeries a) {
        a.p_ *= c;
        return a;
    }

    friend NcSeries operator*(const NcSeries& a, const NcSeries& b) {
        a.check(b);
        NcSeries r(a.g(), a.d_);
        r.p_ = NcPoly::product(a.p_, b.p_, static_cast<long>(a.d_));
        return r;
    }

    friend bool operator==(const NcSeries& a, const NcSeries& b) { return a.d_ == b.d_ && a.p_ == b.p_; }

    /// Inverse modulo words longer than D; requires a nonzero constant term.
    NcSeries inverse() const {
        Scalar c = p_.constant_term();
        if (c == 0) throw NotInvertible("series with zero constant term is not invertible");
        // f = c(1 - u) with u without constant term; f^{-1} = c^{-1} sum u^k.
        NcSeries u(g(), d_);
        u.p_ = NcPoly::constant(g(), 1) - p_ * (1 / c);
        NcSeries acc(NcPoly::constant(g(), 1), d_), term = acc;
        for (std::size_t k = 1; k <= d_; ++k) {
            term = term * u;
            acc += term;
        }
        acc.p_ *= 1 / c;
        return acc;
    }

    NcSeries transduct(int j) const {
        NcSeries r(g(), d_);
        r.p_ = p_.transduct(j);
        return r;
    }

    NcPoly homogeneous_component(std::size_t d) const { return p_.homogeneous_component(d); }

private:
    void check(const NcSeries& o) const {
        if (g() != o.g()) throw DimensionMismatch("letter counts differ");
        if (d_ != o.d_) throw DimensionMismatch("series truncation orders differ");
    }

    NcPoly p_;
    std::size_t d_ = 0;
};

/// h_s = sum over permutations pi of {0..s} of sign(pi) x1^{pi(0)} x2 x1^{pi(1)} x2 ... x1^{pi(s)} x2.
inline NcPoly alternating_poly(std::size_t s) {
    if (s < 1) throw PreconditionFailed("alternating_poly requires s >= 1");
    std::vector<int> perm(s + 1);
    std::iota(perm.begin(), perm.end(), 0);
    NcPoly h(2);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inversions;
        Word w;
        for (int e : perm) {
            w.insert(w.end(), static_cast<std::size_t>(e), 0);
            w.push_back(1);
        }
        h.add_term(w, inversions % 2 ? -1 : 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return h;
}

} // namespace ncgerm

#endif // NCGERM_FREEALG_HPP
