#ifndef NCGERM_GENERIC_HPP
#define NCGERM_GENERIC_HPP

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/freealg.hpp"
#include "ncgerm/scalar.hpp"

namespace ncgerm {

inline constexpr std::size_t default_monomial_cap = 200000;

/// Polynomial in commuting variables xi^k_{ij}; variable index k*n*n + i*n + j.
class CommPoly {
public:
    using Monomial = std::vector<unsigned short>;

    CommPoly() = default;
    explicit CommPoly(std::size_t nvars) : nvars_(nvars) {}

    static CommPoly constant(std::size_t nvars, const Scalar& c) {
        CommPoly p(nvars);
        if (c != 0) p.t_.emplace(Monomial(nvars, 0), c);
        return p;
    }
    static CommPoly variable(std::size_t nvars, std::size_t v) {
        CommPoly p(nvars);
        Monomial m(nvars, 0);
        m[v] = 1;
        p.t_.emplace(std::move(m), 1);
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    bool is_zero() const noexcept { return t_.empty(); }
    std::size_t size() const noexcept { return t_.size(); }
    const std::map<Monomial, Scalar>& terms() const noexcept { return t_; }

    CommPoly& operator+=(const CommPoly& o) {
        for (const auto& [m, c] : o.t_) add(m, c);
        return *this;
    }

    friend CommPoly operator*(const CommPoly& a, const CommPoly& b) {
        CommPoly r(a.nvars_);
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                Monomial m = ma;
                for (std::size_t k = 0; k < m.size(); ++k) m[k] = static_cast<unsigned short>(m[k] + mb[k]);
                r.add(m, ca * cb);
            }
        return r;
    }

    Scalar evaluate(const std::vector<Scalar>& x) const {
        Scalar acc = 0;
        for (const auto& [m, c] : t_) {
            Scalar t = c;
            for (std::size_t k = 0; k < m.size(); ++k)
                for (unsigned e = 0; e < m[k]; ++e) t *= x[k];
            acc += t;
        }
        return acc;
    }

    std::string str(std::size_t n) const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : t_) {
            os << (first ? "" : " + ") << "(" << c.get_str() << ")";
            for (std::size_t v = 0; v < m.size(); ++v)
                if (m[v]) {
                    std::size_t k = v / (n * n), i = (v % (n * n)) / n, j = v % n;
                    os << "*xi" << k + 1 << "_" << i + 1 << j + 1;
                    if (m[v] > 1) os << "^" << m[v];
                }
            first = false;
        }
        return os.str();
    }

private:
    void add(const Monomial& m, const Scalar& c) {
        if (c == 0) return;
        auto [it, inserted] = t_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    std::size_t nvars_ = 0;
    std::map<Monomial, Scalar> t_;
};

/// n x n matrix with CommPoly entries.
struct GenericMatrix {
    std::size_t n = 0;
    std::vector<CommPoly> entries;

    const CommPoly& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

    bool is_zero() const {
        for (const auto& e : entries)
            if (!e.is_zero()) return false;
        return true;
    }

    std::size_t monomials() const {
        std::size_t k = 0;
        for (const auto& e : entries) k += e.size();
        return k;
    }
};

namespace detail {

inline GenericMatrix generic_mul(const GenericMatrix& a, const GenericMatrix& b, std::size_t cap) {
    const std::size_t n = a.n, nv = a.entries.front().nvars();
    GenericMatrix c{n, std::vector<CommPoly>(n * n, CommPoly(nv))};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b(k, j).is_zero()) c.entries[i * n + j] += a(i, k) * b(k, j);
        }
    if (c.monomials() > cap) throw ResourceLimit("generic evaluation exceeds the monomial cap");
    return c;
}

} // namespace detail

/// The generic tuple Xi: Xi_k has entry xi^k_{ij} at (i,j).
inline GenericMatrix generic_letter(std::size_t n, std::size_t g, std::size_t k) {
    const std::size_t nv = g * n * n;
    GenericMatrix m{n, std::vector<CommPoly>(n * n, CommPoly(nv))};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.entries[i * n + j] = CommPoly::variable(nv, k * n * n + i * n + j);
    return m;
}

/// Exact evaluation of p at n x n generic matrices.
inline GenericMatrix generic_evaluate(const NcPoly& p, std::size_t n, std::size_t cap = default_monomial_cap) {
    const std::size_t g = p.g(), nv = g * n * n;
    GenericMatrix acc{n, std::vector<CommPoly>(n * n, CommPoly(nv))};
    GenericMatrix id{n, std::vector<CommPoly>(n * n, CommPoly(nv))};
    for (std::size_t i = 0; i < n; ++i) id.entries[i * n + i] = CommPoly::constant(nv, 1);
    std::vector<GenericMatrix> letters;
    for (std::size_t k = 0; k < g; ++k) letters.push_back(generic_letter(n, g, k));
    std::map<Word, GenericMatrix> cache;
    for (const auto& [w, c] : p.terms()) {
        GenericMatrix m = id;
        std::size_t k = 0;
        for (std::size_t len = w.size(); len > 0; --len) {
            auto it = cache.find(Word(w.begin(), w.begin() + len));
            if (it != cache.end()) {
                m = it->second;
                k = len;
                break;
            }
        }
        for (; k < w.size(); ++k) {
            m = detail::generic_mul(m, letters[w[k]], cap);
            cache.emplace(Word(w.begin(), w.begin() + k + 1), m);
        }
        CommPoly cc = CommPoly::constant(nv, c);
        for (std::size_t e = 0; e < n * n; ++e)
            if (!m.entries[e].is_zero()) acc.entries[e] += cc * m.entries[e];
        if (acc.monomials() > cap) throw ResourceLimit("generic evaluation exceeds the monomial cap");
    }
    return acc;
}

} // namespace ncgerm

#endif // NCGERM_GENERIC_HPP
