#ifndef NCGERM_HERMITE_HPP
#define NCGERM_HERMITE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/freealg.hpp"
#include "ncgerm/jet.hpp"
#include "ncgerm/lac.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/structure.hpp"

namespace ncgerm {

inline constexpr std::size_t default_degree_cap = 12;

struct InterpolationProblem {
    std::vector<MatTuple> points;
    std::vector<Jet> targets;
    std::size_t L = 0;
    std::size_t Dmax = default_degree_cap;
};

/// Degree bound 2N log2 N + 4N - 4 with N = L(L+1) g sum s_i^3 (floored).
inline double theoretical_degree_bound(const InterpolationProblem& prob) {
    if (prob.points.empty() || prob.L == 0) return 0;
    double sum = 0;
    for (const auto& y : prob.points) sum += std::pow(static_cast<double>(y.size()), 3);
    double N = static_cast<double>(prob.L * (prob.L + 1) * prob.points.front().g()) * sum;
    return std::floor(2 * N * std::log2(N) + 4 * N - 4);
}

/// min(Dmax, bound); the bound is ignored when it is zero (L = 0).
inline std::size_t degree_cap(const InterpolationProblem& prob) {
    double b = theoretical_degree_bound(prob);
    if (b <= 0) return prob.Dmax;
    return std::min<std::size_t>(prob.Dmax, static_cast<std::size_t>(b));
}

/// Throws PreconditionFailed (or a subclass) unless the problem satisfies the hypotheses.
inline void validate(const InterpolationProblem& prob) {
    if (prob.points.empty()) throw PreconditionFailed("interpolation problem has no points");
    if (prob.points.size() != prob.targets.size()) throw PreconditionFailed("one target jet per point is required");
    const std::size_t g = prob.points.front().g();
    for (std::size_t i = 0; i < prob.points.size(); ++i) {
        const auto& y = prob.points[i];
        if (y.g() != g) throw PreconditionFailed("points have different letter counts");
        if (prob.targets[i].Y != y) throw PreconditionFailed("target " + std::to_string(i + 1) + " is pinned elsewhere");
        if (prob.targets[i].maps.size() < prob.L + 1)
            throw PreconditionFailed("target " + std::to_string(i + 1) + " is shorter than L");
    }
    if (!are_separated(prob.points)) throw NotSeparated("points are not separated");
    for (std::size_t i = 0; i < prob.points.size(); ++i) {
        LacReport rep = check_lac_truncated(prob.points[i], prob.targets[i], prob.L);
        if (!rep.holds)
            throw PreconditionFailed("target " + std::to_string(i + 1) + " violates the truncated conditions (" +
                                     rep.violations.front().tag + ", order " +
                                     std::to_string(rep.violations.front().order) + ")");
    }
}

/// Flattened jets up to order L of every word, grown one degree at a time.
class WordJetTable {
public:
    WordJetTable(std::vector<MatTuple> points, std::size_t L) : points_(std::move(points)), L_(L) {
        g_ = points_.front().g();
        std::vector<Jet> unit;
        for (const auto& y : points_) unit.push_back(constant_jet(y, L_));
        words_.push_back({});
        jets_.push_back(std::move(unit));
        level_start_.push_back(0);
        level_start_.push_back(1);
    }

    std::size_t degree() const { return level_start_.size() - 2; }

    void extend_to(std::size_t d) {
        while (degree() < d) grow();
    }

    /// Number of words of length at most d.
    std::size_t count(std::size_t d) const { return level_start_.at(d + 1); }
    const Word& word(std::size_t i) const { return words_[i]; }

    std::size_t rows() const {
        std::size_t r = 0;
        for (const auto& j : jets_.front())
            for (const auto& m : j.maps) r += m.entries();
        return r;
    }

    Vec column(std::size_t i) const { return flatten(jets_[i]); }

    static Vec flatten(const std::vector<Jet>& js) {
        Vec v;
        for (const auto& j : js)
            for (const auto& m : j.maps) v.insert(v.end(), m.data().begin(), m.data().end());
        return v;
    }

    /// Columns for words of length <= d as a dense matrix.
    Mat matrix(std::size_t d) const {
        const std::size_t n = count(d), r = rows();
        Mat a(r, n);
        for (std::size_t c = 0; c < n; ++c) {
            Vec v = column(c);
            for (std::size_t k = 0; k < r; ++k)
                if (v[k] != 0) a(k, c) = v[k];
        }
        return a;
    }

private:
    void grow() {
        const std::size_t lo = level_start_[level_start_.size() - 2], hi = level_start_.back();
        std::vector<std::vector<Jet>> letters(g_);
        for (std::size_t j = 0; j < g_; ++j)
            for (const auto& y : points_) letters[j].push_back(letter_jet(y, L_, j));
        for (std::size_t j = 0; j < g_; ++j)
            for (std::size_t i = lo; i < hi; ++i) {
                Word w{static_cast<int>(j)};
                w.insert(w.end(), words_[i].begin(), words_[i].end());
                std::vector<Jet> js;
                for (std::size_t k = 0; k < points_.size(); ++k) js.push_back(jet_mul(letters[j][k], jets_[i][k]));
                words_.push_back(std::move(w));
                jets_.push_back(std::move(js));
            }
        // Prepending letters level by level already yields lexicographic order.
        level_start_.push_back(words_.size());
    }

    std::vector<MatTuple> points_;
    std::size_t L_ = 0, g_ = 0;
    std::vector<Word> words_;
    std::vector<std::vector<Jet>> jets_;
    std::vector<std::size_t> level_start_;
};

struct InterpolationResult {
    NcPoly poly;
    std::size_t degree = 0;
};

/// Lowest-degree solution of the word-coefficient system; see interpolate.
inline InterpolationResult solve_interpolation(const InterpolationProblem& prob) {
    validate(prob);
    const std::size_t g = prob.points.front().g();
    const std::size_t cap = degree_cap(prob);
    std::vector<Jet> targets;
    for (const auto& t : prob.targets) {
        Jet cut{t.Y, std::vector<MultiMap>(t.maps.begin(), t.maps.begin() + prob.L + 1)};
        targets.push_back(std::move(cut));
    }
    Vec rhs = WordJetTable::flatten(targets);
    WordJetTable table(prob.points, prob.L);
    for (std::size_t d = 0; d <= cap; ++d) {
        table.extend_to(d);
        Mat a = table.matrix(d);
        LinearSolution sol = solve_linear(a, Mat::column(rhs));
        if (!sol.x) continue;
        NcPoly p(g);
        for (std::size_t c = 0; c < table.count(d); ++c) p.add_term(table.word(c), (*sol.x)(c, 0));
        return {p, d};
    }
    throw Infeasible("no interpolating polynomial of degree <= " + std::to_string(cap) + " (degree cap reached; Dmax=" +
                     std::to_string(prob.Dmax) + ", theoretical bound " +
                     std::to_string(static_cast<long long>(theoretical_degree_bound(prob))) + ")");
}

inline NcPoly interpolate(const InterpolationProblem& prob) { return solve_interpolation(prob).poly; }

inline std::size_t min_degree(const InterpolationProblem& prob) { return solve_interpolation(prob).degree; }

/// Basis of {p : deg p <= d, p vanishes on every bidiagonal point of order l at Y}.
inline std::vector<NcPoly> vanishing_ideal_basis(const MatTuple& y, std::size_t l, std::size_t d) {
    check_tensor_size(y.size(), y.g(), l);
    WordJetTable table({y}, l);
    table.extend_to(d);
    std::vector<NcPoly> out;
    for (const auto& v : kernel_basis(table.matrix(d))) {
        NcPoly p(y.g());
        for (std::size_t c = 0; c < v.size(); ++c) p.add_term(table.word(c), v[c]);
        out.push_back(std::move(p));
    }
    return out;
}

/// Coordinates of p on the words of length <= d (deglex order).
inline Vec poly_coordinates(const NcPoly& p, std::size_t d) {
    auto ws = words_up_to(p.g(), d);
    std::map<Word, std::size_t, DeglexLess> index;
    for (std::size_t i = 0; i < ws.size(); ++i) index.emplace(ws[i], i);
    Vec v(ws.size());
    for (const auto& [w, c] : p.terms()) {
        auto it = index.find(w);
        if (it == index.end()) throw DimensionMismatch("polynomial exceeds the coordinate degree");
        v[it->second] = c;
    }
    return v;
}

inline NcPoly poly_from_coordinates(std::size_t g, const Vec& v, std::size_t d) {
    auto ws = words_up_to(g, d);
    NcPoly p(g);
    for (std::size_t i = 0; i < ws.size(); ++i) p.add_term(ws[i], v[i]);
    return p;
}

/// Degree-<= d part of span{p q : p in A, q in B}, where the spanning
/// products are formed from slices of degree <= dprod.
inline std::vector<NcPoly> product_slice(const std::vector<NcPoly>& a, const std::vector<NcPoly>& b, std::size_t d,
                                         std::size_t dprod) {
    if (a.empty() || b.empty()) return {};
    const std::size_t g = a.front().g();
    const std::size_t nw = words_up_to(g, dprod).size(), nlow = words_up_to(g, d).size();
    Subspace span(nw);
    for (const auto& p : a)
        for (const auto& q : b)
            if (p.degree() + q.degree() <= static_cast<int>(dprod)) span.add(poly_coordinates(p * q, dprod));
    // Combinations of the span basis with no coordinates above degree d.
    const auto& basis = span.basis();
    Mat high(nw - nlow, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t r = nlow; r < nw; ++r) high(r - nlow, i) = basis[i][r];
    std::vector<Vec> low;
    for (const auto& k : kernel_basis(high)) {
        Vec v(nlow);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (k[i] != 0)
                for (std::size_t r = 0; r < nlow; ++r) v[r] += k[i] * basis[i][r];
        low.push_back(std::move(v));
    }
    std::vector<NcPoly> out;
    Subspace slice(low, nlow);
    for (const auto& v : slice.basis()) out.push_back(poly_from_coordinates(g, v, d));
    return out;
}

} // namespace ncgerm

#endif // NCGERM_HERMITE_HPP
