#ifndef NCGERM_MERO_HPP
#define NCGERM_MERO_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/freealg.hpp"
#include "ncgerm/generic.hpp"
#include "ncgerm/jet.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/matrix.hpp"
#include "ncgerm/parallel.hpp"

namespace ncgerm {

enum class NodeKind { Const, Letter, Atom, Add, Sub, Mul, Inv };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Const;
    Scalar value;           // Const
    std::size_t index = 0;  // Letter (0-based) or Atom table slot
    NodePtr lhs, rhs;       // rhs unused for Inv
    std::size_t position = 0;
};

/// A registered atom: a polynomial, or a series truncated at `order`.
struct AtomDef {
    std::string name;
    NcPoly poly;
    std::optional<std::size_t> order;
};

struct MeroExpr {
    std::size_t g = 0;
    NodePtr root;
    std::vector<AtomDef> atoms;

    bool truncated() const {
        return std::any_of(atoms.begin(), atoms.end(), [](const AtomDef& a) { return a.order.has_value(); });
    }
};

namespace detail {

inline NodePtr make_node(NodeKind k, std::size_t pos, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->position = pos;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

inline NodePtr make_const(const Scalar& c, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->value = c;
    n->position = pos;
    return n;
}

inline NodePtr make_leaf(NodeKind k, std::size_t index, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->index = index;
    n->position = pos;
    return n;
}

enum class Tok { Num, Ident, Let, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Eq, Semi, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        // U+2212 MINUS SIGN
        if (c == 0xE2 && s.substr(i, 3) == "\xE2\x88\x92") {
            out.push_back({Tok::Minus, "-", i});
            i += 3;
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Num, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            std::string word(s.substr(i, j - i));
            out.push_back({word == "let" ? Tok::Let : Tok::Ident, word, i});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case '=': k = Tok::Eq; break;
        case ';': k = Tok::Semi; break;
        default: throw SyntaxError("unexpected character '" + std::string(1, s[i]) + "'", i);
        }
        out.push_back({k, std::string(1, s[i]), i});
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

/// Letter index of "x<k>" (1-based k), or nullopt.
inline std::optional<std::size_t> letter_index(const std::string& name) {
    if (name.size() < 2 || name[0] != 'x') return std::nullopt;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    if (name[1] == '0') return std::nullopt;
    return std::stoul(name.substr(1)) - 1;
}

class Parser {
public:
    Parser(std::vector<Token> toks, MeroExpr& expr) : t_(std::move(toks)), e_(expr) {}

    void preamble() {
        while (peek().kind == Tok::Let) {
            next();
            const Token& name = expect(Tok::Ident, "atom name");
            if (letter_index(name.text)) throw SyntaxError("'" + name.text + "' is reserved for a letter", name.pos);
            std::optional<std::size_t> order;
            if (peek().kind == Tok::LBracket) {
                next();
                order = std::stoul(expect(Tok::Num, "truncation order").text);
                expect(Tok::RBracket, "']'");
            }
            expect(Tok::Eq, "'='");
            std::size_t at = peek().pos;
            NodePtr body = expr();
            expect(Tok::Semi, "';'");
            pending_.push_back({body, order, at});
            AtomDef def{name.text, NcPoly(), order};
            auto it = names_.find(name.text);
            if (it != names_.end()) throw SyntaxError("atom '" + name.text + "' is defined twice", name.pos);
            names_.emplace(name.text, e_.atoms.size());
            e_.atoms.push_back(std::move(def));
        }
    }

    void register_atoms(const std::vector<AtomDef>& atoms) {
        for (const auto& a : atoms) {
            names_.emplace(a.name, e_.atoms.size());
            e_.atoms.push_back(a);
        }
    }

    NodePtr main() {
        if (peek().kind == Tok::End) throw SyntaxError("empty expression", peek().pos);
        NodePtr r = expr();
        if (peek().kind == Tok::Semi) next();
        if (peek().kind != Tok::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
        return r;
    }

private:
    const Token& peek() const { return t_[i_]; }
    const Token& next() { return t_[i_++]; }

    const Token& expect(Tok k, const std::string& what) {
        if (peek().kind != k)
            throw SyntaxError("expected " + what + (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"),
                              peek().pos);
        return next();
    }

    NodePtr expr() {
        NodePtr a = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = next();
            NodePtr b = term();
            a = make_node(op.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub, op.pos, a, b);
        }
        return a;
    }

    NodePtr term() {
        NodePtr a = factor();
        while (peek().kind == Tok::Star) {
            const Token& op = next();
            NodePtr b = factor();
            a = make_node(NodeKind::Mul, op.pos, a, b);
        }
        return a;
    }

    NodePtr factor() {
        if (peek().kind == Tok::Minus) {
            const Token& op = next();
            return make_node(NodeKind::Mul, op.pos, make_const(-1, op.pos), factor());
        }
        NodePtr a = primary();
        while (peek().kind == Tok::Caret) {
            const Token& op = next();
            if (peek().kind == Tok::Minus) {
                next();
                const Token& one = expect(Tok::Num, "'1' after '^-'");
                if (one.text != "1") throw SyntaxError("only the exponent -1 may be negative", one.pos);
                a = make_node(NodeKind::Inv, op.pos, a);
                continue;
            }
            const Token& k = expect(Tok::Num, "exponent");
            unsigned long e = std::stoul(k.text);
            if (e == 0) throw SyntaxError("exponent must be -1 or positive", k.pos);
            NodePtr base = a;
            for (unsigned long r = 1; r < e; ++r) a = make_node(NodeKind::Mul, op.pos, a, base);
        }
        return a;
    }

    NodePtr primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Num: {
            next();
            Scalar c(t.text);
            if (peek().kind == Tok::Slash) {
                next();
                const Token& d = expect(Tok::Num, "denominator");
                Scalar den(d.text);
                if (den == 0) throw SyntaxError("zero denominator", d.pos);
                c /= den;
            }
            c.canonicalize();
            return make_const(c, t.pos);
        }
        case Tok::Ident: {
            next();
            if (auto j = letter_index(t.text)) {
                e_.g = std::max(e_.g, *j + 1);
                return make_leaf(NodeKind::Letter, *j, t.pos);
            }
            auto it = names_.find(t.text);
            if (it == names_.end()) throw SyntaxError("unknown atom '" + t.text + "'", t.pos);
            return make_leaf(NodeKind::Atom, it->second, t.pos);
        }
        case Tok::LParen: {
            next();
            NodePtr a = expr();
            expect(Tok::RParen, "')'");
            return a;
        }
        case Tok::End: throw SyntaxError("unexpected end of input", t.pos);
        default: throw SyntaxError("unexpected '" + t.text + "'", t.pos);
        }
    }

public:
    // Preamble bodies, expanded once the letter count is known.
    struct Pending {
        NodePtr node;
        std::optional<std::size_t> order;
        std::size_t position;
    };
    std::vector<Pending> pending_;

private:
    std::vector<Token> t_;
    std::size_t i_ = 0;
    MeroExpr& e_;
    std::map<std::string, std::size_t> names_;
};

} // namespace detail

/// Polynomial (or truncated series) value of an inversion-free subtree;
/// inverses are allowed on constants and, for series, on units.
inline NcSeries expand_node(const Node& n, const MeroExpr& m, std::optional<std::size_t> order) {
    const std::size_t g = m.g;
    const std::size_t D = order.value_or(0);
    auto lift = [&](const NcPoly& p) { return order ? NcSeries(p, D) : NcSeries(p, static_cast<std::size_t>(-1)); };
    switch (n.kind) {
    case NodeKind::Const: return lift(NcPoly::constant(g, n.value));
    case NodeKind::Letter: return lift(NcPoly::letter(g, static_cast<int>(n.index)));
    case NodeKind::Atom: return lift(m.atoms.at(n.index).poly);
    case NodeKind::Add: return expand_node(*n.lhs, m, order) + expand_node(*n.rhs, m, order);
    case NodeKind::Sub: return expand_node(*n.lhs, m, order) - expand_node(*n.rhs, m, order);
    case NodeKind::Mul: {
        NcSeries a = expand_node(*n.lhs, m, order), b = expand_node(*n.rhs, m, order);
        if (order) return a * b;
        return lift(a.poly() * b.poly());
    }
    case NodeKind::Inv: {
        NcSeries a = expand_node(*n.lhs, m, order);
        if (order) {
            try {
                return a.inverse();
            } catch (const NotInvertible&) {
                throw SyntaxError("series atom inverts an element with zero constant term", n.position);
            }
        }
        if (a.poly().degree() != 0) throw NotInvertible("inverse of a non-constant polynomial");
        return lift(NcPoly::constant(g, 1 / a.poly().constant_term()));
    }
    }
    return lift(NcPoly(g));
}

/// Parses an expression, optionally preceded by `let name = expr;` or
/// `let name[D] = expr;` atom definitions. The letter count is the larger
/// of `g` and the highest letter used.
inline MeroExpr parse(std::string_view text, std::size_t g = 0, const std::vector<AtomDef>& atoms = {}) {
    MeroExpr m;
    m.g = g;
    for (const auto& a : atoms) m.g = std::max(m.g, a.poly.g());
    detail::Parser ps(detail::tokenize(text), m);
    ps.register_atoms(atoms);
    ps.preamble();
    m.root = ps.main();
    if (m.g == 0) m.g = 1;
    for (const auto& a : atoms)
        if (a.poly.g() != m.g) throw DimensionMismatch("atom '" + a.name + "' has a different letter count");
    // Expand preamble atoms in definition order now that g is known.
    std::size_t k = atoms.size();
    for (const auto& p : ps.pending_) {
        try {
            NcSeries v = expand_node(*p.node, m, p.order);
            m.atoms[k].poly = v.poly();
        } catch (const NotInvertible&) {
            throw SyntaxError("polynomial atom '" + m.atoms[k].name + "' inverts a non-constant", p.position);
        }
        ++k;
    }
    return m;
}

inline std::string node_string(const Node& n, const MeroExpr& m) {
    auto sum = [](const Node& c) { return c.kind == NodeKind::Add || c.kind == NodeKind::Sub; };
    auto wrapped = [&](const Node& c, bool paren) {
        std::string t = node_string(c, m);
        return paren ? "(" + t + ")" : t;
    };
    switch (n.kind) {
    case NodeKind::Const: return n.value < 0 ? "(" + n.value.get_str() + ")" : n.value.get_str();
    case NodeKind::Letter: return "x" + std::to_string(n.index + 1);
    case NodeKind::Atom: return m.atoms.at(n.index).name;
    case NodeKind::Add: return node_string(*n.lhs, m) + " + " + node_string(*n.rhs, m);
    case NodeKind::Sub: return node_string(*n.lhs, m) + " - " + wrapped(*n.rhs, sum(*n.rhs));
    case NodeKind::Mul: return wrapped(*n.lhs, sum(*n.lhs)) + "*" + wrapped(*n.rhs, sum(*n.rhs));
    case NodeKind::Inv: {
        bool leaf = n.lhs->kind == NodeKind::Letter || n.lhs->kind == NodeKind::Atom;
        return wrapped(*n.lhs, !leaf) + "^-1";
    }
    }
    return "";
}

inline std::string to_string(const MeroExpr& m) { return node_string(*m.root, m); }

inline std::size_t node_count(const Node& n) {
    return 1 + (n.lhs ? node_count(*n.lhs) : 0) + (n.rhs ? node_count(*n.rhs) : 0);
}

inline bool inversion_free(const Node& n) {
    if (n.kind == NodeKind::Inv) return false;
    return (!n.lhs || inversion_free(*n.lhs)) && (!n.rhs || inversion_free(*n.rhs));
}

/// Expanded polynomial of an inversion-free expression (series atoms contribute
/// their stored truncation).
inline std::optional<NcPoly> expand_polynomial(const MeroExpr& m) {
    if (!inversion_free(*m.root)) return std::nullopt;
    return expand_node(*m.root, m, std::nullopt).poly();
}

/// The inverse node that hit a singular matrix. `path` lists child choices
/// from the root (0 = left operand, 1 = right operand).
struct Undefined {
    std::vector<std::size_t> path;
    std::size_t position = 0;
    std::string subexpression;
};

using EvalOutcome = std::variant<Mat, Undefined>;

inline bool is_defined(const EvalOutcome& o) { return std::holds_alternative<Mat>(o); }

namespace detail {

inline EvalOutcome eval(const Node& n, const MeroExpr& m, const MatTuple& x, std::vector<std::size_t>& path) {
    const std::size_t s = x.size();
    auto child = [&](const Node& c, std::size_t which) {
        path.push_back(which);
        EvalOutcome r = eval(c, m, x, path);
        path.pop_back();
        return r;
    };
    switch (n.kind) {
    case NodeKind::Const: return Mat::scalar(s, n.value);
    case NodeKind::Letter: return x[n.index];
    case NodeKind::Atom: return evaluate(m.atoms.at(n.index).poly, x);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul: {
        EvalOutcome a = child(*n.lhs, 0);
        if (!is_defined(a)) return a;
        EvalOutcome b = child(*n.rhs, 1);
        if (!is_defined(b)) return b;
        const Mat& u = std::get<Mat>(a);
        const Mat& v = std::get<Mat>(b);
        if (n.kind == NodeKind::Add) return u + v;
        if (n.kind == NodeKind::Sub) return u - v;
        return u * v;
    }
    case NodeKind::Inv: {
        EvalOutcome a = child(*n.lhs, 0);
        if (!is_defined(a)) return a;
        try {
            return matrix_inverse(std::get<Mat>(a));
        } catch (const SingularMatrix&) {
            return Undefined{path, n.position, node_string(n, m)};
        }
    }
    }
    return Mat(s, s);
}

} // namespace detail

inline EvalOutcome evaluate_expr(const MeroExpr& m, const MatTuple& x) {
    if (x.g() != m.g) throw DimensionMismatch("expression and point have different letter counts");
    std::vector<std::size_t> path;
    return detail::eval(*m.root, m, x, path);
}

/// Jet of the expression at Y to order L; throws NotInvertible when an
/// inverse node is singular at Y.
inline Jet jet_of_expression(const MeroExpr& m, const MatTuple& y, std::size_t L) {
    if (y.g() != m.g) throw DimensionMismatch("expression and point have different letter counts");
    auto rec = [&](auto&& self, const Node& n) -> Jet {
        switch (n.kind) {
        case NodeKind::Const: return constant_jet(y, L, n.value);
        case NodeKind::Letter: return letter_jet(y, L, n.index);
        case NodeKind::Atom: return jet_eval(m.atoms.at(n.index).poly, y, L);
        case NodeKind::Add: return self(self, *n.lhs) + self(self, *n.rhs);
        case NodeKind::Sub: return self(self, *n.lhs) - self(self, *n.rhs);
        case NodeKind::Mul: return jet_mul(self(self, *n.lhs), self(self, *n.rhs));
        case NodeKind::Inv: return jet_inverse(self(self, *n.lhs));
        }
        return zero_jet(y, L);
    };
    return rec(rec, *m.root);
}

/// Integer entries in [-bound, bound] drawn as rng() % (2 bound + 1) - bound.
inline MatTuple random_tuple(std::mt19937_64& rng, std::size_t n, std::size_t g, int bound) {
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(bound) + 1;
    std::vector<Mat> comps;
    for (std::size_t k = 0; k < g; ++k) {
        Mat a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = static_cast<long>(rng() % span) - static_cast<long>(bound);
        comps.push_back(std::move(a));
    }
    return MatTuple(n, std::move(comps));
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    for (auto v : stream) words.push_back(static_cast<std::uint32_t>(v));
    std::seed_seq sq(words.begin(), words.end());
    return std::mt19937_64(sq);
}

enum class Verdict { Zero, Nonzero, AllUndefined };

inline std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Zero: return "Zero";
    case Verdict::Nonzero: return "Nonzero";
    case Verdict::AllUndefined: return "AllUndefined";
    }
    return "";
}

struct SizeVerdict {
    std::size_t n = 0;
    Verdict verdict = Verdict::AllUndefined;
    std::size_t defined = 0, undefined = 0;
    std::optional<MatTuple> witness;
    std::optional<Mat> value;
    std::optional<Undefined> last_undefined;
    bool probabilistic = true;
    bool symbolic = false;
    std::optional<std::size_t> truncation; // series order D when atoms are truncated
};

struct IdentityOptions {
    int bound = 10;
    std::size_t retries = 20;
    bool symbolic = true;            // exact generic-matrix test when applicable
    std::size_t symbolic_max_n = 2;
    int symbolic_max_degree = 6;
};

/// Per-size random-evaluation identity test with a fixed seed schedule:
/// trial t, attempt a at size n draws from seed_seq{seed, n, t, a}.
inline std::vector<SizeVerdict> identity_test(const MeroExpr& m, const std::vector<std::size_t>& sizes,
                                              std::size_t trials, std::uint64_t seed,
                                              const IdentityOptions& opt = {}) {
    if (trials < 1) throw PreconditionFailed("identity_test requires at least one trial");
    std::optional<std::size_t> trunc;
    for (const auto& a : m.atoms)
        if (a.order) trunc = trunc ? std::min(*trunc, *a.order) : *a.order;
    std::optional<NcPoly> expanded;
    if (opt.symbolic && !trunc) expanded = expand_polynomial(m);

    std::vector<SizeVerdict> out;
    for (std::size_t n : sizes) {
        if (n == 0) throw PreconditionFailed("matrix sizes must be positive");
        struct Sample {
            std::optional<MatTuple> x;
            std::optional<Mat> value;
            std::optional<Undefined> undefined;
        };
        std::vector<Sample> samples(trials);
        parallel_for(trials, [&](std::size_t t) {
            for (std::size_t a = 0; a <= opt.retries; ++a) {
                auto rng = seeded_rng(seed, {n, t, a});
                MatTuple x = random_tuple(rng, n, m.g, opt.bound);
                EvalOutcome r = evaluate_expr(m, x);
                if (auto* v = std::get_if<Mat>(&r)) {
                    samples[t] = {std::move(x), std::move(*v), std::nullopt};
                    return;
                }
                samples[t].undefined = std::get<Undefined>(r);
            }
        });
        SizeVerdict sv;
        sv.n = n;
        sv.truncation = trunc;
        for (const auto& smp : samples) {
            if (!smp.value) {
                ++sv.undefined;
                sv.last_undefined = smp.undefined;
                continue;
            }
            ++sv.defined;
            if (!smp.value->is_zero() && !sv.witness) {
                sv.witness = smp.x;
                sv.value = smp.value;
            }
        }
        if (sv.witness) {
            sv.verdict = Verdict::Nonzero;
            sv.probabilistic = false;
        } else if (sv.defined > 0) {
            sv.verdict = Verdict::Zero;
        }
        if (expanded && n <= opt.symbolic_max_n && expanded->degree() <= opt.symbolic_max_degree) {
            bool zero = generic_evaluate(*expanded, n).is_zero();
            sv.symbolic = true;
            sv.probabilistic = false;
            sv.verdict = zero ? Verdict::Zero : Verdict::Nonzero;
        }
        if (trunc) sv.probabilistic = true;
        out.push_back(std::move(sv));
    }
    return out;
}

/// Matrix over the free algebra.
struct PolyMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<NcPoly> entries; // row-major

    const NcPoly& operator()(std::size_t i, std::size_t j) const { return entries.at(i * cols + j); }
};

struct InnerRankResult {
    Scalar ratio;
    std::size_t n = 0;
    std::size_t rank = 0;
    std::optional<MatTuple> witness;
    bool full = false;
};

/// Block evaluation A(X) of size (d n) x (e n).
inline Mat evaluate(const PolyMatrix& a, const MatTuple& x) {
    const std::size_t n = x.size();
    Mat out(a.rows * n, a.cols * n);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out.set_block(i * n, j * n, evaluate(a(i, j), x));
    return out;
}

/// max rank(A(X))/n over n <= nmax and `trials` samples per size; sample
/// (n, t) draws from seed_seq{seed, n, t}. A lower bound for the inner rank.
inline InnerRankResult inner_rank_estimate(const PolyMatrix& a, std::size_t nmax, std::size_t trials,
                                           std::uint64_t seed, int bound = 10) {
    if (a.rows == 0 || a.cols == 0 || a.entries.size() != a.rows * a.cols)
        throw DimensionMismatch("matrix over the free algebra is malformed");
    const std::size_t g = a.entries.front().g();
    for (const auto& p : a.entries)
        if (p.g() != g) throw DimensionMismatch("entries have different letter counts");
    const std::size_t cap = std::min(a.rows, a.cols);
    InnerRankResult best;
    best.ratio = -1;
    for (std::size_t n = 1; n <= nmax; ++n) {
        std::vector<std::size_t> ranks(trials);
        std::vector<MatTuple> xs(trials);
        parallel_for(trials, [&](std::size_t t) {
            auto rng = seeded_rng(seed, {n, t});
            xs[t] = random_tuple(rng, n, g, bound);
            ranks[t] = rank(evaluate(a, xs[t]));
        });
        for (std::size_t t = 0; t < trials; ++t) {
            Scalar r(static_cast<long>(ranks[t]), static_cast<long>(n));
            r.canonicalize();
            if (r > best.ratio) {
                best.ratio = r;
                best.n = n;
                best.rank = ranks[t];
                best.witness = xs[t];
            }
        }
        if (best.ratio == static_cast<long>(cap)) break;
    }
    if (best.ratio < 0) best.ratio = 0;
    best.full = best.ratio == static_cast<long>(cap);
    return best;
}

} // namespace ncgerm

#endif // NCGERM_MERO_HPP
