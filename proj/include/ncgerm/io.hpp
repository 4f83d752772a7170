#ifndef NCGERM_IO_HPP
#define NCGERM_IO_HPP

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncgerm/error.hpp"
#include "ncgerm/freealg.hpp"
#include "ncgerm/hermite.hpp"
#include "ncgerm/jet.hpp"
#include "ncgerm/lac.hpp"
#include "ncgerm/matrix.hpp"
#include "ncgerm/mero.hpp"
#include "ncgerm/multimap.hpp"
#include "ncgerm/propagate.hpp"
#include "ncgerm/scalar.hpp"
#include "ncgerm/structure.hpp"

// JSON indices (letters, matrix positions, tensor slots) are 1-based.
namespace ncgerm::io {

using json = nlohmann::json;

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline json read_json(const std::string& path) {
    std::string text = read_text(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ParseError(what);
}

inline const json& field(const json& j, const char* key) {
    require(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::size_t to_size(const json& j, const char* what) {
    require(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0),
            std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

/// 1-based index in [1, bound], returned 0-based.
inline std::size_t to_index(const json& j, std::size_t bound, const char* what) {
    require(j.is_number_integer(), std::string(what) + " must be an integer");
    long long v = j.get<long long>();
    require(v >= 1 && static_cast<std::size_t>(v) <= bound, std::string(what) + " out of range");
    return static_cast<std::size_t>(v - 1);
}

// --- scalars and matrices -------------------------------------------------

inline json to_json(const Scalar& x) { return format_scalar(x); }

inline Scalar scalar_from(const json& j) {
    if (j.is_number_integer()) return Scalar(std::to_string(j.get<long long>()));
    require(j.is_string(), "scalar must be a fraction string or an integer");
    return parse_scalar(j.get<std::string>());
}

inline json to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(format_scalar(m(i, k)));
        rows.push_back(std::move(r));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

/// {"rows","cols","entries"} or a bare array of rows.
inline Mat mat_from(const json& j) {
    const json& e = j.is_array() ? j : field(j, "entries");
    require(e.is_array(), "matrix entries must be an array of rows");
    const std::size_t r = e.size();
    std::size_t c = r ? e.front().size() : 0;
    if (j.is_object()) {
        require(to_size(field(j, "rows"), "rows") == r, "row count does not match entries");
        c = to_size(field(j, "cols"), "cols");
    }
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        require(e[i].is_array() && e[i].size() == c, "ragged matrix rows");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = scalar_from(e[i][k]);
    }
    return m;
}

inline json to_json(const MatTuple& t) {
    json comps = json::array();
    for (std::size_t j = 0; j < t.g(); ++j) comps.push_back(to_json(t[j]));
    return {{"s", t.size()}, {"components", std::move(comps)}};
}

/// {"s","components"} or a bare array of matrices.
inline MatTuple tuple_from(const json& j) {
    const json& c = j.is_array() ? j : field(j, "components");
    require(c.is_array() && !c.empty(), "a tuple needs at least one component");
    std::vector<Mat> comps;
    for (const auto& m : c) comps.push_back(mat_from(m));
    const std::size_t s = comps.front().rows();
    for (const auto& m : comps) require(m.rows() == s && m.cols() == s, "tuple components must be square of equal size");
    if (j.is_object() && j.contains("s")) require(to_size(j.at("s"), "s") == s, "declared size does not match");
    return MatTuple(s, std::move(comps));
}

inline std::vector<MatTuple> tuples_from(const json& j) {
    const json& arr = j.is_object() ? field(j, "points") : j;
    require(arr.is_array(), "expected a list of tuples");
    std::vector<MatTuple> out;
    for (const auto& t : arr) out.push_back(tuple_from(t));
    return out;
}

inline std::vector<Mat> mats_from(const json& j) {
    const json& arr = j.is_object() ? field(j, "elements") : j;
    require(arr.is_array(), "expected a list of matrices");
    std::vector<Mat> out;
    for (const auto& m : arr) out.push_back(mat_from(m));
    return out;
}

// --- polynomials and series ------------------------------------------------

inline json to_json(const NcPoly& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms()) {
        json word = json::array();
        for (int x : w) word.push_back(x + 1);
        terms.push_back({{"word", std::move(word)}, {"coeff", format_scalar(c)}});
    }
    return {{"g", p.g()}, {"terms", std::move(terms)}};
}

inline json to_json(const NcSeries& p) {
    json j = to_json(p.poly());
    j["order"] = p.order();
    return j;
}

/// A polynomial file; "order" marks a truncated series, "expr" is an
/// inversion-free expression accepted in place of "terms".
struct PolyFile {
    NcPoly poly;
    std::optional<std::size_t> order;

    NcSeries series() const { return NcSeries(poly, *order); }
};

inline PolyFile poly_file_from(const json& j) {
    PolyFile f;
    if (j.is_string()) {
        auto p = expand_polynomial(parse(j.get<std::string>()));
        if (!p) throw ParseError("polynomial expression contains an inverse");
        f.poly = *p;
        return f;
    }
    const std::size_t g = to_size(field(j, "g"), "g");
    if (j.contains("order")) f.order = to_size(j.at("order"), "order");
    if (j.contains("expr")) {
        MeroExpr m = parse(field(j, "expr").get<std::string>(), g);
        if (m.g != g) throw ParseError("expression uses more letters than g");
        auto p = expand_polynomial(m);
        if (!p) throw ParseError("polynomial expression contains an inverse");
        f.poly = *p;
    } else {
        f.poly = NcPoly(g);
        const json& terms = field(j, "terms");
        require(terms.is_array(), "terms must be an array");
        for (const auto& t : terms) {
            Word w;
            for (const auto& x : field(t, "word")) w.push_back(static_cast<int>(to_index(x, g, "letter")));
            f.poly.add_term(w, scalar_from(field(t, "coeff")));
        }
    }
    if (f.order) f.poly = f.poly.truncated(*f.order);
    return f;
}

inline NcPoly poly_from(const json& j) { return poly_file_from(j).poly; }

// --- multilinear maps and jets ----------------------------------------------

inline json to_json(const MultiMap& f) {
    json entries = json::array();
    const std::size_t s = f.s(), ss = s * s;
    for (std::size_t in = 0; in < f.inputs(); ++in)
        for (std::size_t o = 0; o < ss; ++o) {
            const Scalar& v = f.data()[in * ss + o];
            if (v == 0) continue;
            json ins = json::array();
            for (std::size_t b : f.split_input(in)) ins.push_back({b / ss + 1, (b % ss) / s + 1, b % s + 1});
            entries.push_back({{"in", std::move(ins)}, {"out", {o / s + 1, o % s + 1}}, {"coeff", format_scalar(v)}});
        }
    return {{"s", s}, {"g", f.g()}, {"arity", f.arity()}, {"entries", std::move(entries)}};
}

inline MultiMap multimap_from(const json& j) {
    const std::size_t s = to_size(field(j, "s"), "s"), g = to_size(field(j, "g"), "g");
    const std::size_t l = to_size(field(j, "arity"), "arity");
    check_tensor_size(s, g, l);
    MultiMap f(s, g, l);
    for (const auto& e : field(j, "entries")) {
        const json& ins = field(e, "in");
        require(ins.is_array() && ins.size() == l, "entry input count does not match the arity");
        std::vector<std::size_t> b;
        for (const auto& t : ins) {
            require(t.is_array() && t.size() == 3, "inputs are [j,p,q] triples");
            b.push_back(to_index(t[0], g, "letter") * s * s + to_index(t[1], s, "row") * s + to_index(t[2], s, "column"));
        }
        const json& out = field(e, "out");
        require(out.is_array() && out.size() == 2, "out is a [p,q] pair");
        f.at(f.join_input(b), to_index(out[0], s, "row"), to_index(out[1], s, "column")) += scalar_from(field(e, "coeff"));
    }
    return f;
}

inline json to_json(const Jet& jt) {
    json maps = json::array();
    for (const auto& m : jt.maps) maps.push_back(to_json(m));
    return {{"Y", to_json(jt.Y)}, {"order", jt.order()}, {"maps", std::move(maps)}};
}

inline Jet jet_from(const json& j) {
    Jet jt{tuple_from(field(j, "Y")), {}};
    const json& maps = field(j, "maps");
    require(maps.is_array() && !maps.empty(), "a jet needs at least f_0");
    for (std::size_t l = 0; l < maps.size(); ++l) {
        MultiMap f = multimap_from(maps[l]);
        require(f.arity() == l, "maps[" + std::to_string(l) + "] must have arity " + std::to_string(l));
        require(f.s() == jt.Y.size() && f.g() == jt.Y.g(), "map shape does not match Y");
        jt.maps.push_back(std::move(f));
    }
    return jt;
}

// --- problems and structures -------------------------------------------------

/// {"points","targets","L","Dmax"}; "target_expr" may replace "targets",
/// in which case the targets are the jets of that expression.
inline InterpolationProblem problem_from(const json& j) {
    InterpolationProblem prob;
    prob.points = tuples_from(field(j, "points"));
    prob.L = to_size(field(j, "L"), "L");
    if (j.contains("Dmax")) prob.Dmax = to_size(j.at("Dmax"), "Dmax");
    if (j.contains("targets")) {
        for (const auto& t : j.at("targets")) prob.targets.push_back(jet_from(t));
    } else {
        MeroExpr m = parse(field(j, "target_expr").get<std::string>(), prob.points.front().g());
        for (const auto& y : prob.points) prob.targets.push_back(jet_of_expression(m, y, prob.L));
    }
    return prob;
}

inline json to_json(const AlgebraBasis& a) {
    json basis = json::array(), table = json::array();
    for (const auto& b : a.basis) basis.push_back(to_json(b));
    for (const auto& row : a.structure) {
        json r = json::array();
        for (const auto& v : row) {
            json c = json::array();
            for (const auto& x : v) c.push_back(format_scalar(x));
            r.push_back(std::move(c));
        }
        table.push_back(std::move(r));
    }
    return {{"s", a.s}, {"dim", a.dim()}, {"basis", std::move(basis)}, {"structure", std::move(table)}};
}

inline json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(format_scalar(x));
    return a;
}

inline json to_json(const BimoduleOps& ops) {
    json w = json::array();
    for (const auto& v : ops.W) w.push_back(vec_json(v));
    return {{"Y", to_json(ops.Y)},       {"centralizer", to_json(ops.C)}, {"W", std::move(w)},
            {"pi", to_json(ops.pi)},     {"sigma", to_json(ops.sigma)},   {"phi", to_json(ops.phi)},
            {"preserves_subspace", ops.preserved.has_value()}};
}

inline json to_json(const LacReport& rep) {
    json v = json::array();
    for (const auto& x : rep.violations)
        v.push_back({{"tag", x.tag},
                     {"order", x.order},
                     {"slot", x.slot + 1},
                     {"witness", to_json(x.witness)},
                     {"entry", x.index},
                     {"deviation", format_scalar(x.deviation)}});
    return {{"holds", rep.holds}, {"violations", std::move(v)}};
}

inline json to_json(const IrreducibilityReport& r) {
    return {{"irreducible", r.irreducible},
            {"split_caveat", r.split_caveat},
            {"dim_generated", r.dim_generated},
            {"dim_centralizer", r.dim_centralizer}};
}

inline json to_json(const Undefined& u) {
    json path = json::array();
    for (auto p : u.path) path.push_back(p);
    return {{"undefined", true}, {"path", std::move(path)}, {"position", u.position}, {"subexpression", u.subexpression}};
}

inline json to_json(const SizeVerdict& v) {
    json j = {{"n", v.n},
              {"verdict", verdict_name(v.verdict)},
              {"defined", v.defined},
              {"undefined", v.undefined},
              {"probabilistic", v.probabilistic},
              {"symbolic", v.symbolic},
              {"truncated", v.truncation.has_value()}};
    if (v.truncation) j["modulo_degree_above"] = *v.truncation;
    if (v.witness) j["witness"] = to_json(*v.witness);
    if (v.value) j["value"] = to_json(*v.value);
    if (v.verdict == Verdict::AllUndefined && v.last_undefined) j["last_singular"] = to_json(*v.last_undefined);
    return j;
}

inline json to_json(const InnerRankResult& r) {
    json j = {{"ratio", format_scalar(r.ratio)}, {"n", r.n}, {"rank", r.rank}, {"full", r.full}};
    if (r.witness) j["witness"] = to_json(*r.witness);
    return j;
}

/// {"rows","cols","entries":[[poly,...],...]} with polynomial objects or
/// inversion-free expression strings; "g" fixes the letter count of strings.
inline PolyMatrix poly_matrix_from(const json& j) {
    const json& e = field(j, "entries");
    require(e.is_array() && !e.empty(), "matrix entries must be a nonempty array of rows");
    PolyMatrix a;
    a.rows = e.size();
    a.cols = e.front().size();
    std::size_t g = j.contains("g") ? to_size(j.at("g"), "g") : 0;
    if (g == 0)
        for (const auto& row : e)
            for (const auto& x : row) {
                if (x.is_string()) g = std::max(g, parse(x.get<std::string>()).g);
                else if (x.is_object()) g = std::max(g, to_size(field(x, "g"), "g"));
            }
    for (const auto& row : e) {
        require(row.is_array() && row.size() == a.cols, "ragged matrix rows");
        for (const auto& x : row) {
            if (x.is_string()) {
                auto p = expand_polynomial(parse(x.get<std::string>(), g));
                if (!p) throw ParseError("matrix entry contains an inverse");
                a.entries.push_back(*p);
            } else {
                a.entries.push_back(poly_from(x));
            }
        }
    }
    if (j.contains("rows")) require(to_size(j.at("rows"), "rows") == a.rows, "row count does not match entries");
    if (j.contains("cols")) require(to_size(j.at("cols"), "cols") == a.cols, "column count does not match entries");
    return a;
}

inline json growth_json(const GrowthSeq& gs) {
    json rows = json::array();
    for (std::size_t l = 0; l <= gs.lmax; ++l)
        for (long m = -1; m <= static_cast<long>(l); ++m)
            rows.push_back({{"l", l}, {"m", m}, {"value", format_scalar(gs.at(l, m))}});
    return {{"alpha", format_scalar(gs.alpha)}, {"beta", format_scalar(gs.beta)}, {"lmax", gs.lmax}, {"table", rows}};
}

inline std::string growth_csv(const GrowthSeq& gs) {
    std::ostringstream os;
    os << "l,m,value\n";
    for (std::size_t l = 0; l <= gs.lmax; ++l)
        for (long m = -1; m <= static_cast<long>(l); ++m) os << l << ',' << m << ',' << format_scalar(gs.at(l, m)) << '\n';
    return os.str();
}

inline json to_json(const GenericMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.n; ++k) r.push_back(m(i, k).str(m.n));
        rows.push_back(std::move(r));
    }
    return {{"n", m.n}, {"zero", m.is_zero()}, {"monomials", m.monomials()}, {"entries", std::move(rows)}};
}

} // namespace ncgerm::io

#endif // NCGERM_IO_HPP
