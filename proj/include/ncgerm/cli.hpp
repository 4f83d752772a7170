#ifndef NCGERM_CLI_HPP
#define NCGERM_CLI_HPP

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncgerm/error.hpp"
#include "ncgerm/generic.hpp"
#include "ncgerm/hermite.hpp"
#include "ncgerm/io.hpp"
#include "ncgerm/jet.hpp"
#include "ncgerm/lac.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/mero.hpp"
#include "ncgerm/parallel.hpp"
#include "ncgerm/propagate.hpp"
#include "ncgerm/structure.hpp"

namespace ncgerm::cli {

enum Exit : int { ok = 0, internal = 1, precondition = 2, parse_error = 3, resource = 4 };

struct OpEntry {
    std::string op;
    std::string subcommand;
    bool is_default;
};

/// Every library operation and the subcommand (plus --op value) that runs it.
inline const std::vector<OpEntry>& dispatch_table() {
    static const std::vector<OpEntry> table = {
        {"jet_eval", "jet", true},
        {"evaluate", "jet", false},
        {"jet_mul", "jet", false},
        {"jet_inverse", "jet", false},
        {"ampliate", "jet", false},
        {"is_jointly_nilpotent", "jet", false},
        {"mul", "jet", false},
        {"homogeneous_component", "jet", false},
        {"transduct", "jet", false},
        {"alternating_poly", "jet", false},
        {"check_lac_truncated", "lac-check", true},
        {"check_admissible", "lac-check", false},
        {"interpolate", "interpolate", true},
        {"vanishing_ideal_basis", "interpolate", false},
        {"min_degree", "min-degree", true},
        {"propagate_minimal", "propagate", true},
        {"separating_example", "propagate", false},
        {"embed_algebra", "embed", true},
        {"generated_algebra", "structure", true},
        {"centralizer", "structure", false},
        {"is_semisimple", "structure", false},
        {"is_irreducible", "structure", false},
        {"are_separated", "structure", false},
        {"bimodule_ops", "structure", false},
        {"rank", "structure", false},
        {"solve_linear", "structure", false},
        {"matrix_inverse", "structure", false},
        {"identity_test", "identity-test", true},
        {"parse", "identity-test", false},
        {"evaluate_expr", "identity-test", false},
        {"generic_evaluate", "identity-test", false},
        {"inner_rank_estimate", "inner-rank", true},
        {"growth_bound", "growth-table", true},
    };
    return table;
}

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = {"jet",       "lac-check", "interpolate",   "min-degree", "propagate",
                                                   "embed",     "structure", "identity-test", "inner-rank", "growth-table"};
    return names;
}

namespace detail {

struct Options {
    std::string op;
    std::string poly, poly2, expr, point, point2, points, jet, jet2, map, problem, matrix, rhs, elements;
    std::optional<std::size_t> order;
    std::size_t n = 2, degree = 0, letter = 1, s = 1;
    std::size_t nmax = 3, trials = 50, lmax = 6, retries = 20;
    std::optional<std::uint64_t> seed;
    std::string sizes = "1,2,3";
    int bound = 10;
    bool no_symbolic = false, chain_only = false;
    std::string alpha, beta;
    unsigned threads = 0;
    std::string format = "auto", output;
};

inline void need(const std::string& v, const char* flag) {
    if (v.empty()) throw PreconditionFailed(std::string("missing required option ") + flag);
}

inline std::size_t need_order(const Options& o) {
    if (!o.order) throw PreconditionFailed("missing required option --order");
    return *o.order;
}

inline std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto dash = item.find('-');
        try {
            if (dash != std::string::npos) {
                std::size_t a = std::stoul(item.substr(0, dash)), b = std::stoul(item.substr(dash + 1));
                for (std::size_t k = a; k <= b; ++k) out.push_back(k);
            } else {
                out.push_back(std::stoul(item));
            }
        } catch (const std::logic_error&) {
            throw PreconditionFailed("malformed --sizes list '" + text + "'");
        }
    }
    if (out.empty()) throw PreconditionFailed("--sizes is empty");
    return out;
}

inline MeroExpr read_expr(const std::string& path, std::size_t g = 0) { return parse(io::read_text(path), g); }

inline std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

inline std::string run_jet(const Options& o) {
    const std::string& op = o.op;
    if (op == "jet_eval") {
        need(o.point, "--point");
        MatTuple y = io::tuple_from(io::read_json(o.point));
        const std::size_t L = need_order(o);
        if (!o.expr.empty()) return dump(io::to_json(jet_of_expression(read_expr(o.expr, y.g()), y, L)));
        need(o.poly, "--poly or --expr");
        return dump(io::to_json(jet_eval(io::poly_from(io::read_json(o.poly)), y, L)));
    }
    if (op == "evaluate") {
        need(o.poly, "--poly");
        need(o.point, "--point");
        return dump(io::to_json(evaluate(io::poly_from(io::read_json(o.poly)), io::tuple_from(io::read_json(o.point)))));
    }
    if (op == "jet_mul") {
        need(o.jet, "--jet");
        need(o.jet2, "--jet2");
        return dump(io::to_json(jet_mul(io::jet_from(io::read_json(o.jet)), io::jet_from(io::read_json(o.jet2)))));
    }
    if (op == "jet_inverse") {
        need(o.jet, "--jet");
        return dump(io::to_json(jet_inverse(io::jet_from(io::read_json(o.jet)))));
    }
    if (op == "ampliate") {
        need(o.map, "--map");
        return dump(io::to_json(ampliate(io::multimap_from(io::read_json(o.map)), o.n)));
    }
    if (op == "is_jointly_nilpotent") {
        need(o.point, "--point");
        return dump({{"nilpotent", is_jointly_nilpotent(io::tuple_from(io::read_json(o.point)))}});
    }
    if (op == "mul") {
        need(o.poly, "--poly");
        need(o.poly2, "--poly2");
        io::PolyFile a = io::poly_file_from(io::read_json(o.poly)), b = io::poly_file_from(io::read_json(o.poly2));
        if (a.order || b.order) {
            std::size_t d = std::min(a.order.value_or(SIZE_MAX), b.order.value_or(SIZE_MAX));
            return dump(io::to_json(NcSeries(a.poly, d) * NcSeries(b.poly, d)));
        }
        return dump(io::to_json(a.poly * b.poly));
    }
    if (op == "homogeneous_component") {
        need(o.poly, "--poly");
        return dump(io::to_json(io::poly_from(io::read_json(o.poly)).homogeneous_component(o.degree)));
    }
    if (op == "transduct") {
        need(o.poly, "--poly");
        io::PolyFile f = io::poly_file_from(io::read_json(o.poly));
        if (o.letter < 1 || o.letter > f.poly.g()) throw PreconditionFailed("--letter out of range");
        const int j = static_cast<int>(o.letter - 1);
        if (f.order) return dump(io::to_json(f.series().transduct(j)));
        return dump(io::to_json(f.poly.transduct(j)));
    }
    // alternating_poly
    return dump(io::to_json(alternating_poly(o.s)));
}

inline std::string run_lac(const Options& o) {
    if (o.op == "check_admissible") {
        need(o.point, "--point");
        need(o.map, "--map");
        MatTuple y = io::tuple_from(io::read_json(o.point));
        return dump({{"admissible", check_admissible(y, io::multimap_from(io::read_json(o.map)))}});
    }
    need(o.jet, "--jet");
    Jet jt = io::jet_from(io::read_json(o.jet));
    MatTuple y = o.point.empty() ? jt.Y : io::tuple_from(io::read_json(o.point));
    if (o.chain_only) return dump(io::to_json(check_lac_chain(y, jt)));
    return dump(io::to_json(check_lac_truncated(y, jt, o.order.value_or(jt.order()))));
}

inline std::string run_interpolate(const Options& o) {
    if (o.op == "vanishing_ideal_basis") {
        need(o.point, "--point");
        MatTuple y = io::tuple_from(io::read_json(o.point));
        io::json basis = io::json::array();
        for (const auto& p : vanishing_ideal_basis(y, need_order(o), o.degree)) basis.push_back(io::to_json(p));
        return dump({{"dim", basis.size()}, {"basis", std::move(basis)}});
    }
    need(o.problem, "--problem");
    InterpolationResult r = solve_interpolation(io::problem_from(io::read_json(o.problem)));
    return dump({{"degree", r.degree}, {"expression", r.poly.str()}, {"poly", io::to_json(r.poly)}});
}

inline std::string run_min_degree(const Options& o) {
    need(o.problem, "--problem");
    return std::to_string(min_degree(io::problem_from(io::read_json(o.problem)))) + "\n";
}

inline std::string run_propagate(const Options& o) {
    const std::size_t M = need_order(o);
    if (o.op == "separating_example") {
        need(o.point, "--point");
        need(o.point2, "--point2");
        SeparatingExample ex =
            separating_example(io::tuple_from(io::read_json(o.point)), io::tuple_from(io::read_json(o.point2)), M);
        io::json vanish = io::json::array();
        for (const auto& f : ex.jet.maps)
            if (f.arity() > 0) vanish.push_back(vanishes_on(f, ex.block_diagonal));
        return dump({{"jet", io::to_json(ex.jet)},
                     {"block_diagonal_dim", ex.block_diagonal.size()},
                     {"vanishes_on_block_diagonal", std::move(vanish)}});
    }
    need(o.jet, "--jet");
    Jet seed = io::jet_from(io::read_json(o.jet));
    MatTuple y = o.point.empty() ? seed.Y : io::tuple_from(io::read_json(o.point));
    return dump(io::to_json(propagate_minimal(make_config(y, seed, M))));
}

inline std::string run_embed(const Options& o) {
    need(o.point, "--point");
    need(o.elements, "--elements");
    auto jets = embed_algebra(io::tuple_from(io::read_json(o.point)), io::mats_from(io::read_json(o.elements)), need_order(o));
    io::json arr = io::json::array();
    for (const auto& j : jets) arr.push_back(io::to_json(j));
    return dump({{"jets", std::move(arr)}});
}

inline std::string run_structure(const Options& o) {
    const std::string& op = o.op;
    if (op == "rank" || op == "solve_linear" || op == "matrix_inverse") {
        need(o.matrix, "--matrix");
        Mat a = io::mat_from(io::read_json(o.matrix));
        if (op == "rank") return dump({{"rank", rank(a)}});
        if (op == "matrix_inverse") return dump(io::to_json(matrix_inverse(a)));
        need(o.rhs, "--rhs");
        LinearSolution sol = solve_linear(a, io::mat_from(io::read_json(o.rhs)));
        io::json ker = io::json::array();
        for (const auto& k : sol.kernel) ker.push_back(io::to_json(k));
        return dump({{"consistent", sol.x.has_value()},
                     {"solution", sol.x ? io::to_json(*sol.x) : io::json(nullptr)},
                     {"kernel", std::move(ker)}});
    }
    if (op == "are_separated") {
        need(o.points, "--points");
        return dump({{"separated", are_separated(io::tuples_from(io::read_json(o.points)))}});
    }
    need(o.point, "--point");
    MatTuple y = io::tuple_from(io::read_json(o.point));
    if (op == "centralizer") return dump(io::to_json(centralizer(y)));
    if (op == "is_semisimple") return dump({{"semisimple", is_semisimple(y)}});
    if (op == "is_irreducible") return dump(io::to_json(irreducibility(y)));
    if (op == "bimodule_ops") return dump(io::to_json(bimodule_ops(y)));
    return dump(io::to_json(generated_algebra(y)));
}

inline std::string run_identity(const Options& o, const std::string& format) {
    if (o.op == "generic_evaluate") {
        NcPoly p;
        if (!o.poly.empty()) {
            p = io::poly_from(io::read_json(o.poly));
        } else {
            need(o.expr, "--poly or --expr");
            auto e = expand_polynomial(read_expr(o.expr));
            if (!e) throw PreconditionFailed("generic evaluation needs an inversion-free expression");
            p = *e;
        }
        return dump(io::to_json(generic_evaluate(p, o.n)));
    }
    need(o.expr, "--expr");
    if (o.op == "parse") {
        MeroExpr m = read_expr(o.expr);
        io::json atoms = io::json::array();
        for (const auto& a : m.atoms) atoms.push_back(a.name);
        return dump({{"expression", to_string(m)},
                     {"g", m.g},
                     {"nodes", node_count(*m.root)},
                     {"atoms", std::move(atoms)},
                     {"inversion_free", inversion_free(*m.root)}});
    }
    if (o.op == "evaluate_expr") {
        need(o.point, "--point");
        MatTuple x = io::tuple_from(io::read_json(o.point));
        EvalOutcome r = evaluate_expr(read_expr(o.expr, x.g()), x);
        if (auto* m = std::get_if<Mat>(&r)) return dump({{"undefined", false}, {"value", io::to_json(*m)}});
        return dump(io::to_json(std::get<Undefined>(r)));
    }
    if (!o.seed) throw PreconditionFailed("identity-test requires --seed");
    MeroExpr m = read_expr(o.expr);
    IdentityOptions opt;
    opt.bound = o.bound;
    opt.retries = o.retries;
    opt.symbolic = !o.no_symbolic;
    auto res = identity_test(m, parse_sizes(o.sizes), o.trials, *o.seed, opt);
    if (format == "csv") {
        std::ostringstream os;
        os << "n,verdict,defined,undefined,probabilistic,symbolic\n";
        for (const auto& v : res)
            os << v.n << ',' << verdict_name(v.verdict) << ',' << v.defined << ',' << v.undefined << ','
               << (v.probabilistic ? "true" : "false") << ',' << (v.symbolic ? "true" : "false") << '\n';
        return os.str();
    }
    io::json arr = io::json::array();
    for (const auto& v : res) arr.push_back(io::to_json(v));
    return dump({{"expression", to_string(m)}, {"g", m.g}, {"seed", *o.seed}, {"results", std::move(arr)}});
}

inline std::string run_inner_rank(const Options& o) {
    need(o.matrix, "--matrix");
    if (!o.seed) throw PreconditionFailed("inner-rank requires --seed");
    PolyMatrix a = io::poly_matrix_from(io::read_json(o.matrix));
    io::json j = io::to_json(inner_rank_estimate(a, o.nmax, o.trials, *o.seed, o.bound));
    j["rows"] = a.rows;
    j["cols"] = a.cols;
    return dump(j);
}

inline std::string run_growth(const Options& o, const std::string& format) {
    need(o.alpha, "--alpha");
    need(o.beta, "--beta");
    GrowthSeq gs = growth_bound(parse_scalar(o.alpha), parse_scalar(o.beta), o.lmax);
    if (format == "json") return dump(io::growth_json(gs));
    return io::growth_csv(gs);
}

} // namespace detail

/// Parses argv, runs one subcommand and returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    detail::Options o;
    CLI::App app{"Exact local computations for free noncommutative functions", "ncgerm"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
    app.add_option("--format", o.format, "json or csv for tabular outputs")
        ->check(CLI::IsMember({"auto", "json", "csv"}));
    app.add_option("--output,-o", o.output, "write the result to this file instead of stdout");

    std::map<std::string, CLI::App*> subs;
    auto sub = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app.add_subcommand(name, help);
        std::vector<std::string> ops;
        std::string def;
        for (const auto& e : dispatch_table())
            if (e.subcommand == name) {
                ops.push_back(e.op);
                if (e.is_default) def = e.op;
            }
        s->add_option("--op", o.op, "operation")->check(CLI::IsMember(ops))->default_str(def);
        subs[name] = s;
        return s;
    };

    CLI::App* jet = sub("jet", "jets, evaluation and free-algebra arithmetic");
    jet->add_option("--poly", o.poly, "polynomial or series JSON");
    jet->add_option("--poly2", o.poly2, "second polynomial JSON");
    jet->add_option("--expr", o.expr, "expression file (jet of a rational expression)");
    jet->add_option("--point", o.point, "matrix tuple JSON");
    jet->add_option("--order", o.order, "jet order L");
    jet->add_option("--jet", o.jet, "jet JSON");
    jet->add_option("--jet2", o.jet2, "second jet JSON");
    jet->add_option("--map", o.map, "multilinear map JSON");
    jet->add_option("--n", o.n, "ampliation size");
    jet->add_option("--degree", o.degree, "homogeneous degree");
    jet->add_option("--letter", o.letter, "transduction letter (1-based)");
    jet->add_option("--s", o.s, "size parameter of the alternating polynomial");

    CLI::App* lac = sub("lac-check", "lost-abbey conditions");
    lac->add_option("--jet", o.jet, "jet JSON");
    lac->add_option("--point", o.point, "basepoint JSON (defaults to the jet's)");
    lac->add_option("--order", o.order, "truncation order (defaults to the jet order)");
    lac->add_option("--map", o.map, "multilinear map JSON for admissibility");
    lac->add_flag("--chain-only", o.chain_only, "check only the chain rules");

    CLI::App* interp = sub("interpolate", "Hermite interpolation by polynomials");
    interp->add_option("--problem", o.problem, "problem JSON");
    interp->add_option("--point", o.point, "matrix tuple JSON");
    interp->add_option("--order", o.order, "bidiagonal order l");
    interp->add_option("--degree", o.degree, "degree bound");

    CLI::App* mindeg = sub("min-degree", "least interpolating degree");
    mindeg->add_option("--problem", o.problem, "problem JSON");

    CLI::App* prop = sub("propagate", "minimal propagation");
    prop->add_option("--jet", o.jet, "seed jet JSON");
    prop->add_option("--point", o.point, "basepoint JSON");
    prop->add_option("--point2", o.point2, "second summand for the separating example");
    prop->add_option("--order", o.order, "target order M");

    CLI::App* embed = sub("embed", "embedding of S(Y) into germs");
    embed->add_option("--point", o.point, "matrix tuple JSON");
    embed->add_option("--elements", o.elements, "list of matrices in S(Y)");
    embed->add_option("--order", o.order, "target order M");

    CLI::App* st = sub("structure", "algebra structure and exact linear algebra");
    st->add_option("--point", o.point, "matrix tuple JSON");
    st->add_option("--points", o.points, "list of matrix tuples JSON");
    st->add_option("--matrix", o.matrix, "matrix JSON");
    st->add_option("--rhs", o.rhs, "right-hand side JSON");

    CLI::App* idt = sub("identity-test", "rational identity testing");
    idt->add_option("--expr", o.expr, "expression file");
    idt->add_option("--poly", o.poly, "polynomial JSON for generic evaluation");
    idt->add_option("--point", o.point, "matrix tuple JSON for evaluation");
    idt->add_option("--sizes", o.sizes, "comma-separated sizes or ranges");
    idt->add_option("--trials", o.trials, "samples per size");
    idt->add_option("--seed", o.seed, "random seed");
    idt->add_option("--bound", o.bound, "entries drawn from [-bound, bound]");
    idt->add_option("--retries", o.retries, "resamples of an undefined trial");
    idt->add_option("--n", o.n, "size of the generic matrices");
    idt->add_flag("--no-symbolic", o.no_symbolic, "disable the generic-matrix test");

    CLI::App* ir = sub("inner-rank", "inner rank estimate");
    ir->add_option("--matrix", o.matrix, "matrix of polynomials JSON");
    ir->add_option("--nmax", o.nmax, "largest sample size");
    ir->add_option("--trials", o.trials, "samples per size");
    ir->add_option("--seed", o.seed, "random seed");
    ir->add_option("--bound", o.bound, "entries drawn from [-bound, bound]");

    CLI::App* gt = sub("growth-table", "growth recurrence table");
    gt->add_option("--alpha", o.alpha, "alpha > 0");
    gt->add_option("--beta", o.beta, "beta > 0");
    gt->add_option("--lmax", o.lmax, "largest l");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : precondition;
    }

    std::string name;
    for (const auto& [n, s] : subs)
        if (s->parsed()) name = n;
    if (o.op.empty())
        for (const auto& e : dispatch_table())
            if (e.subcommand == name && e.is_default) o.op = e.op;

    try {
        set_threads(o.threads);
        std::string format = o.format;
        if (format == "auto") format = name == "growth-table" ? "csv" : "json";
        if (format == "csv" && name != "growth-table" && !(name == "identity-test" && o.op == "identity_test"))
            throw PreconditionFailed("csv output is only available for tabular results");
        std::string result;
        if (name == "jet") result = detail::run_jet(o);
        else if (name == "lac-check") result = detail::run_lac(o);
        else if (name == "interpolate") result = detail::run_interpolate(o);
        else if (name == "min-degree") result = detail::run_min_degree(o);
        else if (name == "propagate") result = detail::run_propagate(o);
        else if (name == "embed") result = detail::run_embed(o);
        else if (name == "structure") result = detail::run_structure(o);
        else if (name == "identity-test") result = detail::run_identity(o, format);
        else if (name == "inner-rank") result = detail::run_inner_rank(o);
        else result = detail::run_growth(o, format);
        if (o.output.empty()) {
            out << result;
        } else {
            std::ofstream f(o.output, std::ios::binary);
            if (!f) throw PreconditionFailed("cannot write '" + o.output + "'");
            f << result;
        }
        return ok;
    } catch (const ParseError& e) {
        err << "ncgerm: parse error";
        if (e.position() != ParseError::npos) err << " at position " << e.position();
        err << ": " << e.what() << "\n";
        return parse_error;
    } catch (const io::json::exception& e) {
        err << "ncgerm: parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const ResourceLimit& e) {
        err << "ncgerm: resource limit: " << e.what() << "\n";
        return resource;
    } catch (const InternalCheckFailure& e) {
        err << "ncgerm: internal check failed: " << e.what() << "\n";
        return internal;
    } catch (const Error& e) {
        err << "ncgerm: precondition failed: " << e.what() << "\n";
        return precondition;
    } catch (const std::exception& e) {
        err << "ncgerm: error: " << e.what() << "\n";
        return internal;
    }
}

} // namespace ncgerm::cli

#endif // NCGERM_CLI_HPP
