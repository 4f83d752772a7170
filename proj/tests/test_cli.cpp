#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ncgerm/cli.hpp"
#include "ncgerm/io.hpp"

using namespace ncgerm;
using nlohmann::json;

namespace {

std::string data(const char* name) { return std::string(NCGERM_DATA_DIR) + "/" + name; }

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "ncgerm");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name, const std::string& content) {
    auto dir = std::filesystem::temp_directory_path() / "ncgerm_cli_test";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p) << content;
    return p;
}

} // namespace

TEST(Dispatch, TableCoversEverySubcommand) {
    const auto& table = cli::dispatch_table();
    std::set<std::string> ops, subs(cli::subcommands().begin(), cli::subcommands().end());
    std::map<std::string, int> defaults;
    for (const auto& e : table) {
        EXPECT_TRUE(ops.insert(e.op).second) << e.op;
        EXPECT_TRUE(subs.count(e.subcommand)) << e.subcommand;
        defaults[e.subcommand] += e.is_default ? 1 : 0;
    }
    EXPECT_EQ(defaults.size(), subs.size());
    for (const auto& [s, n] : defaults) EXPECT_EQ(n, 1) << s;
    EXPECT_EQ(table.size(), 33u);
}

TEST(Dispatch, EveryOperationReachesItsHandler) {
    for (const auto& e : cli::dispatch_table()) {
        Outcome r = run({e.subcommand, "--op", e.op});
        EXPECT_TRUE(r.code == 0 || r.code == 2) << e.op << ": " << r.err;
        if (r.code == 2) {
            EXPECT_NE(r.err.find("missing required option"), std::string::npos) << e.op << ": " << r.err;
        }
    }
    EXPECT_EQ(run({"jet", "--op", "no_such_op"}).code, 2);
}

TEST(Commands, MinDegreePrintsBareInteger) {
    Outcome r = run({"min-degree", "--problem", data("inverse_commutator_L1.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "4\n");
}

TEST(Commands, InterpolationSolvesTheProblem) {
    Outcome r = run({"interpolate", "--problem", data("inverse_commutator_L1.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    json res = json::parse(r.out);
    EXPECT_EQ(res.at("degree"), 4);
    NcPoly p = io::poly_from(res.at("poly"));
    InterpolationProblem prob = io::problem_from(io::read_json(data("inverse_commutator_L1.json")));
    Jet jt = jet_eval(p, prob.points[0], 1);
    EXPECT_EQ(jt.maps[0], prob.targets[0].maps[0]);
    EXPECT_EQ(jt.maps[1], prob.targets[0].maps[1]);
}

TEST(Commands, GrowthTableCsv) {
    Outcome r = run({"growth-table", "--alpha", "2", "--beta", "2", "--lmax", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "l,m,value");
    EXPECT_NE(r.out.find("2,0,64/1\n"), std::string::npos);
    Outcome j = run({"growth-table", "--alpha", "2", "--beta", "2", "--lmax", "2", "--format", "json"});
    ASSERT_EQ(j.code, 0);
    EXPECT_NO_THROW(json::parse(j.out));
}

TEST(Commands, JetAndLacRoundTrip) {
    Outcome r = run({"jet", "--poly", data("poly_cubic.json"), "--point", data("point_e12_e21.json"), "--order", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto path = scratch("jet.json", r.out);
    Jet jt = io::jet_from(json::parse(r.out));
    EXPECT_EQ(jt.order(), 2u);
    Outcome lac = run({"lac-check", "--jet", path.string()});
    ASSERT_EQ(lac.code, 0) << lac.err;
    EXPECT_TRUE(json::parse(lac.out).at("holds").get<bool>());
}

TEST(Commands, OutputFile) {
    auto target = std::filesystem::temp_directory_path() / "ncgerm_cli_test" / "semisimple.json";
    std::filesystem::create_directories(target.parent_path());
    std::filesystem::remove(target);
    Outcome r = run({"structure", "--op", "is_semisimple", "--point", data("point_e12_e21.json"), "-o", target.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(io::read_json(target.string()).at("semisimple").get<bool>());
}

TEST(Commands, IdentityTestIsDeterministic) {
    std::vector<std::string> args{"identity-test", "--expr", data("rational_identity.txt"), "--sizes", "1-3",
                                  "--trials", "5", "--seed", "11", "--no-symbolic"};
    Outcome a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    for (const auto& res : json::parse(a.out).at("results")) EXPECT_EQ(res.at("verdict"), "Zero");
    EXPECT_EQ(run({"identity-test", "--expr", data("rational_identity.txt")}).code, 2);
}

TEST(ExitCodes, ParseResourceAndUsage) {
    EXPECT_EQ(run({"structure", "--op", "rank", "--matrix", scratch("bad.json", "{").string()}).code, 3);
    EXPECT_EQ(run({"structure", "--op", "rank", "--matrix", "/nonexistent/m.json"}).code, 3);
    EXPECT_EQ(run({"identity-test", "--expr", scratch("bad.txt", "x1 + * x2").string(), "--seed", "1"}).code, 3);
    EXPECT_EQ(run({"min-degree", "--problem", scratch("dup.json", R"({"points": [[[["0"]]], [[["0"]]]],
        "target_expr": "x1", "L": 1})").string()}).code, 2);
    ::setenv("NCGERM_MEM_CAP", "10", 1);
    EXPECT_EQ(run({"jet", "--poly", data("poly_cubic.json"), "--point", data("point_e12_e21.json"), "--order", "3"}).code,
              4);
    ::unsetenv("NCGERM_MEM_CAP");
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"structure", "--bogus"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"structure", "--op", "matrix_inverse", "--matrix", scratch("sing.json", R"([["1","2"],["2","4"]])").string()}).code, 2);
}
