#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mantel/experiments.hpp"
#include "mantel/hypergraph_io.hpp"

using namespace mantel;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mantel_test_experiments";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MANTEL_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, Rejections) {
    EXPECT_THROW(parse_config(json::array()), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "nope"}}), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "phase-sweep"}, {"n", json::array()}, {"p", {0.5}}}), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "phase-sweep"}, {"n", {8}}, {"p", json::array()}}), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "phase-sweep"}, {"n", {8}}, {"p", {0.5}}, {"trials", 0}}), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "phase-sweep"}, {"n", {8}}, {"p", {0.5}}, {"bogus", 1}}), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "concentration"}, {"n", {8}}, {"p", {0.5}}, {"k", 3}}), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "audit"}, {"n", {8}}, {"p", {0.5}}}), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "audit"}, {"n", {8}}, {"p", {0.5}}, {"gamma", "formula"},
                               {"constants", {{"beta", 1}}}}),
                 ConfigError);
    EXPECT_THROW(parse_config({{"kind", "phase-sweep"}, {"n", {8}}, {"p", {0.5}}, {"tier", "fast"}}), ConfigError);
    EXPECT_THROW(parse_config({{"kind", "solve"}}), ConfigError);
}

TEST(Config, ParsesGridAndConstants) {
    const auto cfg = parse_config({{"kind", "audit"},
                                   {"n", {8, 10}},
                                   {"p", {0.5, {{"c", 2.0}}}},
                                   {"trials", 3},
                                   {"seed", 11},
                                   {"gamma", "decimal"},
                                   {"constants", {{"eps1", "1/100"}, {"alpha", 0.5}}}});
    EXPECT_EQ(cfg.n, (std::vector<std::size_t>{8, 10}));
    ASSERT_EQ(cfg.p.size(), 2u);
    EXPECT_FALSE(cfg.p[0].scaled);
    EXPECT_TRUE(cfg.p[1].scaled);
    EXPECT_NEAR(cfg.p[1].resolve(10), 2.0 * std::log(10.0) / 10.0, 1e-15);
    EXPECT_EQ(cfg.p[1].label(), "c=2");
    EXPECT_EQ(cfg.constants.eps1, Rational(1, 100));
    EXPECT_EQ(cfg.constants.alpha, Rational(1, 2));
    EXPECT_EQ(cfg.gamma, GammaChoice::Decimal);
    EXPECT_EQ(cfg.master_seed, 11u);
}

TEST(Partition, RandomEqualIsEqualAndSeeded) {
    const auto a = random_equal_partition(18, 4, derive_seed(1, 2));
    EXPECT_EQ(a.class_sizes(), (std::vector<std::size_t>{5, 5, 4, 4}));
    EXPECT_EQ(a, random_equal_partition(18, 4, derive_seed(1, 2)));
    EXPECT_NE(a, random_equal_partition(18, 4, derive_seed(1, 3)));
}

TEST(Phase, CompleteAndEmptyHosts) {
    const auto cfg = parse_config({{"kind", "phase-sweep"}, {"n", {8}}, {"p", {0.0, 1.0}}, {"trials", 2}});
    RunOptions opt;
    opt.output_override = scratch("phase_trivial.csv").string();
    const auto s = run_experiment(cfg, opt);
    EXPECT_EQ(s.exit_code(), 0);
    const auto lines = data_lines(slurp(s.csv));
    ASSERT_EQ(lines.size(), 1u + 3u + 3u);
    // p = 0: empty host
    EXPECT_EQ(lines[1].substr(0, 30).find("trial,8,4,0,0,0"), 0u);
    EXPECT_NE(lines[1].find(",0,0,1,0,1,true,0,1,ok,"), std::string::npos) << lines[1];
    // p = 1: K^4_8, q = 16 on both trials
    EXPECT_NE(lines[4].find(",70,16,1,"), std::string::npos) << lines[4];
    EXPECT_NE(lines[5].find(",70,16,1,"), std::string::npos) << lines[5];
}

TEST(Phase, DeterministicAcrossThreads) {
    const auto cfg =
        parse_config({{"kind", "phase-sweep"}, {"n", {8, 9}}, {"p", {0.3, 0.6}}, {"trials", 3}, {"seed", 5}});
    RunOptions one, four;
    one.threads = 1;
    four.threads = 4;
    one.output_override = scratch("phase_1.csv").string();
    four.output_override = scratch("phase_4.csv").string();
    const auto a = run_experiment(cfg, one);
    const auto b = run_experiment(cfg, four);
    EXPECT_EQ(slurp(a.csv), slurp(b.csv));
    EXPECT_EQ(a.rows, 4u * 3u + 4u);
    const std::string text = slurp(a.csv);
    EXPECT_EQ(text.rfind("# schema: mantel-trials/1\n", 0), 0u);
    EXPECT_NE(text.find("# config: "), std::string::npos);
    EXPECT_NE(text.find("# build: "), std::string::npos);
    RunOptions other = one;
    other.seed_override = 6;
    other.output_override = scratch("phase_other.csv").string();
    EXPECT_NE(slurp(run_experiment(cfg, other).csv), slurp(a.csv));
}

TEST(Phase, OversizeCellIsSkippedNotFatal) {
    const auto cfg = parse_config({{"kind", "phase-sweep"}, {"n", {8, 13}}, {"p", {0.2}}, {"trials", 1}});
    RunOptions opt;
    opt.output_override = scratch("phase_skip.csv").string();
    const auto s = run_experiment(cfg, opt);
    EXPECT_EQ(s.exit_code(), 2);
    EXPECT_EQ(s.skipped, 1u);
    EXPECT_NE(slurp(s.csv).find("skipped"), std::string::npos);
}

TEST(Concentration, CompleteHostPassesTripleRow) {
    const auto cfg = parse_config({{"kind", "concentration"}, {"n", {16}}, {"p", {1.0}}, {"trials", 2}, {"eps", 0.25}});
    RunOptions opt;
    opt.output_override = scratch("conc.csv").string();
    const auto s = run_experiment(cfg, opt);
    const auto lines = data_lines(slurp(s.csv));
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_NE(lines[1].find(",13,13,"), std::string::npos) << lines[1];
    EXPECT_NE(lines[1].find(",pass,"), std::string::npos);
}

TEST(Audit, WritesJsonAndIsDeterministic) {
    const auto cfg = parse_config({{"kind", "audit"},
                                   {"n", {10}},
                                   {"p", {0.5}},
                                   {"trials", 2},
                                   {"seed", 3},
                                   {"gamma", "formula"},
                                   {"tier", "exact"},
                                   {"tfree_tier", "heuristic"}});
    RunOptions a, b;
    a.output_override = scratch("audit_a.csv").string();
    b.output_override = scratch("audit_b.csv").string();
    b.threads = 3;
    const auto ra = run_experiment(cfg, a), rb = run_experiment(cfg, b);
    ASSERT_TRUE(ra.json && rb.json);
    EXPECT_EQ(slurp(ra.csv), slurp(rb.csv));
    EXPECT_EQ(slurp(*ra.json), slurp(*rb.json));
    const json doc = json::parse(slurp(*ra.json));
    EXPECT_EQ(doc["schema"], "mantel-report/1");
    ASSERT_EQ(doc["trials"].size(), 2u);
    EXPECT_TRUE(doc["trials"][0]["q"]["certified"].get<bool>());
    EXPECT_TRUE(doc["trials"][0].contains("decomposition"));
}

TEST(Turan, MantelRows) {
    const auto cfg = parse_config({{"kind", "turan-table"}, {"k", 2}, {"n", {4, 5, 6, 7}}});
    RunOptions opt;
    opt.output_override = scratch("turan.csv").string();
    const auto lines = data_lines(slurp(run_experiment(cfg, opt).csv));
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[1].rfind("2,4,4,1,4,1,true,true,", 0), 0u) << lines[1];
    EXPECT_EQ(lines[4].rfind("2,7,12,1,12,1,true,true,", 0), 0u) << lines[4];
}

TEST(Cli, RoundTripAndExitCodes) {
    const fs::path g = scratch("rt.txt");
    ASSERT_EQ(run_cli("generate -n 9 -k 3 -p 0.4 --seed 2 --out " + g.string()), 0);
    EXPECT_EQ(run_cli("fmt-roundtrip " + g.string() + " --out " + scratch("rt2.txt").string()), 0);
    EXPECT_EQ(slurp(g), slurp(scratch("rt2.txt")));
    {
        std::ofstream out(scratch("noncanon.txt"), std::ios::binary);
        out << "5 2 2\n3 1\n0 1\n";
    }
    EXPECT_EQ(run_cli("fmt-roundtrip " + scratch("noncanon.txt").string()), 1);
    const fs::path bad = scratch("bad.json");
    {
        std::ofstream out(bad);
        out << R"({"kind": "phase-sweep", "n": [], "p": [0.5]})";
    }
    EXPECT_EQ(run_cli("phase " + bad.string()), 1);
    const fs::path partial = scratch("partial.json");
    {
        std::ofstream out(partial);
        out << R"({"kind": "phase-sweep", "n": [8, 14], "p": [0.2], "trials": 1})";
    }
    EXPECT_EQ(run_cli("phase " + partial.string() + " --out " + scratch("partial.csv").string()), 2);
    EXPECT_EQ(run_cli("concentration " + partial.string()), 1);  // kind mismatch
}
