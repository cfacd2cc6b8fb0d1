#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "suc/cli.hpp"
#include "support/fixtures.hpp"

using suc::testing::data_file;
using suc::testing::fixture;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "suc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = suc::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> toy(std::vector<std::string> extra) {
    std::vector<std::string> args{"--instance", fixture("toy-a.json"), "--scenarios", fixture("toy-a.csv")};
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

nlohmann::json read_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST(Cli, SolveMultiCut) {
    const auto report = temp("suc_cli_report.json");
    const auto trace = temp("suc_cli_trace.jsonl");
    auto args = toy({"--method", "multi-cut", "--eps", "1e-6", "--report", report.string(), "--trace", trace.string()});
    args.insert(args.begin(), "solve");
    const Outcome o = cli(args);
    ASSERT_EQ(o.code, 0) << o.err;
    const auto doc = read_json(report);
    EXPECT_EQ(doc["method"], "multi-cut");
    EXPECT_EQ(doc["status"], "Converged");
    EXPECT_EQ(doc["trace_path"], trace.string());
    std::ifstream in(trace);
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    EXPECT_EQ(lines, doc["iterations"].get<int>());
    std::filesystem::remove(report);
    std::filesystem::remove(trace);
}

TEST(Cli, SolveOuterReportsPhaseTimes) {
    auto args = toy({"--method", "outer", "--subsets", "2", "--gamma", "0.5"});
    args.insert(args.begin(), "solve");
    const Outcome o = cli(args);
    ASSERT_EQ(o.code, 0) << o.err;
    const auto doc = nlohmann::json::parse(o.out);
    EXPECT_TRUE(doc.contains("T1"));
    EXPECT_TRUE(doc.contains("T2"));
    EXPECT_EQ(doc["outer"]["subsets"].size(), 2u);
}

TEST(Cli, CompareAllAgrees) {
    const auto report = temp("suc_cli_compare.json");
    const auto trace = temp("suc_cli_compare.jsonl");
    auto args = toy({"--methods", "all", "--report", report.string(), "--trace", trace.string()});
    args.insert(args.begin(), "compare");
    const Outcome o = cli(args);
    ASSERT_EQ(o.code, 0) << o.err << o.out;
    const auto doc = read_json(report);
    EXPECT_FALSE(doc["disagreement"].get<bool>());
    ASSERT_EQ(doc["reports"].size(), 6u);
    for (const auto& r : doc["reports"]) {
        EXPECT_EQ(r["status"], "Converged");
        if (r["method"] != "extensive") {
            EXPECT_TRUE(std::filesystem::exists(r["trace_path"].get<std::string>())) << r["trace_path"];
            std::filesystem::remove(r["trace_path"].get<std::string>());
        }
    }
    std::filesystem::remove(report);
}

TEST(Cli, CompareSubset) {
    auto args = toy({"--methods", "single-cut,aggregated"});
    args.insert(args.begin(), "compare");
    const Outcome o = cli(args);
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("aggregated"), std::string::npos);
}

TEST(Cli, IterationLimitExitsTwo) {
    auto args = toy({"--method", "single-cut", "--max-iters", "2"});
    args.insert(args.begin(), "solve");
    EXPECT_EQ(cli(args).code, 2);
}

TEST(Cli, InputErrorsExitOne) {
    EXPECT_EQ(cli({"solve", "--instance", data_file("nope.json"), "--scenarios", fixture("toy-a.csv")}).code, 1);
    const Outcome bad = cli({"solve", "--instance", data_file("unknown_node.json"), "--scenarios", fixture("toy-a.csv")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("n9"), std::string::npos);
    auto unknown = toy({"--frobnicate", "3"});
    unknown.insert(unknown.begin(), "solve");
    EXPECT_EQ(cli(unknown).code, 1);
    auto method = toy({"--method", "dual-ascent"});
    method.insert(method.begin(), "solve");
    EXPECT_EQ(cli(method).code, 1);
    auto clusters = toy({"--method", "aggregated", "--init-clusters", "9"});
    clusters.insert(clusters.begin(), "solve");
    EXPECT_EQ(cli(clusters).code, 1);
    EXPECT_EQ(cli({}).code, 1);
}

TEST(Cli, Help) {
    const Outcome o = cli({"solve", "--help"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("--kappa"), std::string::npos);
}
