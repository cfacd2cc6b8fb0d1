#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "suc/errors.hpp"
#include "suc/report.hpp"
#include "support/fixtures.hpp"

using namespace suc;
using suc::testing::data_file;
using suc::testing::load_fixture;

namespace {

RunReport report(const std::string& method, std::optional<double> objective, const std::string& instance = "toy-a") {
    RunReport r;
    r.method = method;
    r.instance = instance;
    r.status = objective ? "Converged" : "NotConverged";
    r.objective = objective;
    r.master_rows = 10;
    return r;
}

nlohmann::json golden() {
    std::ifstream in(data_file("report_golden.json"));
    return nlohmann::json::parse(in);
}

std::set<std::string> keys(const nlohmann::json& doc) {
    std::set<std::string> out;
    for (const auto& item : doc.items()) out.insert(item.key());
    return out;
}

}  // namespace

TEST(ReportSchema, MatchesGolden) {
    RunReport r;
    r.method = "outer";
    r.instance = "toy-a";
    r.status = "Converged";
    r.objective = 3403.5;
    r.wall_time_s = 1.75;
    r.iterations = 12;
    r.master_rows = 140;
    r.max_master_rows = 160;
    r.config = config_to_json(MethodOptions{});
    r.trace_path = "trace.jsonl";
    r.t1 = 1.25;
    r.t2 = 0.5;
    r.outer = {{"T1", 1.25}, {"T2", 0.5}, {"fixed_count", 7}, {"free_count", 1}, {"subsets", nlohmann::json::array()}};
    EXPECT_EQ(r.to_json(), golden());
}

TEST(ReportSchema, RoundTrip) {
    const RunReport r = RunReport::from_json(golden());
    EXPECT_EQ(r.to_json(), golden());
    nlohmann::json future = golden();
    future["schema_version"] = 2;
    EXPECT_THROW(RunReport::from_json(future), ParseError);
}

TEST(ReportSchema, LiveRunsCarryGoldenKeys) {
    const auto f = load_fixture("toy-a");
    MethodOptions options;
    std::set<std::string> expected = keys(golden());
    expected.erase("T1");
    expected.erase("T2");
    expected.erase("outer");
    for (Method m : {Method::Extensive, Method::MultiCut}) {
        const RunReport r = run_method(m, f.instance, f.scenarios, options);
        EXPECT_EQ(keys(r.to_json()), expected) << to_string(m);
        EXPECT_EQ(keys(r.to_json()["config"]), keys(golden()["config"]));
        EXPECT_TRUE(r.converged());
        EXPECT_GT(r.master_rows, 0);
    }
    const RunReport outer = run_method(Method::Outer, f.instance, f.scenarios, options);
    EXPECT_EQ(keys(outer.to_json()), keys(golden()));
}

TEST(ReportSchema, ObjectiveOnlyWhenConverged) {
    const auto f = load_fixture("toy-a");
    MethodOptions options;
    options.benders.max_iterations = 2;
    const RunReport r = run_method(Method::SingleCut, f.instance, f.scenarios, options);
    EXPECT_EQ(r.status, "NotConverged");
    EXPECT_FALSE(r.objective.has_value());
    EXPECT_TRUE(r.to_json()["objective"].is_null());
}

TEST(Methods, NamesRoundTrip) {
    for (Method m : all_methods()) EXPECT_EQ(method_from_string(to_string(m)), m);
    EXPECT_EQ(all_methods().size(), 6u);
    EXPECT_THROW(method_from_string("benders"), InvalidArgument);
}

TEST(ComparisonTable, AgreeingReports) {
    const ComparisonTable t = emit_comparison_table({report("single-cut", 100.0), report("multi-cut", 100.0)}, 1e-6);
    EXPECT_FALSE(t.disagreement);
    EXPECT_EQ(t.json["rows"].size(), 2u);
    EXPECT_NE(t.text.find("single-cut"), std::string::npos);
    EXPECT_NE(t.text.find("multi-cut"), std::string::npos);
    EXPECT_EQ(t.text.find("DISAGREES"), std::string::npos);
}

TEST(ComparisonTable, TenEpsilonApartDisagrees) {
    const double eps = 1e-6;
    const ComparisonTable t = emit_comparison_table({report("single-cut", 1.0), report("multi-cut", 1.0 + 10 * eps)}, eps);
    EXPECT_TRUE(t.disagreement);
    EXPECT_TRUE(t.json["rows"][1]["disagrees"].get<bool>());
}

TEST(ComparisonTable, ToleranceScalesWithObjective) {
    const double eps = 1e-6;
    const ComparisonTable t =
        emit_comparison_table({report("single-cut", 5e4), report("multi-cut", 5e4 * (1 + 1.5 * eps))}, eps);
    EXPECT_FALSE(t.disagreement);
}

TEST(ComparisonTable, NeedsTwoReports) {
    EXPECT_THROW(emit_comparison_table({report("single-cut", 1.0)}, 1e-6), InvalidArgument);
}

TEST(ComparisonTable, RejectsMixedInstances) {
    EXPECT_THROW(emit_comparison_table({report("single-cut", 1.0), report("multi-cut", 1.0, "med-b")}, 1e-6),
                 InvalidArgument);
}
