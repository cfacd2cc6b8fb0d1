#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>
#include <sstream>

#include "suc/errors.hpp"
#include "suc/power_system.hpp"
#include "support/fixtures.hpp"

using namespace suc;
using suc::testing::data_file;
using suc::testing::fixture;

TEST(LoadInstance, ToyCounts) {
    const SystemInstance inst = load_instance(fixture("toy-a.json"));
    EXPECT_EQ(inst.num_nodes(), 2);
    EXPECT_EQ(inst.num_generators(), 2);
    EXPECT_EQ(inst.num_farms(), 1);
    EXPECT_EQ(inst.num_lines(), 1);
    EXPECT_EQ(inst.horizon, 4);
    EXPECT_DOUBLE_EQ(inst.lines[0].capacity, 50.0);
    EXPECT_DOUBLE_EQ(inst.lines[0].susceptance, 10.0);
    EXPECT_DOUBLE_EQ(inst.wind_farms[0].capacity, 40.0);
    EXPECT_DOUBLE_EQ(inst.load(1, 2), 90.0);
}

TEST(LoadInstance, MediumCounts) {
    const SystemInstance inst = load_instance(fixture("med-b.json"));
    EXPECT_EQ(inst.num_nodes(), 6);
    EXPECT_EQ(inst.num_generators(), 6);
    EXPECT_EQ(inst.num_farms(), 2);
    EXPECT_EQ(inst.horizon, 12);
}

TEST(LoadInstance, UnknownNodeIsReferentialError) {
    try {
        load_instance(data_file("unknown_node.json"));
        FAIL() << "expected a referential error";
    } catch (const ReferentialError& e) {
        EXPECT_NE(std::string(e.what()).find("n9"), std::string::npos);
    }
}

TEST(LoadInstance, PminAbovePmaxNamesGenerator) {
    try {
        load_instance(data_file("pmin_above_pmax.json"));
        FAIL() << "expected a validation error";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("g1"), std::string::npos);
    }
}

TEST(LoadInstance, MalformedJsonIsParseError) {
    EXPECT_THROW(load_instance(data_file("malformed.json")), ParseError);
}

TEST(LoadInstance, MissingFile) { EXPECT_THROW(load_instance(data_file("absent.json")), Error); }

TEST(LoadInstance, RoundTrip) {
    const SystemInstance inst = load_instance(fixture("med-b.json"));
    const auto path = std::filesystem::temp_directory_path() / "suc_roundtrip.json";
    save_instance(inst, path);
    const SystemInstance again = load_instance(path);
    std::filesystem::remove(path);
    EXPECT_EQ(inst, again);
}

TEST(LoadInstance, MeritOrderViolationIsWarning) {
    auto doc = instance_to_json(load_instance(fixture("toy-a.json")));
    doc["generators"][0]["deploy_up_price"] = 5.0;
    const SystemInstance inst = instance_from_json(doc);
    const auto warnings = validate_instance(inst);
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_NE(warnings[0].find("g1"), std::string::npos);
}

TEST(LoadInstance, DisconnectedNetworkRejected) {
    auto doc = instance_to_json(load_instance(fixture("toy-a.json")));
    doc["lines"] = nlohmann::json::array();
    EXPECT_THROW(validate_instance(instance_from_json(doc)), ValidationError);
}

TEST(LoadScenarios, EquiprobableDefault) {
    const SystemInstance inst = load_instance(fixture("toy-a.json"));
    const ScenarioSet s = load_scenarios(fixture("toy-a.csv"), inst);
    ASSERT_EQ(s.size(), 3);
    for (double p : s.probability) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.wind[1](0, 2), 30.0);
}

TEST(LoadScenarios, ExplicitProbabilities) {
    const SystemInstance inst = load_instance(fixture("toy-a.json"));
    const ScenarioSet s = load_scenarios(data_file("weighted.csv"), inst);
    EXPECT_EQ(s.probability, (std::vector<double>{0.5, 0.3, 0.2}));
}

TEST(LoadScenarios, ProbabilitySumError) {
    const SystemInstance inst = load_instance(fixture("toy-a.json"));
    try {
        load_scenarios(data_file("probability_sum.csv"), inst);
        FAIL() << "expected a probability-sum error";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("0.9"), std::string::npos) << e.what();
    }
}

TEST(LoadScenarios, CapacityExceedance) {
    const SystemInstance inst = load_instance(fixture("toy-a.json"));
    EXPECT_THROW(load_scenarios(data_file("over_capacity.csv"), inst), ValidationError);
}

TEST(LoadScenarios, MissingPeriodIsDimensionError) {
    const SystemInstance inst = load_instance(fixture("toy-a.json"));
    EXPECT_THROW(load_scenarios(data_file("missing_period.csv"), inst), DimensionError);
}

TEST(LoadScenarios, UnknownFarmIsDimensionError) {
    const SystemInstance inst = load_instance(fixture("toy-a.json"));
    std::istringstream in("scenario,farm,period,value_mw\ns1,w7,1,3\n");
    EXPECT_THROW(parse_scenarios(in, inst), DimensionError);
}

TEST(LoadScenarios, WriteParseRoundTrip) {
    const SystemInstance inst = load_instance(fixture("med-b.json"));
    const ScenarioSet s = load_scenarios(fixture("med-b.csv"), inst);
    std::stringstream buf;
    write_scenarios(s, inst, buf);
    const ScenarioSet again = parse_scenarios(buf, inst);
    EXPECT_EQ(s.ids, again.ids);
    EXPECT_EQ(s.wind, again.wind);
    for (int k = 0; k < s.size(); ++k) EXPECT_NEAR(s.probability[k], again.probability[k], 1e-15);
}

TEST(LoadScenarios, AcceptedSetsSatisfyInvariants) {
    for (const char* name : {"toy-a", "med-b"}) {
        const SystemInstance inst = load_instance(fixture(std::string(name) + ".json"));
        const ScenarioSet s = load_scenarios(fixture(std::string(name) + ".csv"), inst);
        EXPECT_NEAR(std::accumulate(s.probability.begin(), s.probability.end(), 0.0), 1.0, 1e-9);
        for (const auto& w : s.wind)
            for (std::size_t j = 0; j < w.rows(); ++j)
                for (std::size_t t = 0; t < w.cols(); ++t) {
                    EXPECT_GE(w(j, t), 0.0);
                    EXPECT_LE(w(j, t), inst.wind_farms[j].capacity);
                }
    }
}

TEST(ScenarioSubset, Renormalizes) {
    ScenarioSet s;
    for (int k = 0; k < 4; ++k) {
        s.ids.push_back("s" + std::to_string(k));
        s.probability.push_back(0.25);
        s.wind.emplace_back(1, 1, double(k));
    }
    const ScenarioSet sub = s.subset({2, 0, 3});
    EXPECT_EQ(sub.ids, (std::vector<std::string>{"s2", "s0", "s3"}));
    for (double p : sub.probability) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(sub.wind[0](0, 0), 2.0);
}
