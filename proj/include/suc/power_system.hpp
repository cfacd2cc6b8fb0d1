// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "suc/array2d.hpp"

namespace suc {

struct Generator {
    std::string id;
    int node = 0;  // index into SystemInstance::nodes

    double cost = 0.0;               // $/MWh
    double startup_cost = 0.0;       // $
    double reserve_up_cost = 0.0;    // $/MW
    double reserve_down_cost = 0.0;  // $/MW
    double deploy_up_price = 0.0;    // $/MWh
    double deploy_down_price = 0.0;  // $/MWh

    double p_min = 0.0;  // MW
    double p_max = 0.0;
    double ramp_up = 0.0;  // MW/h
    double ramp_down = 0.0;
    double reserve_up_max = 0.0;  // MW
    double reserve_down_max = 0.0;

    int min_up = 1;  // h
    int min_down = 1;
    int initial_status = 0;
    int initial_on_periods = 0;   // periods forced to initial_status from t = 1
    int initial_off_periods = 0;

    bool operator==(const Generator&) const = default;
};

struct Line {
    std::string id;
    int from = 0;
    int to = 0;
    double susceptance = 0.0;  // p.u.
    double capacity = 0.0;     // MW

    bool operator==(const Line&) const = default;
};

struct WindFarm {
    std::string id;
    int node = 0;
    double capacity = 0.0;  // MW

    bool operator==(const WindFarm&) const = default;
};

/// Static data of one unit-commitment instance.
struct SystemInstance {
    std::string name;
    std::vector<std::string> nodes;
    std::vector<Line> lines;
    std::vector<Generator> generators;
    std::vector<WindFarm> wind_farms;
    Array2D<double> load;  // nodes x periods, MW
    double shed_cost = 0.0;
    int horizon = 0;
    int ref_node = 0;

    [[nodiscard]] int num_nodes() const { return static_cast<int>(nodes.size()); }
    [[nodiscard]] int num_lines() const { return static_cast<int>(lines.size()); }
    [[nodiscard]] int num_generators() const { return static_cast<int>(generators.size()); }
    [[nodiscard]] int num_farms() const { return static_cast<int>(wind_farms.size()); }

    bool operator==(const SystemInstance&) const = default;
};

/// Wind realizations with probabilities. `wind[s]` is farms x periods.
struct ScenarioSet {
    std::vector<std::string> ids;
    std::vector<double> probability;
    std::vector<Array2D<double>> wind;

    [[nodiscard]] int size() const { return static_cast<int>(ids.size()); }

    /// Scenarios at `indices` (in that order) with probabilities rescaled to sum to one.
    [[nodiscard]] ScenarioSet subset(const std::vector<int>& indices) const;

    bool operator==(const ScenarioSet&) const = default;
};

/// Throws ValidationError / ReferentialError on hard violations. Soft issues
/// (merit-order inconsistencies) are returned as warning strings.
std::vector<std::string> validate_instance(const SystemInstance& instance);

/// Throws ValidationError / DimensionError if the set does not fit `instance`.
void validate_scenarios(const ScenarioSet& scenarios, const SystemInstance& instance);

SystemInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const SystemInstance& instance);

SystemInstance load_instance(const std::filesystem::path& path,
                             std::vector<std::string>* warnings = nullptr);
void save_instance(const SystemInstance& instance, const std::filesystem::path& path);

ScenarioSet parse_scenarios(std::istream& in, const SystemInstance& instance);
ScenarioSet load_scenarios(const std::filesystem::path& path, const SystemInstance& instance);
void write_scenarios(const ScenarioSet& scenarios, const SystemInstance& instance, std::ostream& out);

}  // namespace suc
