// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include "suc/power_system.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "suc/errors.hpp"

namespace suc {

namespace {

using nlohmann::json;

constexpr double kProbabilityTolerance = 1e-9;
constexpr double kCapacityTolerance = 1e-9;

std::string field_path(const std::string& array, std::size_t index, const std::string& id,
                       const std::string& field) {
    std::ostringstream out;
    out << array << "[" << index << "]";
    if (!id.empty()) out << " (" << id << ")";
    out << "." << field;
    return out.str();
}

template <class T>
T required(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + "." + key + ": " + e.what());
    }
}

template <class T>
T optional_field(const json& obj, const char* key, T fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : it->get<T>();
}

int resolve_node(const std::map<std::string, int>& index, const std::string& id,
                 const std::string& where) {
    auto it = index.find(id);
    if (it == index.end()) throw ReferentialError(where + ": unknown node id '" + id + "'");
    return it->second;
}

bool is_connected(const SystemInstance& instance) {
    const int n = instance.num_nodes();
    if (n == 0) return false;
    std::vector<std::vector<int>> adjacency(n);
    for (const auto& line : instance.lines) {
        adjacency[line.from].push_back(line.to);
        adjacency[line.to].push_back(line.from);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adjacency[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        std::size_t first = cell.find_first_not_of(' ');
        cells.push_back(first == std::string::npos ? std::string{} : cell.substr(first));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_number(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ParseError(where + ": not a number: '" + text + "'");
    }
}

}  // namespace

ScenarioSet ScenarioSet::subset(const std::vector<int>& indices) const {
    ScenarioSet out;
    double total = 0.0;
    for (int i : indices) {
        if (i < 0 || i >= size()) throw InvalidArgument("scenario index out of range");
        total += probability[i];
    }
    for (int i : indices) {
        out.ids.push_back(ids[i]);
        out.probability.push_back(probability[i] / total);
        out.wind.push_back(wind[i]);
    }
    return out;
}

std::vector<std::string> validate_instance(const SystemInstance& instance) {
    std::vector<std::string> warnings;
    if (instance.horizon < 1) throw ValidationError("meta.horizon: must be >= 1");
    const int n = instance.num_nodes();
    if (n == 0) throw ValidationError("nodes: at least one node required");
    if (instance.ref_node < 0 || instance.ref_node >= n)
        throw ReferentialError("meta.ref_node: not a node of the instance");
    if (!(instance.shed_cost >= 0.0)) throw ValidationError("shed_cost: must be >= 0");

    auto check_node = [n](int node, const std::string& where) {
        if (node < 0 || node >= n) throw ReferentialError(where + ": node index out of range");
    };

    for (std::size_t i = 0; i < instance.lines.size(); ++i) {
        const auto& l = instance.lines[i];
        check_node(l.from, field_path("lines", i, l.id, "from"));
        check_node(l.to, field_path("lines", i, l.id, "to"));
        if (l.from == l.to) throw ValidationError(field_path("lines", i, l.id, "to") + ": from == to");
        if (!(l.capacity > 0.0)) throw ValidationError(field_path("lines", i, l.id, "capacity") + ": must be > 0");
        if (!(l.susceptance > 0.0))
            throw ValidationError(field_path("lines", i, l.id, "susceptance") + ": must be > 0");
    }

    for (std::size_t i = 0; i < instance.generators.size(); ++i) {
        const auto& g = instance.generators[i];
        auto where = [&](const char* f) { return field_path("generators", i, g.id, f); };
        check_node(g.node, where("node"));
        if (!(g.p_min >= 0.0)) throw ValidationError(where("p_min") + ": must be >= 0");
        if (!(g.p_min <= g.p_max)) throw ValidationError(where("p_min") + ": exceeds p_max");
        if (!(g.ramp_up >= 0.0)) throw ValidationError(where("ramp_up") + ": must be >= 0");
        if (!(g.ramp_down >= 0.0)) throw ValidationError(where("ramp_down") + ": must be >= 0");
        if (!(g.reserve_up_max >= 0.0)) throw ValidationError(where("reserve_up_max") + ": must be >= 0");
        if (!(g.reserve_down_max >= 0.0)) throw ValidationError(where("reserve_down_max") + ": must be >= 0");
        if (g.min_up < 1) throw ValidationError(where("min_up") + ": must be >= 1");
        if (g.min_down < 1) throw ValidationError(where("min_down") + ": must be >= 1");
        if (g.initial_status != 0 && g.initial_status != 1)
            throw ValidationError(where("initial_status") + ": must be 0 or 1");
        if (g.initial_on_periods < 0) throw ValidationError(where("initial_on_periods") + ": must be >= 0");
        if (g.initial_off_periods < 0) throw ValidationError(where("initial_off_periods") + ": must be >= 0");
        if (g.deploy_down_price > g.cost || g.cost > g.deploy_up_price)
            warnings.push_back(where("cost") + ": expected deploy_down_price <= cost <= deploy_up_price");
    }

    for (std::size_t i = 0; i < instance.wind_farms.size(); ++i) {
        const auto& w = instance.wind_farms[i];
        check_node(w.node, field_path("wind_farms", i, w.id, "node"));
        if (!(w.capacity >= 0.0)) throw ValidationError(field_path("wind_farms", i, w.id, "capacity") + ": must be >= 0");
    }

    if (instance.load.rows() != static_cast<std::size_t>(n) ||
        instance.load.cols() != static_cast<std::size_t>(instance.horizon))
        throw DimensionError("load: expected nodes x horizon table");
    for (double v : instance.load.flat())
        if (!(v >= 0.0)) throw ValidationError("load: entries must be >= 0");

    if (!is_connected(instance)) throw ValidationError("lines: network graph is not connected");
    return warnings;
}

void validate_scenarios(const ScenarioSet& scenarios, const SystemInstance& instance) {
    const auto s = scenarios.ids.size();
    if (s == 0) throw ValidationError("scenarios: at least one scenario required");
    if (scenarios.probability.size() != s || scenarios.wind.size() != s)
        throw DimensionError("scenarios: ids, probabilities and wind tables differ in length");
    double total = 0.0;
    for (std::size_t k = 0; k < s; ++k) {
        if (!(scenarios.probability[k] > 0.0))
            throw ValidationError("scenario " + scenarios.ids[k] + ": probability must be > 0");
        total += scenarios.probability[k];
        const auto& table = scenarios.wind[k];
        if (table.rows() != instance.wind_farms.size() ||
            table.cols() != static_cast<std::size_t>(instance.horizon))
            throw DimensionError("scenario " + scenarios.ids[k] + ": expected farms x periods values");
        for (std::size_t j = 0; j < table.rows(); ++j) {
            for (std::size_t t = 0; t < table.cols(); ++t) {
                double v = table(j, t);
                if (!(v >= 0.0))
                    throw ValidationError("scenario " + scenarios.ids[k] + ": negative wind value");
                if (v > instance.wind_farms[j].capacity + kCapacityTolerance) {
                    std::ostringstream msg;
                    msg << "scenario " << scenarios.ids[k] << ", farm " << instance.wind_farms[j].id
                        << ", period " << t + 1 << ": value " << v << " exceeds capacity "
                        << instance.wind_farms[j].capacity;
                    throw ValidationError(msg.str());
                }
            }
        }
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "scenarios: probabilities sum to " << total << ", expected 1";
        throw ValidationError(msg.str());
    }
}

SystemInstance instance_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("instance: top-level value must be an object");
    SystemInstance inst;
    const json& meta = doc.contains("meta") ? doc.at("meta") : throw ParseError("instance: missing 'meta'");
    inst.name = optional_field<std::string>(meta, "name", "");
    inst.horizon = required<int>(meta, "horizon", "meta");

    const auto node_ids = required<std::vector<std::string>>(doc, "nodes", "instance");
    std::map<std::string, int> node_index;
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
        if (!node_index.emplace(node_ids[i], static_cast<int>(i)).second)
            throw ValidationError(field_path("nodes", i, node_ids[i], "id") + ": duplicate node id");
    }
    inst.nodes = node_ids;
    inst.ref_node = resolve_node(node_index, required<std::string>(meta, "ref_node", "meta"), "meta.ref_node");

    if (doc.contains("lines")) {
        std::size_t i = 0;
        for (const auto& item : doc.at("lines")) {
            Line l;
            const std::string where = "lines[" + std::to_string(i) + "]";
            l.id = required<std::string>(item, "id", where);
            l.from = resolve_node(node_index, required<std::string>(item, "from", where), where + ".from");
            l.to = resolve_node(node_index, required<std::string>(item, "to", where), where + ".to");
            l.susceptance = required<double>(item, "susceptance", where);
            l.capacity = required<double>(item, "capacity", where);
            inst.lines.push_back(std::move(l));
            ++i;
        }
    }

    std::size_t i = 0;
    for (const auto& item : required<json>(doc, "generators", "instance")) {
        Generator g;
        const std::string where = "generators[" + std::to_string(i) + "]";
        g.id = required<std::string>(item, "id", where);
        g.node = resolve_node(node_index, required<std::string>(item, "node", where), where + ".node");
        g.cost = required<double>(item, "cost", where);
        g.startup_cost = required<double>(item, "startup_cost", where);
        g.reserve_up_cost = required<double>(item, "reserve_up_cost", where);
        g.reserve_down_cost = required<double>(item, "reserve_down_cost", where);
        g.deploy_up_price = required<double>(item, "deploy_up_price", where);
        g.deploy_down_price = required<double>(item, "deploy_down_price", where);
        g.p_min = required<double>(item, "p_min", where);
        g.p_max = required<double>(item, "p_max", where);
        g.ramp_up = required<double>(item, "ramp_up", where);
        g.ramp_down = required<double>(item, "ramp_down", where);
        g.reserve_up_max = required<double>(item, "reserve_up_max", where);
        g.reserve_down_max = required<double>(item, "reserve_down_max", where);
        g.min_up = required<int>(item, "min_up", where);
        g.min_down = required<int>(item, "min_down", where);
        g.initial_status = required<int>(item, "initial_status", where);
        g.initial_on_periods = required<int>(item, "initial_on_periods", where);
        g.initial_off_periods = required<int>(item, "initial_off_periods", where);
        inst.generators.push_back(std::move(g));
        ++i;
    }

    if (doc.contains("wind_farms")) {
        i = 0;
        for (const auto& item : doc.at("wind_farms")) {
            WindFarm w;
            const std::string where = "wind_farms[" + std::to_string(i) + "]";
            w.id = required<std::string>(item, "id", where);
            w.node = resolve_node(node_index, required<std::string>(item, "node", where), where + ".node");
            w.capacity = required<double>(item, "capacity", where);
            inst.wind_farms.push_back(std::move(w));
            ++i;
        }
    }

    if (inst.horizon < 1) throw ValidationError("meta.horizon: must be >= 1");
    inst.load = Array2D<double>(node_ids.size(), static_cast<std::size_t>(inst.horizon), 0.0);
    if (doc.contains("load")) {
        i = 0;
        for (const auto& item : doc.at("load")) {
            const std::string where = "load[" + std::to_string(i) + "]";
            int node = resolve_node(node_index, required<std::string>(item, "node", where), where + ".node");
            int period = required<int>(item, "period", where);
            if (period < 1 || period > inst.horizon)
                throw ValidationError(where + ".period: outside 1..horizon");
            inst.load(node, period - 1) = required<double>(item, "mw", where);
            ++i;
        }
    }
    inst.shed_cost = required<double>(doc, "shed_cost", "instance");
    return inst;
}

json instance_to_json(const SystemInstance& inst) {
    json doc;
    doc["meta"] = {{"name", inst.name},
                   {"horizon", inst.horizon},
                   {"ref_node", inst.nodes.at(inst.ref_node)},
                   {"units", {{"power", "MW"}, {"energy_price", "$/MWh"}, {"capacity_price", "$/MW"},
                              {"startup_cost", "$"}, {"ramp", "MW/h"}, {"time", "h"},
                              {"susceptance", "p.u."}}}};
    doc["nodes"] = inst.nodes;
    doc["lines"] = json::array();
    for (const auto& l : inst.lines)
        doc["lines"].push_back({{"id", l.id}, {"from", inst.nodes[l.from]}, {"to", inst.nodes[l.to]},
                                {"susceptance", l.susceptance}, {"capacity", l.capacity}});
    doc["generators"] = json::array();
    for (const auto& g : inst.generators)
        doc["generators"].push_back({{"id", g.id},
                                     {"node", inst.nodes[g.node]},
                                     {"cost", g.cost},
                                     {"startup_cost", g.startup_cost},
                                     {"reserve_up_cost", g.reserve_up_cost},
                                     {"reserve_down_cost", g.reserve_down_cost},
                                     {"deploy_up_price", g.deploy_up_price},
                                     {"deploy_down_price", g.deploy_down_price},
                                     {"p_min", g.p_min},
                                     {"p_max", g.p_max},
                                     {"ramp_up", g.ramp_up},
                                     {"ramp_down", g.ramp_down},
                                     {"reserve_up_max", g.reserve_up_max},
                                     {"reserve_down_max", g.reserve_down_max},
                                     {"min_up", g.min_up},
                                     {"min_down", g.min_down},
                                     {"initial_status", g.initial_status},
                                     {"initial_on_periods", g.initial_on_periods},
                                     {"initial_off_periods", g.initial_off_periods}});
    doc["wind_farms"] = json::array();
    for (const auto& w : inst.wind_farms)
        doc["wind_farms"].push_back({{"id", w.id}, {"node", inst.nodes[w.node]}, {"capacity", w.capacity}});
    doc["load"] = json::array();
    for (std::size_t n = 0; n < inst.load.rows(); ++n)
        for (std::size_t t = 0; t < inst.load.cols(); ++t)
            if (inst.load(n, t) != 0.0)
                doc["load"].push_back({{"node", inst.nodes[n]}, {"period", t + 1}, {"mw", inst.load(n, t)}});
    doc["shed_cost"] = inst.shed_cost;
    return doc;
}

SystemInstance load_instance(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    SystemInstance inst = instance_from_json(doc);
    auto w = validate_instance(inst);
    if (warnings) *warnings = std::move(w);
    return inst;
}

void save_instance(const SystemInstance& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write instance file: " + path.string());
    out << instance_to_json(instance).dump(2) << '\n';
}

ScenarioSet parse_scenarios(std::istream& in, const SystemInstance& instance) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("scenarios: empty file");
    const auto header = split_csv_line(line);
    const bool has_probability = header.size() == 5 && header[4] == "probability";
    if (header.size() < 4 || header[0] != "scenario" || header[1] != "farm" || header[2] != "period" ||
        header[3] != "value_mw" || (header.size() == 5 && !has_probability) || header.size() > 5)
        throw ParseError("scenarios: header must be 'scenario,farm,period,value_mw[,probability]'");

    std::map<std::string, int> farm_index;
    for (std::size_t j = 0; j < instance.wind_farms.size(); ++j)
        farm_index.emplace(instance.wind_farms[j].id, static_cast<int>(j));

    const std::size_t farms = instance.wind_farms.size();
    const auto periods = static_cast<std::size_t>(instance.horizon);

    ScenarioSet set;
    std::map<std::string, int> scenario_index;
    std::vector<std::optional<double>> probability;
    std::vector<Array2D<char>> seen;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::string where = "scenarios line " + std::to_string(line_no);
        auto cells = split_csv_line(line);
        if (cells.size() < 4 || cells.size() > header.size())
            throw ParseError(where + ": expected " + std::to_string(header.size()) + " columns");

        auto [it, inserted] = scenario_index.emplace(cells[0], set.size());
        if (inserted) {
            set.ids.push_back(cells[0]);
            set.wind.emplace_back(farms, periods, 0.0);
            seen.emplace_back(farms, periods, 0);
            probability.emplace_back();
        }
        const int s = it->second;

        auto farm = farm_index.find(cells[1]);
        if (farm == farm_index.end())
            throw DimensionError(where + ": farm '" + cells[1] + "' is not a wind farm of the instance");
        const double period_value = parse_number(cells[2], where);
        const int period = static_cast<int>(period_value);
        if (period != period_value || period < 1 || period > instance.horizon)
            throw DimensionError(where + ": period outside 1.." + std::to_string(instance.horizon));
        const double value = parse_number(cells[3], where);

        if (seen[s](farm->second, period - 1))
            throw ParseError(where + ": duplicate (scenario, farm, period) row");
        seen[s](farm->second, period - 1) = 1;
        set.wind[s](farm->second, period - 1) = value;

        if (has_probability && cells.size() == 5 && !cells[4].empty()) {
            const double p = parse_number(cells[4], where);
            if (probability[s] && *probability[s] != p)
                throw ParseError(where + ": conflicting probability for scenario " + cells[0]);
            probability[s] = p;
        }
    }

    if (set.ids.empty()) throw ParseError("scenarios: no data rows");
    for (int s = 0; s < set.size(); ++s) {
        for (char c : seen[s].flat())
            if (!c)
                throw DimensionError("scenario " + set.ids[s] + ": expected " + std::to_string(farms) + " farms x " +
                                     std::to_string(periods) + " periods of values");
    }

    const bool any_probability = std::any_of(probability.begin(), probability.end(),
                                             [](const auto& p) { return p.has_value(); });
    if (any_probability) {
        for (int s = 0; s < set.size(); ++s) {
            if (!probability[s]) throw ValidationError("scenario " + set.ids[s] + ": missing probability");
            set.probability.push_back(*probability[s]);
        }
    } else {
        set.probability.assign(set.ids.size(), 1.0 / static_cast<double>(set.ids.size()));
    }

    validate_scenarios(set, instance);
    return set;
}

ScenarioSet load_scenarios(const std::filesystem::path& path, const SystemInstance& instance) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path.string());
    return parse_scenarios(in, instance);
}

void write_scenarios(const ScenarioSet& scenarios, const SystemInstance& instance, std::ostream& out) {
    out << "scenario,farm,period,value_mw,probability\n";
    out.precision(17);
    for (int s = 0; s < scenarios.size(); ++s) {
        bool first = true;
        for (std::size_t j = 0; j < scenarios.wind[s].rows(); ++j) {
            for (std::size_t t = 0; t < scenarios.wind[s].cols(); ++t) {
                out << scenarios.ids[s] << ',' << instance.wind_farms[j].id << ',' << t + 1 << ','
                    << scenarios.wind[s](j, t) << ',';
                if (first) out << scenarios.probability[s];
                first = false;
                out << '\n';
            }
        }
    }
}

}  // namespace suc
