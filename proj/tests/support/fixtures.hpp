#pragma once

#include <string>

#include "suc/power_system.hpp"

namespace suc::testing {

inline std::string fixture(const std::string& name) { return std::string(SUC_FIXTURE_DIR) + "/" + name; }

#ifdef SUC_TEST_DATA_DIR
inline std::string data_file(const std::string& name) { return std::string(SUC_TEST_DATA_DIR) + "/" + name; }
#endif

struct Fixture {
    SystemInstance instance;
    ScenarioSet scenarios;
};

inline Fixture load_fixture(const std::string& name) {
    Fixture f;
    f.instance = load_instance(fixture(name + ".json"));
    f.scenarios = load_scenarios(fixture(name + ".csv"), f.instance);
    return f;
}

}  // namespace suc::testing
