#pragma once

// Property reports: pass/fail per named property with witnesses and extremes.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vicsek {

inline constexpr int kReportSchemaVersion = 1;

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::vector<std::string> witnesses;
    nlohmann::json extremes = nlohmann::json::object();
};

struct SuiteReport {
    std::string suite;
    nlohmann::json config = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::vector<PropertyResult> results;

    bool pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }

    /// Names of failing properties.
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& r : results)
            if (!r.pass) out.push_back(r.name);
        return out;
    }

    void append(SuiteReport other) {
        for (auto& r : other.results) {
            r.name = other.suite + "." + r.name;
            results.push_back(std::move(r));
        }
    }

    void add(PropertyResult r) { results.push_back(std::move(r)); }

    nlohmann::json to_json() const {
        nlohmann::json res = nlohmann::json::array();
        for (const auto& r : results)
            res.push_back({{"name", r.name}, {"pass", r.pass}, {"witnesses", r.witnesses}, {"extremes", r.extremes}});
        nlohmann::json j = {{"schema_version", kReportSchemaVersion},
                            {"suite", suite},
                            {"config", config},
                            {"seed", nullptr},
                            {"pass", pass()},
                            {"results", res}};
        if (seed) j["seed"] = *seed;
        return j;
    }
};

}  // namespace vicsek
