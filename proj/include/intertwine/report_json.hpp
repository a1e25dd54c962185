#pragma once

// JSON serialisation of verification reports. Keys follow the report fields
// in declaration order; non-finite residuals become null.

#include <cmath>
#include <utility>
#include <vector>

#include <json.hpp>

#include "verify.hpp"

namespace intertwine {

inline constexpr int json_schema_version = 1;

inline nlohmann::ordered_json to_json(const VerificationReport& rep)
{
    nlohmann::ordered_json j;
    j["check"] = rep.check;
    j["p"] = rep.p;
    j["q"] = rep.q;
    j["r"] = rep.r ? nlohmann::ordered_json(*rep.r) : nlohmann::ordered_json(nullptr);
    j["jmax"] = rep.jmax;
    j["kmax"] = rep.kmax;
    j["max_residual"] =
        std::isfinite(rep.max_residual) ? nlohmann::ordered_json(rep.max_residual) : nlohmann::ordered_json(nullptr);
    j["worst_location"] = rep.worst_location;
    j["pass"] = rep.pass;
    j["tolerance"] = rep.tolerance;
    j["seed"] = rep.seed ? nlohmann::ordered_json(*rep.seed) : nlohmann::ordered_json(nullptr);
    j["evaluated"] = rep.evaluated;
    j["skipped"] = rep.skipped;
    j["note"] = rep.note;
    return j;
}

/// {"schema_version": 1, "pass": ..., "reports": [...]}
inline nlohmann::ordered_json report_bundle(const std::vector<VerificationReport>& reports)
{
    nlohmann::ordered_json j;
    j["schema_version"] = json_schema_version;
    bool pass = true;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& rep : reports) {
        pass = pass && rep.pass;
        arr.push_back(to_json(rep));
    }
    j["pass"] = pass;
    j["reports"] = std::move(arr);
    return j;
}

}  // namespace intertwine
