#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ncrl {

struct Check {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

/// Analysis outcome destined for serialization. Field content must be a pure
/// function of the run configuration: no timestamps, no machine identity.
struct Report {
    std::string verdict;
    std::vector<Check> checks;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json payload = nlohmann::json::object();
    std::uint64_t seed = 0;

    bool all_passed() const;
    void add_check(const std::string& name, bool pass, double residual);
};

/// Deterministic bytes: sorted object keys, shortest round-trip floats,
/// version stamp, trailing newline.
std::string serialize_report(const Report& report);

/// Rounds to 12 significant digits (payload scalar convention).
double round_sig12(double x);

} // namespace ncrl
