#include "ncrl/report.hpp"

#include <cmath>
#include <cstdio>

#include "ncrl/version.hpp"

namespace ncrl {

bool Report::all_passed() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

void Report::add_check(const std::string& name, bool pass, double residual) {
    checks.push_back(Check{name, pass, residual});
}

double round_sig12(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string serialize_report(const Report& report) {
    nlohmann::json j;
    j["verdict"] = report.verdict;
    j["seed"] = report.seed;
    j["params"] = report.params;
    j["payload"] = report.payload;
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : report.checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["residual"] = round_sig12(c.residual);
        checks.push_back(jc);
    }
    j["checks"] = checks;
    j["provenance"] = {{"tool", kToolName}, {"version", kVersion}, {"seed", report.seed}};
    return j.dump(2) + "\n";
}

} // namespace ncrl
