#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msox {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    bool quick = false;  // smaller sweeps, same properties
    uint64_t seed = 1;   // randomized trials derive from this only
};

// Names in report order; run_check throws on an unknown name.
std::vector<std::string> check_names();
CheckResult run_check(const std::string& name, const VerifyOptions& opts = {});
std::vector<CheckResult> run_all_checks(const VerifyOptions& opts = {});

// `check=<name> status=<pass|fail> detail=<...>`
std::string format_report_line(const CheckResult& r);

}  // namespace msox
