#pragma once

// Verification suites shared by the CLI and the acceptance binary. Every suite
// is a pure function of its seed, so reports are reproducible byte for byte.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ltk::suites {

using nlohmann::json;

struct Check {
    std::string name;
    bool pass;
    json witness;  // null when there is nothing to show
};

struct Report {
    std::string suite;  // empty for an anonymous report
    json config;        // null when there is no configuration to echo
    std::vector<Check> checks;

    void add(std::string name, bool pass, json witness = nullptr) {
        checks.push_back({std::move(name), pass, std::move(witness)});
    }
    bool pass() const;
};

enum class Mode { Text, Json };

/// Checks sorted by name; {"checks":[...],"status":"pass"|"fail"} plus suite/config when set.
json report_json(const Report& r);
std::string emit_report(const Report& r, Mode mode);

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Report(std::uint64_t seed)> run;
};

/// Acceptance criteria 1..12 (13 concerns the CLI binary itself).
const std::vector<Criterion>& criteria();

// Suites reused by CLI subcommands.
Report witt_suite(std::uint64_t seed);
Report theta_obstruct_suite(int p, int samples, std::uint64_t seed);

}  // namespace ltk::suites
