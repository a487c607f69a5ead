#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynrmat/zero_test.hpp"

namespace dynrmat {

// Verification report written by every CLI run. Serialization is fully
// deterministic for fixed inputs and seed: keys are sorted, no timestamps or
// wall-clock data unless timing is explicitly enabled.
struct Report {
    std::string command;
    std::map<std::string, std::string> inputs; // name -> content hash
    std::uint64_t seed = 0;
    int order = 4;
    std::string zero_test_mode; // "exact" | "sampled" | "auto"

    struct Check {
        std::string name;
        bool pass = false;
        std::string mode; // "exact" | "sampled"
        std::string note;
        std::vector<std::string> witness; // point coordinates, if any
        std::string witness_value;
    };
    std::vector<Check> checks;
    nlohmann::json result; // command-specific payload

    bool timing_enabled = false;
    long timing_ms = 0;

    void add_check(const std::string& name, const ZeroVerdict& v);
    void add_check(const std::string& name, bool pass, const std::string& mode, const std::string& note);
    bool all_passed() const;

    nlohmann::json to_json() const;
    std::string serialize() const; // stable byte-for-byte output
};

} // namespace dynrmat
