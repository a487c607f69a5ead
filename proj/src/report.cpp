#include "dynrmat/report.hpp"

namespace dynrmat {

void Report::add_check(const std::string& name, const ZeroVerdict& v) {
    Check c;
    c.name = name;
    c.pass = v.zero;
    c.mode = v.exact ? "exact" : "sampled";
    c.note = v.note;
    if (v.witness) {
        for (const auto& x : *v.witness) c.witness.push_back(x.str());
        if (v.witness_value) c.witness_value = v.witness_value->str();
    }
    checks.push_back(std::move(c));
}

void Report::add_check(const std::string& name, bool pass, const std::string& mode,
                       const std::string& note) {
    Check c;
    c.name = name;
    c.pass = pass;
    c.mode = mode;
    c.note = note;
    checks.push_back(std::move(c));
}

bool Report::all_passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["seed"] = seed;
    j["order"] = order;
    j["zero_test"] = zero_test_mode;
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["verdict"] = c.pass ? "pass" : "fail";
        e["mode"] = c.mode;
        if (!c.note.empty()) e["note"] = c.note;
        if (!c.witness.empty()) {
            e["witness"] = c.witness;
            e["witness_value"] = c.witness_value;
        }
        cs.push_back(e);
    }
    j["checks"] = cs;
    if (!result.is_null()) j["result"] = result;
    j["status"] = all_passed() ? "pass" : "fail";
    if (timing_enabled) j["timing_ms"] = timing_ms;
    return j;
}

std::string Report::serialize() const { return to_json().dump(2) + "\n"; }

} // namespace dynrmat
