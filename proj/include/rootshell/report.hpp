#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace rootshell {

// nlohmann's default object container is std::map, so key order is already
// sorted; stable_dump below only has to fix the number formatting.
using Json = nlohmann::json;

// Shortest of the %.17g family that round-trips the value.  Non-finite
// doubles have no JSON spelling and become null.
std::string format_double(double x);

// Deterministic serialization: sorted keys (inherited from the container),
// two-space indent, floats through format_double.  Rerunning a command with
// the same inputs reproduces the output byte for byte.
std::string stable_dump(const Json& j, int indent = 0);

struct RunReport {
    std::string command;
    Json parameters = Json::object();
    std::uint64_t seed = 0;
    std::string timestamp;  // resolved at construction, see run_timestamp()
    Json results = Json::object();
    Json verdicts = Json::object();  // name -> bool

    bool pass() const;
    Json to_json() const;
    std::string dump() const { return stable_dump(to_json()) + "\n"; }
};

// SOURCE_DATE_EPOCH (seconds) rendered as ISO-8601 UTC when set, otherwise
// the literal "unset".  Wall-clock time would break the byte-identical-rerun
// contract, so it is never consulted.
std::string run_timestamp();

// CSV with the same float formatting as the JSON reports.  Cells containing
// separators or quotes are quoted.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

struct BaselineDiff {
    bool match = true;
    std::vector<std::string> mismatches;  // "path: got X, baseline Y (tol Z)"
};

// Field-by-field comparison of a results payload against a stored baseline.
// Only keys present in the baseline are compared (baselines may be trimmed).
// The baseline file may wrap the payload as {"results": ..., "tolerances":
// {leaf-key: relative tolerance}}; a bare object is treated as the payload.
// Default tolerances: exact for bools/strings/integers, 1e-9 relative for
// floats.
BaselineDiff compare_baseline(const Json& results, const Json& baseline_file);

}  // namespace rootshell
