#include "rootshell/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>

namespace rootshell {

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    // pick the shortest precision that round-trips, capped at 17 significant
    // digits; keeps reports readable without losing a single bit
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    std::string s = buf;
    // always mark the value as floating so baselines keep their types
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace {

void dump_rec(const Json& j, int depth, std::string& out) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string pad_close(2 * depth, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(it.key()).dump() + ": ";
                dump_rec(it.value(), depth + 1, out);
            }
            out += "\n" + pad_close + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // short numeric arrays inline; everything else one element a line
            bool small = j.size() <= 8;
            for (const auto& v : j)
                if (!(v.is_number() || v.is_boolean() || v.is_string())) small = false;
            if (small) {
                out += "[";
                bool first = true;
                for (const auto& v : j) {
                    if (!first) out += ", ";
                    first = false;
                    dump_rec(v, depth, out);
                }
                out += "]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                dump_rec(v, depth + 1, out);
            }
            out += "\n" + pad_close + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();  // integers, bools, strings, null
            return;
    }
}

}  // namespace

std::string stable_dump(const Json& j, int indent) {
    std::string out;
    dump_rec(j, indent, out);
    return out;
}

bool RunReport::pass() const {
    for (const auto& v : verdicts)
        if (!v.is_boolean() || !v.get<bool>()) return false;
    return true;
}

Json RunReport::to_json() const {
    Json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["timestamp"] = timestamp;
    j["results"] = results;
    j["verdicts"] = verdicts;
    j["pass"] = pass();
    return j;
}

std::string run_timestamp() {
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    if (!epoch || !*epoch) return "unset";
    char* end = nullptr;
    long long secs = std::strtoll(epoch, &end, 10);
    if (end == epoch) return "unset";
    std::time_t tt = (std::time_t)secs;
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    auto cell = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    };
    std::string out;
    for (size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + cell(header[i]);
    out += "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell(row[i]);
        out += "\n";
    }
    return out;
}

namespace {

void compare_rec(const Json& got, const Json& base, const Json& tols,
                 const std::string& path, const std::string& leaf, BaselineDiff& diff) {
    auto fail = [&](const std::string& why) {
        diff.match = false;
        diff.mismatches.push_back(path + ": " + why);
    };
    if (base.is_object()) {
        if (!got.is_object()) return fail("baseline expects an object");
        for (auto it = base.begin(); it != base.end(); ++it) {
            if (!got.contains(it.key())) {
                fail("missing key " + it.key());
                continue;
            }
            compare_rec(got.at(it.key()), it.value(), tols,
                        path + "/" + it.key(), it.key(), diff);
        }
        return;
    }
    if (base.is_array()) {
        if (!got.is_array()) return fail("baseline expects an array");
        if (got.size() != base.size())
            return fail("array size " + std::to_string(got.size()) + " vs baseline " +
                        std::to_string(base.size()));
        for (size_t i = 0; i < base.size(); ++i)
            compare_rec(got[i], base[i], tols, path + "/" + std::to_string(i), leaf, diff);
        return;
    }
    if (base.is_number() && got.is_number()) {
        double a = got.get<double>(), b = base.get<double>();
        double tol = 0.0;
        if (base.is_number_float() || got.is_number_float()) tol = 1e-9;
        if (tols.is_object() && tols.contains(leaf) && tols.at(leaf).is_number())
            tol = tols.at(leaf).get<double>();
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        if (std::fabs(a - b) > tol * scale)
            fail("got " + format_double(a) + ", baseline " + format_double(b) +
                 " (tol " + format_double(tol) + ")");
        return;
    }
    if (got != base) fail("got " + got.dump() + ", baseline " + base.dump());
}

}  // namespace

BaselineDiff compare_baseline(const Json& results, const Json& baseline_file) {
    const Json* payload = &baseline_file;
    Json tols = Json::object();
    if (baseline_file.is_object() && baseline_file.contains("results")) {
        payload = &baseline_file.at("results");
        if (baseline_file.contains("tolerances")) tols = baseline_file.at("tolerances");
    }
    BaselineDiff diff;
    compare_rec(results, *payload, tols, "results", "", diff);
    return diff;
}

}  // namespace rootshell
