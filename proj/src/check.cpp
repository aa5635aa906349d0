#include "envcert/check.hpp"

#include "envcert/error.hpp"

#include <algorithm>

namespace envcert {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

Verdict parse_verdict(std::string_view text) {
    if (text == "PASS") return Verdict::pass;
    if (text == "FAIL") return Verdict::fail;
    if (text == "UNKNOWN") return Verdict::unknown;
    throw Malformed("unknown verdict '" + std::string(text) + "'");
}

Verdict CheckReport::overall() const {
    if (conditions.empty()) return Verdict::unknown;
    bool any_unknown = false;
    for (const auto& c : conditions) {
        if (c.result.verdict == Verdict::fail) return Verdict::fail;
        if (c.result.verdict == Verdict::unknown) any_unknown = true;
    }
    return any_unknown ? Verdict::unknown : Verdict::pass;
}

const CheckResult* CheckReport::find(std::string_view name) const {
    auto it = std::find_if(conditions.begin(), conditions.end(), [&](const auto& c) { return c.name == name; });
    return it == conditions.end() ? nullptr : &it->result;
}

std::string CheckReport::table() const {
    std::size_t width = 7;
    for (const auto& c : conditions) width = std::max(width, c.name.size());
    std::string out;
    auto row = [&](std::string_view name, std::string_view verdict, std::string_view detail) {
        out += std::string(name);
        out += std::string(width - name.size() + 2, ' ');
        out += std::string(verdict);
        out += std::string(9 - verdict.size(), ' ');
        out += std::string(detail);
        out += '\n';
    };
    row("condition", "verdict", "detail");
    for (const auto& c : conditions) row(c.name, to_string(c.result.verdict), c.result.detail);
    row("overall", to_string(overall()), "");
    return out;
}

}  // namespace envcert
