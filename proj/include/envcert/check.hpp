#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace envcert {

enum class Verdict { pass, fail, unknown };

std::string_view to_string(Verdict v);
/// Throws Malformed on anything but "PASS", "FAIL", "UNKNOWN".
Verdict parse_verdict(std::string_view text);

/// Outcome of one exact check. `detail` carries the exact margins or the
/// reason for failure in human-readable form.
struct CheckResult {
    Verdict verdict = Verdict::unknown;
    std::string detail;

    bool passed() const noexcept { return verdict == Verdict::pass; }
    static CheckResult pass(std::string detail = {}) { return {Verdict::pass, std::move(detail)}; }
    static CheckResult fail(std::string detail) { return {Verdict::fail, std::move(detail)}; }
    static CheckResult unknown(std::string detail) { return {Verdict::unknown, std::move(detail)}; }
};

struct ConditionResult {
    std::string name;
    CheckResult result;
};

/// Per-condition verdicts of an envelope check. The overall verdict is PASS
/// only if every condition passes; any FAIL makes it FAIL, otherwise UNKNOWN.
struct CheckReport {
    std::vector<ConditionResult> conditions;

    Verdict overall() const;
    const CheckResult* find(std::string_view name) const;
    std::string table() const;
};

}  // namespace envcert
