#pragma once

#include "envcert/check.hpp"
#include "envcert/config.hpp"
#include "envcert/containment.hpp"
#include "envcert/taylor.hpp"
#include "envcert/zonotope.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace envcert {

inline constexpr std::string_view certificate_schema = "cert-v1";
inline constexpr std::string_view tool_version = "0.1.0";

namespace condition {
inline constexpr std::string_view taylor_model = "taylor_model";
inline constexpr std::string_view invariance = "invariance";
inline constexpr std::string_view safety = "safety";
inline constexpr std::string_view admissibility = "admissibility";
inline constexpr std::string_view initial_coverage = "initial_coverage";
}  // namespace condition

/// The five conditions in report order.
const std::vector<std::string>& condition_names();

struct ConditionRecord {
    std::string name;
    Verdict verdict = Verdict::unknown;
    std::optional<ContainmentWitness> witness;

    bool operator==(const ConditionRecord&) const = default;
};

struct TaylorModelRecord {
    unsigned order = 0;
    Rational dt;
    std::vector<std::string> variables;
    /// Terms of one polynomial per (x, u) dimension, in term order.
    std::vector<std::vector<std::pair<Monomial, Rational>>> p;
    std::vector<AffineIntervalFn> remainder;

    bool operator==(const TaylorModelRecord&) const = default;
};

TaylorModelRecord make_record(const TaylorModel& tm);

/// Rebuilds the polynomials of a record over `space`. Throws Malformed unless
/// the terms are listed strictly in term order with non-zero coefficients.
PolyVector record_polynomials(const TaylorModelRecord& r, const VarSpacePtr& space);

struct Certificate {
    std::string schema{certificate_schema};
    std::string version{tool_version};
    std::string problem_hash;
    Config config;
    std::optional<TaylorModelRecord> taylor_model;
    std::optional<Zonotope> reach_discrete;
    std::optional<Zonotope> reach_interval;
    std::vector<ConditionRecord> conditions;
    Verdict verdict = Verdict::unknown;

    bool operator==(const Certificate&) const = default;
};

nlohmann::json to_json(const Certificate& cert);
/// Throws Malformed on any structural problem.
Certificate certificate_from_json(const nlohmann::json& j);

/// [{"exponents": ["0", "1"], "coeff": "1/2"}, ...] in term order.
nlohmann::json polynomial_to_json(const Polynomial& p);

nlohmann::json zonotope_to_json(const Zonotope& z);
Zonotope zonotope_from_json(const nlohmann::json& j);
nlohmann::json witness_to_json(const ContainmentWitness& w);
ContainmentWitness witness_from_json(const nlohmann::json& j);

}  // namespace envcert
