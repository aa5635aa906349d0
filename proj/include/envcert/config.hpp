#pragma once

#include "envcert/polynomial.hpp"
#include "envcert/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace envcert {

/// Where the linear-abstraction remainder of the one-step reach set is
/// bounded: over the whole step [0, dt] (literal) or at t = dt only (tight).
enum class AbstractionDomain { literal, tight };

/// How the time generator of the tube zonotope covers [0, dt]: unscaled
/// over [-1, 1] (literal, needs dt <= 1) or re-centred onto [0, dt] (tight).
enum class TimeNormalization { literal, tight };

/// nominal: disturbances fixed at zero; robust: w ranges over [-W, W].
enum class DisturbanceMode { nominal, robust };

enum class RationalizeMode { cfrac, dyadic };

/// Every knob that can change a verdict. All values are exact so the
/// configuration participates in the problem hash.
struct Config {
    unsigned picard_order = 2;
    AbstractionDomain abstraction_domain = AbstractionDomain::literal;
    TimeNormalization time_normalization = TimeNormalization::tight;
    DisturbanceMode disturbance = DisturbanceMode::nominal;
    RationalizeMode rationalize_mode = RationalizeMode::cfrac;
    std::uint64_t rationalize_max_den = 1'000'000;
    Rational lp_tol = pow10(-9);
    unsigned lp_max_iter = 10'000;
    unsigned subdivision = 0;
    unsigned degree_cap = default_degree_cap;
    Rational initial_slope = pow10(-6);
    unsigned max_doublings = 80;
    /// Extra delta * I generators on rank-deficient containment targets.
    std::optional<Rational> inflate_outer;

    /// Applies one `key=value` override. Throws ParseError on unknown keys or
    /// bad values.
    void set(std::string_view key, std::string_view value);
    void set(std::string_view assignment);

    /// Flat key -> string view of every setting, in key order.
    std::map<std::string, std::string> entries() const;
    static Config from_entries(const std::map<std::string, std::string>& entries);

    bool operator==(const Config& other) const { return entries() == other.entries(); }
};

}  // namespace envcert
