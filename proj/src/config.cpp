#include "envcert/config.hpp"

#include "envcert/error.hpp"

#include <charconv>

namespace envcert {

namespace {

template <typename T>
T parse_unsigned(std::string_view key, std::string_view value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ParseError("config '" + std::string(key) + "' expects a non-negative integer, got '" +
                         std::string(value) + "'");
    return out;
}

template <typename Enum>
Enum parse_choice(std::string_view key, std::string_view value, std::string_view a, Enum ea, std::string_view b,
                  Enum eb) {
    if (value == a) return ea;
    if (value == b) return eb;
    throw ParseError("config '" + std::string(key) + "' expects '" + std::string(a) + "' or '" + std::string(b) +
                     "', got '" + std::string(value) + "'");
}

Rational parse_nonnegative(std::string_view key, std::string_view value) {
    Rational q = parse_rational(value);
    if (sgn(q) < 0) throw ParseError("config '" + std::string(key) + "' must be non-negative");
    return q;
}

}  // namespace

void Config::set(std::string_view key, std::string_view value) {
    if (key == "picard.order") {
        picard_order = parse_unsigned<unsigned>(key, value);
    } else if (key == "abstraction_domain") {
        abstraction_domain =
            parse_choice(key, value, "literal", AbstractionDomain::literal, "tight", AbstractionDomain::tight);
    } else if (key == "time_normalization") {
        time_normalization =
            parse_choice(key, value, "literal", TimeNormalization::literal, "tight", TimeNormalization::tight);
    } else if (key == "disturbance") {
        disturbance = parse_choice(key, value, "nominal", DisturbanceMode::nominal, "robust", DisturbanceMode::robust);
    } else if (key == "rationalize.mode") {
        rationalize_mode = parse_choice(key, value, "cfrac", RationalizeMode::cfrac, "dyadic", RationalizeMode::dyadic);
    } else if (key == "rationalize.max_den") {
        rationalize_max_den = parse_unsigned<std::uint64_t>(key, value);
        if (rationalize_max_den == 0) throw ParseError("rationalize.max_den must be positive");
    } else if (key == "lp.tol") {
        lp_tol = parse_nonnegative(key, value);
    } else if (key == "lp.max_iter") {
        lp_max_iter = parse_unsigned<unsigned>(key, value);
    } else if (key == "interval.subdivision") {
        subdivision = parse_unsigned<unsigned>(key, value);
        if (subdivision > 8) throw ParseError("interval.subdivision above 8 is not supported");
    } else if (key == "poly.degree_cap") {
        degree_cap = parse_unsigned<unsigned>(key, value);
    } else if (key == "remainder.initial_slope") {
        initial_slope = parse_nonnegative(key, value);
        if (sgn(initial_slope) == 0) throw ParseError("remainder.initial_slope must be positive");
    } else if (key == "remainder.max_doublings") {
        max_doublings = parse_unsigned<unsigned>(key, value);
    } else if (key == "inflate_outer") {
        if (value == "off" || value == "none") {
            inflate_outer.reset();
        } else {
            Rational delta = parse_nonnegative(key, value);
            if (sgn(delta) == 0)
                inflate_outer.reset();
            else
                inflate_outer = delta;
        }
    } else {
        throw ParseError("unknown config key '" + std::string(key) + "'");
    }
}

void Config::set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(assignment) + "'");
    set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::map<std::string, std::string> Config::entries() const {
    return {
        {"abstraction_domain", abstraction_domain == AbstractionDomain::literal ? "literal" : "tight"},
        {"disturbance", disturbance == DisturbanceMode::nominal ? "nominal" : "robust"},
        {"inflate_outer", inflate_outer ? to_string(*inflate_outer) : "off"},
        {"interval.subdivision", std::to_string(subdivision)},
        {"lp.max_iter", std::to_string(lp_max_iter)},
        {"lp.tol", to_string(lp_tol)},
        {"picard.order", std::to_string(picard_order)},
        {"poly.degree_cap", std::to_string(degree_cap)},
        {"rationalize.max_den", std::to_string(rationalize_max_den)},
        {"rationalize.mode", rationalize_mode == RationalizeMode::cfrac ? "cfrac" : "dyadic"},
        {"remainder.initial_slope", to_string(initial_slope)},
        {"remainder.max_doublings", std::to_string(max_doublings)},
        {"time_normalization", time_normalization == TimeNormalization::literal ? "literal" : "tight"},
    };
}

Config Config::from_entries(const std::map<std::string, std::string>& entries) {
    Config c;
    for (const auto& [k, v] : entries) c.set(k, v);
    return c;
}

}  // namespace envcert
