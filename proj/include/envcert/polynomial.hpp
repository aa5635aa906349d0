#pragma once

#include "envcert/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace envcert {

enum class VarRole {
    time,         // t
    parameter,    // lambda: initial-set generator coefficients
    remainder,    // xi: remainder generator coefficients
    disturbance,  // w
    state,        // x
    input,        // u
    error,        // e: Taylor-model remainder offsets inside the defect
};

std::string_view to_string(VarRole role);

struct Variable {
    std::string name;
    VarRole role;
    bool operator==(const Variable&) const = default;
};

inline constexpr unsigned default_degree_cap = 64;

/// Ordered list of named variables shared by the polynomials built over it.
/// Names are unique and at most one variable has the time role. The degree cap
/// bounds the total degree of any product formed in this space.
class VarSpace {
public:
    explicit VarSpace(std::vector<Variable> vars, unsigned degree_cap = default_degree_cap);

    std::size_t size() const noexcept { return vars_.size(); }
    const Variable& operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<Variable>& variables() const noexcept { return vars_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::size_t require(std::string_view name) const;
    std::optional<std::size_t> time_index() const noexcept { return time_; }
    std::vector<std::size_t> indices_with_role(VarRole role) const;
    unsigned degree_cap() const noexcept { return degree_cap_; }

    bool operator==(const VarSpace& other) const { return vars_ == other.vars_; }

private:
    std::vector<Variable> vars_;
    std::optional<std::size_t> time_;
    unsigned degree_cap_;
};

using VarSpacePtr = std::shared_ptr<const VarSpace>;

VarSpacePtr make_space(std::vector<Variable> vars, unsigned degree_cap = default_degree_cap);

using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial& m);

/// Graded order: lower total degree first, ties broken so that higher powers
/// of earlier variables come first.
struct GradedOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, GradedOrder>;

    explicit Polynomial(VarSpacePtr space);

    static Polynomial constant(VarSpacePtr space, const Rational& value);
    static Polynomial variable(VarSpacePtr space, std::string_view name);
    static Polynomial variable(VarSpacePtr space, std::size_t index);
    static Polynomial monomial(VarSpacePtr space, Monomial exponents, const Rational& coeff);

    const VarSpacePtr& space() const noexcept { return space_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    unsigned degree() const;
    /// Coefficient of the given monomial (zero when absent).
    Rational coeff(const Monomial& m) const;

    /// Adds coeff * monomial, dropping the term if it cancels.
    void add_term(const Monomial& m, const Rational& coeff);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& s);

    bool operator==(const Polynomial& other) const;

    /// Canonical text such as "l1 + t*l2 + 1/2*t^2*l3"; the zero polynomial is "0".
    std::string to_string() const;

private:
    VarSpacePtr space_;
    Terms terms_;
};

using PolyVector = std::vector<Polynomial>;

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a);
/// Throws DegreeCapExceeded when the product degree exceeds the space's cap.
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Rational& s, const Polynomial& a);
Polynomial pow(const Polynomial& p, unsigned k);

/// Antiderivative in the time variable with zero constant of integration.
Polynomial integrate_time(const Polynomial& p);

Polynomial derivative(const Polynomial& p, std::size_t var);
Polynomial derivative(const Polynomial& p, std::string_view var);
/// Partial derivatives in the listed order.
PolyVector gradient(const Polynomial& p, std::span<const std::string> vars);

/// Replaces every variable of p's space by the matching image, which must all
/// live in `target`. Images are indexed by p's variables.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> images, const VarSpacePtr& target);

/// Same-space substitution; unbound variables pass through unchanged.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings);
Polynomial substitute(const Polynomial& p, const std::map<std::string, Rational>& bindings);

/// Re-expresses p over `target`, matching variables by name. Throws
/// DomainMismatch if a variable carrying a nonzero exponent is missing.
Polynomial embed(const Polynomial& p, const VarSpacePtr& target);

/// Exact value at a point given for every variable of the space.
Rational evaluate(const Polynomial& p, std::span<const Rational> point);

/// Parses `+ - * / ^` expressions over rational literals and the space's
/// variable names. Division is only allowed by a constant.
Polynomial parse_polynomial(std::string_view text, const VarSpacePtr& space);

void require_same_space(const Polynomial& a, const Polynomial& b);

}  // namespace envcert
