#pragma once

#include "envcert/config.hpp"
#include "envcert/interval.hpp"
#include "envcert/taylor.hpp"
#include "envcert/zonotope.hpp"

#include <string>
#include <vector>

namespace envcert {

/// A control-envelope question: does the envelope E over (x, u) satisfy
/// one-step invariance, safety and admissibility for the sampled-data system,
/// and does it cover the initial set?
struct ProblemSpec {
    /// Extended dynamics over (x, u) with u' = 0.
    OdeSystem sys;
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    Zonotope envelope;
    Zonotope x0;
    Box x_safe;
    Box u_adm;
    Config config;

    /// Checks the dimension bookkeeping; throws DimensionMismatch.
    void validate() const;

    Zonotope envelope_x() const;
    Zonotope envelope_u() const;

    /// proj_x(E) without zero generators, inflated by delta*I when
    /// `inflate_outer` is set. Target of the invariance and coverage checks.
    Zonotope containment_target() const;

    /// Rows of a zonotope over (x, u) belonging to x.
    Zonotope state_rows(const Zonotope& z) const;

    RemainderSearch remainder_search(unsigned threads = 1) const;
};

/// Deterministic text form of everything that can change a verdict.
std::string canonical_text(const ProblemSpec& ps);

/// Lower-case hex SHA-256 of canonical_text.
std::string problem_hash(const ProblemSpec& ps);

std::string sha256_hex(const std::string& data);

}  // namespace envcert
