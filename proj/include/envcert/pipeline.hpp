#pragma once

#include "envcert/certificate.hpp"
#include "envcert/check.hpp"
#include "envcert/problem.hpp"

namespace envcert {

struct RciResult {
    CheckReport report;
    Certificate certificate;
};

/// Builds the Taylor model of the extended system from the envelope, then
/// checks invariance (one-step reach of x inside proj_x E), safety (tube
/// inside X_safe), admissibility (proj_u E inside U) and initial coverage
/// (X0 inside proj_x E). Witnesses come from the float LP and are exactified
/// and certified before they are stored.
RciResult check_rci(const ProblemSpec& ps, unsigned threads = 1);

/// Float LP witness search, exactification and exact certification.
/// Returns the certified witness, or the reason none is available.
struct ContainmentAttempt {
    CheckResult result;
    std::optional<ContainmentWitness> witness;
};
ContainmentAttempt prove_containment(const Zonotope& inner, const Zonotope& outer, const Config& config);

}  // namespace envcert
