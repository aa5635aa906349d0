#pragma once

#include "envcert/certificate.hpp"
#include "envcert/check.hpp"
#include "envcert/problem.hpp"

namespace envcert {

/// Re-derives every verdict of `cert` with exact checks only: the Picard
/// iterate is recomputed and compared, both Taylor-model premises are
/// re-checked with the stored remainder, the reach sets are recomputed and
/// compared, and the stored witnesses are certified. The problem is hashed
/// under the certificate's configuration. A stored verdict that the checks
/// do not reproduce turns the condition into FAIL.
/// Throws Mismatch (hash) and Malformed (structure).
CheckReport verify_certificate(const Certificate& cert, const ProblemSpec& ps, unsigned threads = 1);

}  // namespace envcert
