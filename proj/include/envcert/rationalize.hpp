#pragma once

// Float <-> rational conversion. Not reachable from the certificate verifier.

#include "envcert/config.hpp"
#include "envcert/rational.hpp"

#include <cstdint>

namespace envcert {

/// Last continued-fraction convergent of the exact binary value of `v` whose
/// denominator does not exceed `max_denominator`. Throws NotFinite.
Rational rationalize(double v, std::uint64_t max_denominator);

/// The exact binary value of `v`. Throws NotFinite.
Rational rationalize_dyadic(double v);

Rational rationalize(double v, RationalizeMode mode, std::uint64_t max_denominator);

double to_double(const Rational& q);

}  // namespace envcert
