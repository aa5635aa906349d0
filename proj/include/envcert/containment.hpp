#pragma once

#include "envcert/check.hpp"
#include "envcert/interval.hpp"
#include "envcert/matrix.hpp"
#include "envcert/zonotope.hpp"

namespace envcert {

/// Witness for Z(c, G) inside Z(b, H): H*gamma ~ G, H*beta = b - c.
struct ContainmentWitness {
    RationalMatrix gamma;
    RationalVector beta;
    RationalMatrix hplus;
    Rational epsilon{0};

    bool operator==(const ContainmentWitness&) const = default;
};

/// Exact check of the four witness conditions:
///   H * hplus = I,  b - c = H * beta,  |H*gamma - G| <= epsilon,
///   |[gamma beta]| <= 1 - epsilon * |hplus|      (infinity norms).
/// PASS implies containment; FAIL only means the witness is insufficient.
CheckResult certify(const Zonotope& inner, const Zonotope& outer, const ContainmentWitness& w);

/// Exact containment of the interval hull of z in a box.
CheckResult in_box(const Zonotope& z, const Box& box);

}  // namespace envcert
