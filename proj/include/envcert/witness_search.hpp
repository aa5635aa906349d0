#pragma once

#include "envcert/config.hpp"
#include "envcert/containment.hpp"
#include "envcert/lp.hpp"
#include "envcert/zonotope.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace envcert {

struct FloatWitness {
    DenseMatrix gamma;
    std::vector<double> beta;
    /// Optimal |[gamma beta]|_inf.
    double norm = 0.0;
};

struct LpWitnessResult {
    bool found = false;
    FloatWitness witness;
    std::string detail;
};

/// Floating-point LP: minimize s subject to H gamma = G, H beta = b - c and
/// every absolute row sum of [gamma beta] <= s. Not found when the equality
/// constraints are inconsistent or the optimum exceeds 1 + 1e-6. Throws
/// NumericalFailure.
LpWitnessResult lp_witness_search(const Zonotope& inner, const Zonotope& outer, const LpOptions& options = {});

/// Rationalizes a float witness and repairs beta so that H beta = b - c
/// holds exactly; epsilon is the exact residual |H gamma - G|_inf.
ContainmentWitness exactify(const FloatWitness& w, const Zonotope& inner, const Zonotope& outer,
                            const RationalMatrix& hplus, RationalizeMode mode = RationalizeMode::cfrac,
                            std::uint64_t max_denominator = 1'000'000);

}  // namespace envcert
