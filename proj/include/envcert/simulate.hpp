#pragma once

#include "envcert/problem.hpp"
#include "envcert/taylor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace envcert {

/// f compiled to doubles for fast evaluation.
class FloatField {
public:
    explicit FloatField(const OdeSystem& sys);

    std::size_t dims() const noexcept { return dims_; }
    /// f(x, w) with x over the extended state.
    std::vector<double> operator()(const std::vector<double>& x, const std::vector<double>& w) const;

private:
    struct Term {
        double coeff;
        std::vector<std::uint32_t> powers;
    };
    std::size_t dims_;
    std::vector<std::vector<Term>> terms_;
    /// For each space variable: index into x (>= 0) or into w (encoded -1 - k).
    std::vector<long> slots_;
};

/// Classic fourth-order Runge-Kutta with `steps` equal steps over [0, t].
std::vector<double> rk4(const FloatField& f, std::vector<double> x, const std::vector<double>& w, double t,
                        unsigned steps);

/// Point of z for a parameter vector in [-1, 1]^p.
std::vector<double> zonotope_point(const Zonotope& z, const std::vector<double>& lambda);

/// Smallest |lambda|_inf with G_x lambda = x - c_x over the state rows of the
/// envelope, via the float LP. Empty if the equation has no solution.
std::vector<double> envelope_fiber(const ProblemSpec& ps, const std::vector<double>& x);

struct SimulationReport {
    unsigned samples = 0;
    unsigned steps = 0;
    std::uint64_t seed = 0;
    std::uint64_t states_checked = 0;
    std::uint64_t inside_safe = 0;
    std::uint64_t inside_tube = 0;
    std::uint64_t fiber_misses = 0;

    std::string text() const;
};

/// Closed-loop rollouts: (x, u) sampled from E, integrated over dt, and the
/// input resampled from the envelope fiber at the new state (re-centred onto
/// the unit ball when no fiber exists). Counts states inside X_safe and inside
/// the interval hull of the tube. Advisory only.
SimulationReport simulate_sanity(const ProblemSpec& ps, unsigned samples, std::uint64_t seed, unsigned steps = 50,
                                 unsigned threads = 1);

}  // namespace envcert
