#pragma once

#include "envcert/interval.hpp"
#include "envcert/matrix.hpp"
#include "envcert/polynomial.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace envcert {

/// Z(c, G) = { c + G*lambda : |lambda|_inf <= 1 }. `labels` names each row
/// (e.g. "x1", "u1") and may be empty.
struct Zonotope {
    RationalVector c;
    RationalMatrix G;
    std::vector<std::string> labels;

    Zonotope() = default;
    Zonotope(RationalVector center, RationalMatrix generators, std::vector<std::string> labels = {});

    std::size_t dim() const noexcept { return c.size(); }
    std::size_t generators() const noexcept { return G.cols(); }

    bool operator==(const Zonotope&) const = default;
};

/// Existential projection onto the selected rows.
Zonotope project(const Zonotope& z, std::span<const std::size_t> rows);
/// Projection onto the rows whose labels are listed.
Zonotope project(const Zonotope& z, std::span<const std::string> labels);

/// Tightest enclosing box: c_i -/+ sum_j |G_ij|.
Box interval_hull(const Zonotope& z);

using Point2 = std::array<Rational, 2>;

/// Counter-clockwise vertices of the 2-D projection onto rows (r0, r1). A
/// single point for a generator-free zonotope, two for a segment.
std::vector<Point2> vertices_2d(const Zonotope& z, std::size_t r0, std::size_t r1);

struct LinearAbstraction {
    /// Terms of degree <= 1 in the abstracted variables.
    Polynomial affine;
    /// Enclosure of the remaining terms over the domain.
    Interval remainder;
};

/// Splits p into its affine part in `vars` plus an interval enclosing the
/// higher-order residue over `domain`. The domain must contain 0 in every
/// abstracted variable.
LinearAbstraction linear_abstraction(const Polynomial& p, std::span<const std::size_t> vars, const Box& domain,
                                     unsigned subdivision_depth = 0);
/// Abstraction in all variables of p.
LinearAbstraction linear_abstraction(const Polynomial& p, const Box& domain, unsigned subdivision_depth = 0);

}  // namespace envcert
