#pragma once

#include "envcert/interval.hpp"
#include "envcert/zonotope.hpp"

#include <ostream>
#include <vector>

namespace envcert {

/// Corners of [x] x [y], counter-clockwise from (lo, lo).
std::vector<Point2> box_polygon(const Interval& x, const Interval& y);

/// "x,y" header followed by one vertex per line.
void write_polygon_csv(std::ostream& os, const std::vector<Point2>& vertices);

}  // namespace envcert
