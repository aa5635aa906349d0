#include "envcert/plot.hpp"

#include "envcert/rationalize.hpp"

#include <iomanip>

namespace envcert {

std::vector<Point2> box_polygon(const Interval& x, const Interval& y) {
    return {Point2{x.lo(), y.lo()}, Point2{x.hi(), y.lo()}, Point2{x.hi(), y.hi()}, Point2{x.lo(), y.hi()}};
}

void write_polygon_csv(std::ostream& os, const std::vector<Point2>& vertices) {
    os << "x,y\n" << std::setprecision(17);
    for (const auto& v : vertices) os << to_double(v[0]) << ',' << to_double(v[1]) << '\n';
}

}  // namespace envcert
