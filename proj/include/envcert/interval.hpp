#pragma once

#include "envcert/polynomial.hpp"
#include "envcert/rational.hpp"

#include <utility>
#include <vector>

namespace envcert {

/// Closed rational interval [lo, hi] with lo <= hi.
class Interval {
public:
    Interval() = default;
    Interval(Rational lo, Rational hi);
    static Interval point(const Rational& v) { return Interval(v, v); }
    /// [-r, r]; r must be non-negative.
    static Interval symmetric(const Rational& r) { return Interval(Rational(-r), r); }

    const Rational& lo() const noexcept { return lo_; }
    const Rational& hi() const noexcept { return hi_; }

    bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
    /// Both endpoints of `other` lie in the open interval (lo, hi).
    bool strictly_contains(const Interval& other) const { return lo_ < other.lo_ && other.hi_ < hi_; }
    bool is_point() const { return lo_ == hi_; }

    bool operator==(const Interval&) const = default;

private:
    Rational lo_{0};
    Rational hi_{0};
};

enum class IntervalOp { add, sub, mul };

Interval iv_arith(const Interval& a, const Interval& b, IntervalOp op);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);
Interval operator-(const Interval& a);

/// Exact range of x^k over a.
Interval iv_power(const Interval& a, unsigned k);

Interval hull(const Interval& a, const Interval& b);

struct MidRad {
    Rational mid;
    /// Full width hi - lo; the half-width is rad / 2.
    Rational rad;
};

MidRad mid_rad(const Interval& a);

/// One interval per variable of a VarSpace.
using Box = std::vector<Interval>;

/// Sound enclosure of p over `domain`, evaluated monomial by monomial with
/// exact even-power ranges. With subdivision_depth > 0 every variable that
/// occurs in p is split into 2^depth equal pieces and the hull of the piece
/// enclosures is returned.
Interval iv_eval_poly(const Polynomial& p, const Box& domain, unsigned subdivision_depth = 0);

/// I(t) = a + b*t for t >= 0.
struct AffineIntervalFn {
    Interval a;
    Interval b;

    /// Pure slope [-s*t, s*t].
    static AffineIntervalFn slope(const Rational& s) { return {Interval::point(0), Interval::symmetric(s)}; }

    Interval at(const Rational& t) const;
    bool operator==(const AffineIntervalFn&) const = default;
};

/// Hull of {a + b*t : t in t_range}; t_range must be non-negative.
Interval affine_hull(const AffineIntervalFn& f, const Interval& t_range);

}  // namespace envcert
