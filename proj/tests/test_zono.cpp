#include "envcert/error.hpp"
#include "envcert/rationalize.hpp"
#include "envcert/reach.hpp"
#include "envcert/simulate.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace envcert;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::vector<Variable> xu(std::size_t states, std::size_t inputs) {
    std::vector<Variable> v;
    for (std::size_t i = 0; i < states; ++i) v.push_back({"x" + std::to_string(i + 1), VarRole::state});
    for (std::size_t i = 0; i < inputs; ++i) v.push_back({"u" + std::to_string(i + 1), VarRole::input});
    return v;
}

Zonotope unit_box(std::size_t n, const Rational& scale = Rational(1)) {
    return Zonotope(RationalVector(n, Rational(0)), scale * RationalMatrix::identity(n));
}

TaylorModel trusted(const OdeSystem& sys, const Zonotope& init, unsigned k, std::vector<AffineIntervalFn> rem) {
    const auto space = make_taylor_space(init.generators());
    TaylorModel tm{space, picard_iterate(sys, zonotope_polynomials(init, space), k), std::move(rem), sys.dt(), init,
                   k};
    tm.initial_premise_ok = true;
    tm.derivative_premise_ok = true;
    return tm;
}

std::mt19937_64& rng() {
    static std::mt19937_64 g(2024);
    return g;
}

Rational small_rational(int span = 9) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 7);
    Rational r(num(rng()), den(rng()));
    r.canonicalize();
    return r;
}

Zonotope random_zonotope(std::size_t n, std::size_t p) {
    RationalVector c(n);
    RationalMatrix g(n, p);
    for (auto& v : c) v = small_rational();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) g(i, j) = small_rational();
    return Zonotope(c, g);
}

}  // namespace

TEST_CASE("project keeps rows and labels") {
    const Zonotope z(RationalVector{1, 2, 3}, RationalMatrix{{1, 0}, {0, 1}, {2, 3}}, {"x1", "x2", "u1"});
    const std::vector<std::size_t> rows{2, 0};
    const Zonotope p = project(z, rows);
    CHECK(p.c == RationalVector{3, 1});
    CHECK(p.G == RationalMatrix{{2, 3}, {1, 0}});
    CHECK(p.labels == std::vector<std::string>{"u1", "x1"});

    const std::vector<std::string> names{"x1", "x2"};
    const Zonotope x = project(z, names);
    CHECK(x.G == RationalMatrix{{1, 0}, {0, 1}});

    const std::vector<std::size_t> first{1};
    const std::vector<std::size_t> direct{0};
    CHECK(project(p, first) == project(z, direct));

    const std::vector<std::string> missing{"x9"};
    CHECK_THROWS_AS(project(z, missing), DimensionMismatch);
}

TEST_CASE("interval hull") {
    const Zonotope z(RationalVector{1, q("-1/2")}, RationalMatrix{{1, q("-1/3")}, {0, 2}});
    const Box b = interval_hull(z);
    CHECK(b[0] == Interval(q("-1/3"), q("7/3")));
    CHECK(b[1] == Interval(q("-5/2"), q("3/2")));
    CHECK(interval_hull(Zonotope(RationalVector{4}, RationalMatrix(1, 0)))[0] == Interval::point(4));
}

TEST_CASE("vertices of small zonotopes") {
    const auto square = vertices_2d(unit_box(2), 0, 1);
    CHECK(oracle::same_cycle(square, {Point2{1, 1}, Point2{-1, 1}, Point2{-1, -1}, Point2{1, -1}}));

    const Zonotope segment(RationalVector{0, 0}, RationalMatrix{{1, 2}, {1, 2}});
    const auto seg = vertices_2d(segment, 0, 1);
    REQUIRE(seg.size() == 2);
    CHECK(((seg[0] == Point2{3, 3} && seg[1] == Point2{-3, -3}) || (seg[1] == Point2{3, 3} && seg[0] == Point2{-3, -3})));

    const Zonotope point(RationalVector{q("1/2"), 7}, RationalMatrix(2, 0));
    CHECK(vertices_2d(point, 0, 1) == std::vector<Point2>{Point2{q("1/2"), 7}});

    const Zonotope hexagon(RationalVector{0, 0}, RationalMatrix{{1, 0, 1}, {0, 1, 1}});
    CHECK(vertices_2d(hexagon, 0, 1).size() == 6);
}

TEST_CASE("vertices agree with the brute-force hull") {
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t p = std::uniform_int_distribution<std::size_t>(0, 10)(rng());
        const Zonotope z = random_zonotope(3, p);
        const auto expected = oracle::convex_hull(oracle::extreme_points(z, 0, 2));
        CHECK(oracle::same_cycle(vertices_2d(z, 0, 2), expected));
    }
}

TEST_CASE("linear abstraction") {
    const auto space = make_taylor_space(1);
    const Polynomial p = parse_polynomial("1 + 2*l1 + l1^2", space);
    const Box box{Interval::point(0), Interval(-1, 1)};
    const std::vector<std::size_t> vars{1};
    const LinearAbstraction a = linear_abstraction(p, vars, box);
    CHECK(a.affine == parse_polynomial("1 + 2*l1", space));
    CHECK(a.remainder == Interval(0, 1));

    const Polynomial mixed = parse_polynomial("t*l1 + t^2 - l1^3", space);
    const Box step{Interval(0, q("1/10")), Interval(-1, 1)};
    const LinearAbstraction b = linear_abstraction(mixed, vars, step);
    CHECK(b.affine == parse_polynomial("t*l1 + t^2", space));
    CHECK(b.remainder == Interval(-1, 1));

    const LinearAbstraction c = linear_abstraction(mixed, step);
    CHECK(c.affine == Polynomial(space));
    CHECK(c.remainder.contains(Interval(-1, 1)));
}

TEST_CASE("reach_discrete of a linear toy is exact") {
    const OdeSystem sys(xu(1, 1), {}, {"u1", "0"}, {}, q("1/10"));
    const Zonotope init(RationalVector{0, 0}, RationalMatrix::identity(2), {"x1", "u1"});
    const TaylorModel tm = trusted(sys, init, 2, {AffineIntervalFn::slope(0), AffineIntervalFn::slope(0)});
    for (auto dom : {AbstractionDomain::literal, AbstractionDomain::tight}) {
        const Zonotope z = reach_discrete(tm, dom);
        CHECK(z.c == RationalVector{0, 0});
        CHECK(z.G == RationalMatrix{{1, q("1/10")}, {0, 1}});
        CHECK(z.labels == std::vector<std::string>{"x1", "u1"});
    }
}

TEST_CASE("reach sets of a stationary field") {
    const OdeSystem zero(xu(2, 0), {}, {"0", "0"}, {}, q("1/10"));
    const Zonotope init(RationalVector{1, q("-1/2")}, RationalMatrix{{1, q("1/3")}, {0, 2}});
    const TaylorModel exact = trusted(zero, init, 2, {AffineIntervalFn::slope(0), AffineIntervalFn::slope(0)});
    CHECK(reach_discrete(exact).G == init.G);
    CHECK(reach_discrete(exact).c == init.c);
    CHECK(reach_interval(exact).G == init.G);
    CHECK(reach_interval(exact, TimeNormalization::literal).c == init.c);

    const OdeSystem scalar(xu(1, 0), {}, {"0"}, {}, q("1/10"));
    const TaylorModel loose = trusted(scalar, unit_box(1), 2, {AffineIntervalFn::slope(1)});
    const Zonotope tube = reach_interval(loose);
    CHECK(tube.c == RationalVector{0});
    CHECK(tube.G == RationalMatrix{{1, q("1/10")}});
    const Zonotope step = reach_discrete(loose);
    CHECK(step.G == RationalMatrix{{1, q("1/10")}});
}

TEST_CASE("reach preconditions") {
    const OdeSystem scalar(xu(1, 0), {}, {"0"}, {}, Rational(2));
    TaylorModel tm = trusted(scalar, unit_box(1), 1, {AffineIntervalFn::slope(0)});
    CHECK_THROWS_AS(reach_interval(tm, TimeNormalization::literal), DtTooLarge);
    CHECK_NOTHROW(reach_interval(tm, TimeNormalization::tight));
    tm.derivative_premise_ok = false;
    CHECK_THROWS_AS(reach_discrete(tm), InvalidTM);
    CHECK_THROWS_AS(reach_interval(tm), InvalidTM);
}

TEST_CASE("double integrator one-step structure") {
    const OdeSystem sys(xu(2, 1), {}, {"x2", "u1", "0"}, {}, q("1/10"));
    const TaylorModel tm = build_taylor_model(sys, unit_box(3), 2);
    const Zonotope z = reach_discrete(tm);
    REQUIRE(z.generators() == 6);
    const RationalMatrix phi{{1, q("1/10"), q("1/200")}, {0, 1, q("1/10")}, {0, 0, 1}};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(z.c[i] == 0);
        for (std::size_t j = 0; j < 3; ++j) CHECK(z.G(i, j) == phi(i, j));
        for (std::size_t j = 3; j < 6; ++j) CHECK(z.G(i, j) == (i + 3 == j ? tm.remainder[i].b.hi() / 10 : Rational(0)));
    }
}

TEST_CASE("reach sets contain simulated flows") {
    const OdeSystem jet(xu(2, 1), {}, {"-x2 - 3/2*x1^2 - 1/2*x1^3", "u1", "0"}, {}, q("1/10"));
    const Zonotope init = unit_box(3, q("3/10"));
    const TaylorModel tm = build_taylor_model(jet, init, 2);
    const Zonotope step = reach_discrete(tm);
    const Zonotope tube = reach_interval(tm);
    const auto step_hull = oracle::convex_hull(oracle::extreme_points(step, 0, 1));
    const auto tube_hull = oracle::convex_hull(oracle::extreme_points(tube, 0, 1));
    const Box tube_box = interval_hull(tube);
    const FloatField f(jet);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int s = 0; s < 20; ++s) {
        std::vector<double> lambda(3);
        for (auto& l : lambda) l = u(rng());
        const auto x0 = zonotope_point(init, lambda);
        const auto end = rk4(f, x0, {}, 0.1, 1000);
        CHECK(oracle::in_hull(step_hull, Point2{rationalize_dyadic(end[0]), rationalize_dyadic(end[1])}));
        for (int k = 1; k <= 10; ++k) {
            const auto mid = rk4(f, x0, {}, 0.01 * k, 100 * k);
            CHECK(oracle::in_hull(tube_hull, Point2{rationalize_dyadic(mid[0]), rationalize_dyadic(mid[1])}));
            for (std::size_t i = 0; i < 3; ++i) CHECK(tube_box[i].contains(rationalize_dyadic(mid[i])));
        }
    }
}
