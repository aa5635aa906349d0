#include "envcert/error.hpp"
#include "envcert/pipeline.hpp"
#include "envcert/witness_search.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace envcert;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Zonotope scaled_box(std::size_t n, const Rational& s) {
    return Zonotope(RationalVector(n, Rational(0)), s * RationalMatrix::identity(n));
}

DenseMatrix dense(std::initializer_list<std::initializer_list<double>> rows) {
    DenseMatrix m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

}  // namespace

TEST_CASE("simplex on small programs") {
    // min -x - y  s.t.  x + y + s1 = 4, x + 3y + s2 = 6
    const LpResult r = solve_lp(dense({{1, 1, 1, 0}, {1, 3, 0, 1}}), {4, 6}, {-1, -1, 0, 0});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == doctest::Approx(-4));

    const LpResult infeasible = solve_lp(dense({{1, 1}}), {-1}, {1, 1});
    CHECK(infeasible.status == LpStatus::infeasible);

    const LpResult unbounded = solve_lp(dense({{1, -1}}), {1}, {0, -1});
    CHECK(unbounded.status == LpStatus::unbounded);

    LpOptions tight;
    tight.max_iter = 0;
    CHECK_THROWS_AS(solve_lp(dense({{1, 1, 1, 0}, {1, 3, 0, 1}}), {4, 6}, {-1, -1, 0, 0}, tight), NumericalFailure);
}

TEST_CASE("LP witness examples") {
    const auto half = lp_witness_search(scaled_box(2, q("1/2")), scaled_box(2, Rational(1)));
    REQUIRE(half.found);
    CHECK(half.witness.norm == doctest::Approx(0.5));

    const auto same = lp_witness_search(scaled_box(3, Rational(1)), scaled_box(3, Rational(1)));
    REQUIRE(same.found);
    CHECK(same.witness.norm == doctest::Approx(1.0));

    const auto big = lp_witness_search(scaled_box(2, Rational(2)), scaled_box(2, Rational(1)));
    CHECK_FALSE(big.found);
    CHECK(big.witness.norm == doctest::Approx(2.0));
}

TEST_CASE("exactify repairs the centre") {
    const Zonotope inner(RationalVector{q("1/10"), q("-1/3")}, RationalMatrix{{q("1/3"), 0}, {q("1/7"), q("1/5")}});
    const Zonotope outer(RationalVector{0, 0}, RationalMatrix{{1, q("1/2"), 0}, {0, 1, q("1/4")}});
    const auto lp = lp_witness_search(inner, outer);
    REQUIRE(lp.found);
    const RationalMatrix hplus = right_inverse(outer.G);
    const ContainmentWitness w = exactify(lp.witness, inner, outer, hplus);
    CHECK(outer.G * w.beta == outer.c - inner.c);
    CHECK(w.epsilon >= 0);
    CHECK(w.epsilon < q("1/100000"));
    CHECK(certify(inner, outer, w).passed());

    const ContainmentWitness d = exactify(lp.witness, inner, outer, hplus, RationalizeMode::dyadic);
    CHECK(outer.G * d.beta == outer.c - inner.c);
    CHECK(certify(inner, outer, d).passed());
}

TEST_CASE("certify examples") {
    const Zonotope inner = scaled_box(2, q("1/2"));
    const Zonotope outer = scaled_box(2, Rational(1));
    ContainmentWitness w{q("1/2") * RationalMatrix::identity(2), RationalVector{0, 0}, RationalMatrix::identity(2)};
    CHECK(certify(inner, outer, w).passed());

    auto shifted = w;
    shifted.beta = RationalVector{q("1/2"), 0};
    CHECK(certify(inner, outer, shifted).verdict == Verdict::fail);

    const Zonotope moved(RationalVector{q("-1/2"), 0}, inner.G);
    CHECK(certify(moved, outer, shifted).passed());

    auto fabricated = w;
    fabricated.epsilon = Rational(3);
    CHECK(certify(inner, outer, fabricated).verdict == Verdict::fail);

    auto loose = w;
    loose.gamma = RationalMatrix::identity(2);
    loose.epsilon = Rational(0);
    CHECK(certify(scaled_box(2, Rational(1)), outer, loose).passed());
    loose.beta = RationalVector{q("1/1000000"), 0};
    CHECK(certify(Zonotope(RationalVector{q("-1/1000000"), 0}, outer.G), outer, loose).verdict == Verdict::fail);

    auto bad_inverse = w;
    bad_inverse.hplus = q("1/2") * RationalMatrix::identity(2);
    CHECK(certify(inner, outer, bad_inverse).verdict == Verdict::fail);

    auto bad_shape = w;
    bad_shape.gamma = RationalMatrix::identity(3);
    CHECK(certify(inner, outer, bad_shape).verdict == Verdict::fail);

    auto near = w;
    near.gamma(0, 0) = q("1/2") + q("1/1000");
    near.epsilon = q("1/1000");
    CHECK(certify(inner, outer, near).passed());
    near.epsilon = q("1/2000");
    CHECK(certify(inner, outer, near).verdict == Verdict::fail);
}

TEST_CASE("in_box examples") {
    const Zonotope z(RationalVector{0, 1}, RationalMatrix{{1, q("1/2")}, {0, q("1/2")}});
    CHECK(in_box(z, Box{Interval(q("-3/2"), q("3/2")), Interval(q("1/2"), q("3/2"))}).passed());
    CHECK(in_box(z, Box{Interval(q("-3/2"), q("3/2")), Interval(q("1/2"), q("7/5"))}).verdict == Verdict::fail);
    CHECK_THROWS_AS(in_box(z, Box{Interval(-1, 1)}), DimensionMismatch);
}

TEST_CASE("prove_containment verdicts") {
    const Config cfg;
    CHECK(prove_containment(scaled_box(2, q("1/2")), scaled_box(2, Rational(1)), cfg).result.passed());
    CHECK(prove_containment(scaled_box(2, q("1/2")), scaled_box(2, Rational(1)), cfg).witness.has_value());

    const auto outside = prove_containment(scaled_box(2, Rational(2)), scaled_box(2, Rational(1)), cfg);
    CHECK(outside.result.verdict == Verdict::fail);
    CHECK_FALSE(outside.witness.has_value());

    const Zonotope flat(RationalVector{0, 0}, RationalMatrix{{1, 1}, {1, 1}});
    const Zonotope segment(RationalVector{0, 0}, RationalMatrix{{q("1/2")}, {q("1/2")}});
    const auto degenerate = prove_containment(segment, flat, cfg);
    CHECK(degenerate.result.verdict == Verdict::unknown);

    Config inflated;
    inflated.inflate_outer = q("1/100");
    const Zonotope padded(RationalVector{0, 0}, hstack(flat.G, q("1/100") * RationalMatrix::identity(2)));
    CHECK(prove_containment(segment, padded, inflated).result.passed());
}

TEST_CASE("certified containment agrees with the polygon oracle") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    auto r = [&] {
        Rational v(num(rng), den(rng));
        v.canonicalize();
        return v;
    };
    const Config cfg;
    int agreed = 0;
    for (int trial = 0; trial < 100; ++trial) {
        RationalMatrix h(2, 3), g(2, 2);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 3; ++j) h(i, j) = r();
            for (std::size_t j = 0; j < 2; ++j) g(i, j) = r() / 4;
        }
        const Zonotope outer(RationalVector{0, 0}, h);
        const Zonotope inner(RationalVector{r() / 8, r() / 8}, g);
        const auto attempt = prove_containment(inner, outer, cfg);
        if (attempt.result.passed()) CHECK(oracle::contained_2d(inner, outer));
        if (attempt.result.verdict == Verdict::fail && !oracle::contained_2d(inner, outer)) ++agreed;
        if (attempt.result.passed()) ++agreed;
    }
    CHECK(agreed > 50);
}
