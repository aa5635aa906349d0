#include "envcert/error.hpp"
#include "envcert/interval.hpp"

#include <doctest.h>

#include <random>

using namespace envcert;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Interval iv(const char* lo, const char* hi) { return Interval(q(lo), q(hi)); }

}  // namespace

TEST_CASE("iv_arith") {
    CHECK(iv_arith(iv("0", "1"), iv("-1", "2"), IntervalOp::add) == iv("-1", "3"));
    CHECK(iv_arith(iv("-1", "1"), iv("-1", "1"), IntervalOp::mul) == iv("-1", "1"));
    CHECK(iv_arith(iv("1/2", "1"), iv("-2", "-1"), IntervalOp::mul) == iv("-2", "-1/2"));
    CHECK(iv_arith(iv("0", "1"), iv("-1", "2"), IntervalOp::sub) == iv("-2", "2"));
    CHECK_THROWS_AS(iv("1", "0"), DomainMismatch);
}

TEST_CASE("iv_power") {
    CHECK(iv_power(iv("-1", "1"), 2) == iv("0", "1"));
    CHECK(iv_power(iv("-1", "1"), 3) == iv("-1", "1"));
    CHECK(iv_power(iv("1/2", "2"), 2) == iv("1/4", "4"));
    CHECK(iv_power(iv("-3", "-1"), 2) == iv("1", "9"));
    CHECK(iv_power(iv("-3", "2"), 0) == iv("1", "1"));
}

TEST_CASE("mid_rad uses the full width") {
    auto [m1, r1] = mid_rad(iv("-1", "3"));
    CHECK(m1 == 1);
    CHECK(r1 == 4);
    auto [m2, r2] = mid_rad(iv("0", "0"));
    CHECK(m2 == 0);
    CHECK(r2 == 0);
    auto [m3, r3] = mid_rad(iv("-101020/100000000000", "101020/100000000000"));
    CHECK(m3 == 0);
    CHECK(r3 == q("202040/100000000000"));
}

TEST_CASE("iv_eval_poly") {
    const auto xs = make_space({{"x", VarRole::state}});
    CHECK(iv_eval_poly(parse_polynomial("x^2", xs), {iv("-1", "1")}) == iv("0", "1"));
    CHECK(iv_eval_poly(parse_polynomial("x - x", xs), {iv("0", "1")}) == iv("0", "0"));
    const auto s = make_space({{"t", VarRole::time}, {"l1", VarRole::parameter}, {"l2", VarRole::parameter}});
    CHECK(iv_eval_poly(parse_polynomial("l1*l2 + t", s), {iv("0", "1/10"), iv("-1", "1"), iv("-1", "1")}) ==
          iv("-1", "11/10"));
}

TEST_CASE("subdivision tightens and stays sound") {
    const auto xs = make_space({{"x", VarRole::state}});
    const Polynomial p = parse_polynomial("x - x^2", xs);
    const Interval coarse = iv_eval_poly(p, {iv("0", "1")});
    const Interval fine = iv_eval_poly(p, {iv("0", "1")}, 3);
    CHECK(coarse.contains(fine));
    CHECK(fine.contains(iv("0", "1/4")));
    CHECK(fine.hi() < coarse.hi());
}

TEST_CASE("affine_hull") {
    CHECK(affine_hull(AffineIntervalFn::slope(1), iv("0", "1/10")) == iv("-1/10", "1/10"));
    CHECK(affine_hull({iv("0", "0"), iv("0", "0")}, iv("0", "7")) == iv("0", "0"));
    CHECK(affine_hull({iv("-1", "1"), iv("0", "0")}, iv("0", "5")) == iv("-1", "1"));
    CHECK_THROWS_AS(affine_hull(AffineIntervalFn::slope(1), iv("-1", "1")), DomainMismatch);
}

TEST_CASE("interval evaluation is sound on random polynomials") {
    std::mt19937 rng(17);
    const auto s = make_space({{"a", VarRole::state}, {"b", VarRole::state}, {"c", VarRole::state}});
    std::uniform_int_distribution<int> small(-4, 4), den(1, 4), terms(1, 5), deg(0, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        Polynomial p(s);
        const int n = terms(rng);
        for (int k = 0; k < n; ++k) {
            Monomial m{static_cast<std::uint32_t>(deg(rng)), static_cast<std::uint32_t>(deg(rng)),
                       static_cast<std::uint32_t>(deg(rng))};
            Rational c(small(rng), den(rng));
            c.canonicalize();
            p.add_term(m, c);
        }
        Box box;
        for (int v = 0; v < 3; ++v) {
            Rational lo(small(rng), den(rng)), width(std::abs(small(rng)), den(rng));
            lo.canonicalize();
            width.canonicalize();
            box.emplace_back(lo, Rational(lo + width));
        }
        const Interval enc = iv_eval_poly(p, box);
        std::uniform_int_distribution<int> frac(0, 16);
        for (int k = 0; k < 100; ++k) {
            std::vector<Rational> pt;
            for (const auto& b : box) pt.push_back(Rational(b.lo() + (b.hi() - b.lo()) * Rational(frac(rng), 16)));
            if (!enc.contains(evaluate(p, pt))) {
                FAIL("enclosure misses a sample of " << p.to_string());
            }
        }
    }
}

TEST_CASE("even powers are tighter than products") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> n(-9, 9);
    for (int i = 0; i < 200; ++i) {
        Rational a(n(rng), 3), b(n(rng), 3);
        a.canonicalize();
        b.canonicalize();
        if (b < a) std::swap(a, b);
        const Interval x(a, b);
        const Interval sq = iv_power(x, 2), prod = x * x;
        CHECK(prod.contains(sq));
        if (sgn(a) < 0 && sgn(b) > 0) CHECK(sq != prod);
        const auto [mid, rad] = mid_rad(x);
        CHECK(Rational(mid - rad / 2) == a);
        CHECK(Rational(mid + rad / 2) == b);
    }
}
