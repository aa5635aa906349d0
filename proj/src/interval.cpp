#include "envcert/interval.hpp"

#include "envcert/error.hpp"

#include <optional>

namespace envcert {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw DomainMismatch("interval with lower bound " + to_string(lo_) + " above upper bound " +
                                        to_string(hi_));
}

Interval iv_arith(const Interval& a, const Interval& b, IntervalOp op) {
    switch (op) {
        case IntervalOp::add: return Interval(Rational(a.lo() + b.lo()), Rational(a.hi() + b.hi()));
        case IntervalOp::sub: return Interval(Rational(a.lo() - b.hi()), Rational(a.hi() - b.lo()));
        case IntervalOp::mul: {
            const Rational p1 = a.lo() * b.lo();
            const Rational p2 = a.lo() * b.hi();
            const Rational p3 = a.hi() * b.lo();
            const Rational p4 = a.hi() * b.hi();
            return Interval(min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4)));
        }
    }
    throw DomainMismatch("unknown interval operation");
}

Interval operator+(const Interval& a, const Interval& b) { return iv_arith(a, b, IntervalOp::add); }
Interval operator-(const Interval& a, const Interval& b) { return iv_arith(a, b, IntervalOp::sub); }
Interval operator*(const Interval& a, const Interval& b) { return iv_arith(a, b, IntervalOp::mul); }

Interval operator*(const Rational& s, const Interval& a) {
    if (sgn(s) >= 0) return Interval(Rational(s * a.lo()), Rational(s * a.hi()));
    return Interval(Rational(s * a.hi()), Rational(s * a.lo()));
}

Interval operator-(const Interval& a) { return Interval(Rational(-a.hi()), Rational(-a.lo())); }

Interval iv_power(const Interval& a, unsigned k) {
    if (k == 0) return Interval::point(1);
    const Rational lo_k = pow(a.lo(), k);
    const Rational hi_k = pow(a.hi(), k);
    if (k % 2 == 1) return Interval(lo_k, hi_k);
    if (sgn(a.lo()) >= 0) return Interval(lo_k, hi_k);
    if (sgn(a.hi()) <= 0) return Interval(hi_k, lo_k);
    return Interval(Rational(0), max(lo_k, hi_k));
}

Interval hull(const Interval& a, const Interval& b) { return Interval(min(a.lo(), b.lo()), max(a.hi(), b.hi())); }

MidRad mid_rad(const Interval& a) { return {Rational((a.lo() + a.hi()) / 2), Rational(a.hi() - a.lo())}; }

namespace {

Interval eval_once(const Polynomial& p, const Box& domain) {
    const std::size_t n = domain.size();
    std::vector<std::vector<std::optional<Interval>>> powers(n);
    auto power = [&](std::size_t i, std::uint32_t k) -> const Interval& {
        auto& cache = powers[i];
        if (cache.size() <= k) cache.resize(k + 1);
        if (!cache[k]) cache[k] = iv_power(domain[i], k);
        return *cache[k];
    };

    Rational lo(0), hi(0);
    for (const auto& [m, c] : p.terms()) {
        Interval term = Interval::point(c);
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            term = term * power(i, m[i]);
        }
        lo += term.lo();
        hi += term.hi();
    }
    return Interval(lo, hi);
}

Interval eval_subdivided(const Polynomial& p, Box& domain, const std::vector<std::size_t>& vars, std::size_t next,
                         unsigned pieces) {
    if (next == vars.size()) return eval_once(p, domain);
    const std::size_t v = vars[next];
    const Interval whole = domain[v];
    const Rational width = (whole.hi() - whole.lo()) / pieces;
    std::optional<Interval> acc;
    for (unsigned k = 0; k < pieces; ++k) {
        const Rational lo = whole.lo() + width * k;
        const Rational hi = k + 1 == pieces ? whole.hi() : Rational(whole.lo() + width * (k + 1));
        domain[v] = Interval(lo, hi);
        Interval part = eval_subdivided(p, domain, vars, next + 1, pieces);
        acc = acc ? hull(*acc, part) : part;
    }
    domain[v] = whole;
    return *acc;
}

}  // namespace

Interval iv_eval_poly(const Polynomial& p, const Box& domain, unsigned subdivision_depth) {
    if (domain.size() != p.space()->size()) throw DomainMismatch("box does not cover the polynomial's variables");
    if (subdivision_depth == 0) return eval_once(p, domain);

    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (domain[i].is_point()) continue;
        for (const auto& [m, c] : p.terms()) {
            if (m[i] > 0) {
                vars.push_back(i);
                break;
            }
        }
    }
    Box work = domain;
    return eval_subdivided(p, work, vars, 0, 1u << subdivision_depth);
}

Interval AffineIntervalFn::at(const Rational& t) const { return a + t * b; }

Interval affine_hull(const AffineIntervalFn& f, const Interval& t_range) {
    if (sgn(t_range.lo()) < 0) throw DomainMismatch("affine_hull needs a non-negative time range");
    return f.a + f.b * t_range;
}

}  // namespace envcert
