#include "envcert/reach.hpp"

#include "envcert/error.hpp"

namespace envcert {

namespace {

void require_valid(const TaylorModel& tm) {
    if (!tm.valid()) throw InvalidTM("Taylor model premises have not both been checked");
    if (tm.remainder.size() != tm.dims()) throw InvalidTM("one remainder per dimension expected");
}

Box taylor_box(const TaylorModel& tm, const Interval& time) {
    Box box;
    for (const auto& v : tm.space->variables())
        box.push_back(v.role == VarRole::time ? time : Interval(Rational(-1), Rational(1)));
    return box;
}

/// Appends diag(values) as columns of `h`.
RationalMatrix append_diagonal(const RationalMatrix& h, const RationalVector& values) {
    return hstack(h, RationalMatrix::diagonal(values));
}

}  // namespace

Zonotope reach_discrete(const TaylorModel& tm, AbstractionDomain domain, unsigned subdivision_depth) {
    require_valid(tm);
    const std::size_t n = tm.dims();
    const auto params = tm.space->indices_with_role(VarRole::parameter);
    const std::size_t t = *tm.space->time_index();
    const Interval time =
        domain == AbstractionDomain::literal ? Interval(Rational(0), tm.dt) : Interval::point(tm.dt);
    const Box box = taylor_box(tm, time);

    RationalVector center(n);
    RationalMatrix linear(n, params.size());
    RationalVector half_rad_i(n), half_rad_r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const LinearAbstraction abs = linear_abstraction(tm.p[i], params, box, subdivision_depth);
        Rational constant(0);
        for (const auto& [m, c] : abs.affine.terms()) {
            const Rational value = c * pow(tm.dt, m[t]);
            bool is_constant = true;
            for (std::size_t j = 0; j < params.size(); ++j) {
                if (m[params[j]] == 1) {
                    linear(i, j) += value;
                    is_constant = false;
                }
            }
            if (is_constant) constant += value;
        }
        const MidRad ri = mid_rad(tm.remainder[i].at(tm.dt));
        const MidRad rr = mid_rad(abs.remainder);
        center[i] = constant + ri.mid + rr.mid;
        half_rad_i[i] = ri.rad / 2;
        half_rad_r[i] = rr.rad / 2;
    }
    RationalMatrix h = append_diagonal(append_diagonal(linear, half_rad_i), half_rad_r);
    return Zonotope(std::move(center), h.drop_zero_cols(), tm.init.labels);
}

Zonotope reach_interval(const TaylorModel& tm, TimeNormalization normalization, unsigned subdivision_depth) {
    require_valid(tm);
    if (normalization == TimeNormalization::literal && tm.dt > 1)
        throw DtTooLarge("literal time normalization needs dt <= 1, got " + to_string(tm.dt));
    const std::size_t n = tm.dims();
    const auto params = tm.space->indices_with_role(VarRole::parameter);
    const std::size_t t = *tm.space->time_index();
    const Interval step(Rational(0), tm.dt);
    const Box box = taylor_box(tm, step);
    const Interval unit(Rational(-1), Rational(1));

    RationalVector center(n);
    RationalMatrix time_gen(n, 1);
    RationalMatrix linear(n, params.size());
    RationalVector half_rad_i0(n), half_rad_r(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Split p into its affine part at the origin and the residue.
        Polynomial residue(tm.space);
        Rational constant(0), time_slope(0);
        for (const auto& [m, c] : tm.p[i].terms()) {
            const unsigned deg = total_degree(m);
            if (deg == 0) {
                constant += c;
            } else if (deg == 1 && m[t] == 1) {
                time_slope += c;
            } else if (deg == 1) {
                for (std::size_t j = 0; j < params.size(); ++j)
                    if (m[params[j]] == 1) linear(i, j) += c;
            } else {
                residue.add_term(m, c);
            }
        }
        const AffineIntervalFn& rem = tm.remainder[i];
        const MidRad slope = mid_rad(rem.b);
        const MidRad start = mid_rad(rem.a);
        // The mid(I(t)) terms cancel exactly; the radius grows as rad(b) t.
        const Interval growth = Rational(slope.rad / 2) * (step * unit);
        const Interval r = iv_eval_poly(residue, box, subdivision_depth) + growth;
        const MidRad rr = mid_rad(r);

        const Rational g = time_slope + slope.mid;
        center[i] = constant + start.mid + rr.mid;
        if (normalization == TimeNormalization::tight) {
            center[i] += g * tm.dt / 2;
            time_gen(i, 0) = g * tm.dt / 2;
        } else {
            time_gen(i, 0) = g;
        }
        half_rad_i0[i] = start.rad / 2;
        half_rad_r[i] = rr.rad / 2;
    }
    RationalMatrix h = append_diagonal(append_diagonal(hstack(time_gen, linear), half_rad_i0), half_rad_r);
    return Zonotope(std::move(center), h.drop_zero_cols(), tm.init.labels);
}

}  // namespace envcert
