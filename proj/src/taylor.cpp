#include "envcert/taylor.hpp"

#include "envcert/error.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace envcert {

namespace {

/// Runs body(i) for i in [0, n) on up to `threads` workers.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::future<void>> running;
    for (std::size_t i = 0; i < n; ++i) {
        if (running.size() >= threads) {
            running.front().get();
            running.erase(running.begin());
        }
        running.push_back(std::async(std::launch::async, body, i));
    }
    for (auto& f : running) f.get();
}

}  // namespace

OdeSystem::OdeSystem(std::vector<Variable> dims, std::vector<std::string> disturbances, std::vector<std::string> rhs,
                     RationalVector disturbance_bounds, Rational dt, unsigned degree_cap)
    : w_bounds_(std::move(disturbance_bounds)), dt_(std::move(dt)) {
    std::vector<Variable> vars = dims;
    for (const auto& w : disturbances) vars.push_back({w, VarRole::disturbance});
    space_ = make_space(std::move(vars), degree_cap);
    if (rhs.size() != dims.size())
        throw DimensionMismatch("expected " + std::to_string(dims.size()) + " right-hand sides, got " +
                                std::to_string(rhs.size()));
    for (const auto& text : rhs) f_.push_back(parse_polynomial(text, space_));
    validate();
}

OdeSystem::OdeSystem(VarSpacePtr space, PolyVector f, RationalVector disturbance_bounds, Rational dt)
    : space_(std::move(space)), f_(std::move(f)), w_bounds_(std::move(disturbance_bounds)), dt_(std::move(dt)) {
    validate();
}

void OdeSystem::validate() {
    dim_names_.clear();
    disturbance_names_.clear();
    for (const auto& v : space_->variables()) {
        if (v.role == VarRole::disturbance)
            disturbance_names_.push_back(v.name);
        else if (v.role == VarRole::state || v.role == VarRole::input)
            dim_names_.push_back(v.name);
        else
            throw DomainMismatch("ODE variable '" + v.name + "' must be a state, input or disturbance");
    }
    if (f_.size() != dim_names_.size()) throw DimensionMismatch("one right-hand side per state/input dimension");
    for (const auto& fi : f_)
        if (!(*fi.space() == *space_)) throw DomainMismatch("right-hand side over a foreign variable space");
    if (sgn(dt_) <= 0) throw DomainMismatch("sampling period must be positive");
    if (w_bounds_.size() != disturbance_names_.size())
        throw DimensionMismatch("one disturbance bound per disturbance variable");
    for (const auto& w : w_bounds_)
        if (sgn(w) < 0) throw DomainMismatch("disturbance bounds must be non-negative");
}

VarSpacePtr make_taylor_space(std::size_t params, unsigned degree_cap) {
    std::vector<Variable> vars{{"t", VarRole::time}};
    for (std::size_t j = 0; j < params; ++j) vars.push_back({"l" + std::to_string(j + 1), VarRole::parameter});
    return make_space(std::move(vars), degree_cap);
}

PolyVector zonotope_polynomials(const Zonotope& z, const VarSpacePtr& taylor_space) {
    const auto params = taylor_space->indices_with_role(VarRole::parameter);
    if (params.size() < z.generators()) throw DimensionMismatch("not enough parameters for the zonotope generators");
    PolyVector h;
    for (std::size_t i = 0; i < z.dim(); ++i) {
        Polynomial hi = Polynomial::constant(taylor_space, z.c[i]);
        for (std::size_t j = 0; j < z.generators(); ++j) {
            Monomial m(taylor_space->size(), 0);
            m[params[j]] = 1;
            hi.add_term(m, z.G(i, j));
        }
        h.push_back(std::move(hi));
    }
    return h;
}

PolyVector picard_iterate(const OdeSystem& sys, const PolyVector& h, unsigned k) {
    if (h.size() != sys.dims()) throw DimensionMismatch("initial map and ODE dimensions differ");
    if (h.empty()) return h;
    const VarSpacePtr& target = h.front().space();
    const auto t = target->time_index();
    if (!t) throw DomainMismatch("Picard iteration needs a time variable");
    for (const auto& hi : h) {
        require_same_space(hi, h.front());
        for (const auto& [m, c] : hi.terms())
            if (m[*t] != 0) throw DomainMismatch("initial map must not depend on time");
    }

    PolyVector p = h;
    const auto& fspace = *sys.space();
    for (unsigned iter = 0; iter < k; ++iter) {
        std::vector<Polynomial> images;
        std::size_t dim = 0;
        for (const auto& v : fspace.variables()) {
            if (v.role == VarRole::disturbance)
                images.push_back(Polynomial(target));
            else
                images.push_back(p[dim++]);
        }
        PolyVector next;
        for (std::size_t i = 0; i < sys.dims(); ++i)
            next.push_back(h[i] + integrate_time(compose(sys.f()[i], images, target)));
        p = std::move(next);
    }
    return p;
}

DefectModel::DefectModel(const OdeSystem& sys, const PolyVector& p, unsigned threads)
    : dims_(sys.dims()), dt_(sys.dt()), w_bounds_(sys.disturbance_bounds()), threads_(threads) {
    if (p.size() != sys.dims()) throw DomainMismatch("Taylor model and ODE dimensions differ");
    if (p.empty()) throw DomainMismatch("empty Taylor model");
    const auto& tm_space = *p.front().space();
    if (!tm_space.time_index()) throw DomainMismatch("Taylor model polynomials need a time variable");
    params_ = tm_space.indices_with_role(VarRole::parameter).size();

    std::vector<Variable> vars = tm_space.variables();
    for (std::size_t i = 0; i < dims_; ++i) vars.push_back({"e" + std::to_string(i + 1), VarRole::error});
    for (const auto& w : sys.disturbance_names()) vars.push_back({w, VarRole::disturbance});
    space_ = make_space(std::move(vars), sys.space()->degree_cap());

    std::vector<Polynomial> images;
    std::size_t dim = 0;
    for (const auto& v : sys.space()->variables()) {
        if (v.role == VarRole::disturbance) {
            images.push_back(Polynomial::variable(space_, v.name));
        } else {
            images.push_back(embed(p[dim], space_) + Polynomial::variable(space_, "e" + std::to_string(dim + 1)));
            ++dim;
        }
    }
    const std::string time_name = tm_space[*tm_space.time_index()].name;
    defects_.assign(dims_, Polynomial(space_));
    parallel_for(dims_, threads_, [&](std::size_t i) {
        defects_[i] = compose(sys.f()[i], images, space_) - embed(derivative(p[i], time_name), space_);
    });
}

std::vector<Interval> DefectModel::enclose(const std::vector<AffineIntervalFn>& remainder, DisturbanceMode mode,
                                           unsigned subdivision_depth) const {
    if (remainder.size() != dims_) throw DimensionMismatch("one remainder per dimension");
    const Interval step(Rational(0), dt_);
    Box box;
    box.reserve(space_->size());
    for (const auto& v : space_->variables()) {
        switch (v.role) {
            case VarRole::time: box.push_back(step); break;
            case VarRole::parameter: box.emplace_back(Rational(-1), Rational(1)); break;
            default: break;
        }
    }
    for (std::size_t i = 0; i < dims_; ++i) box.push_back(affine_hull(remainder[i], step));
    for (const auto& w : w_bounds_)
        box.push_back(mode == DisturbanceMode::robust ? Interval::symmetric(w) : Interval::point(0));
    if (box.size() != space_->size()) throw DomainMismatch("defect space layout");

    std::vector<Interval> out(dims_);
    parallel_for(dims_, threads_, [&](std::size_t i) { out[i] = iv_eval_poly(defects_[i], box, subdivision_depth); });
    return out;
}

CheckResult DefectModel::check(const std::vector<AffineIntervalFn>& remainder, DisturbanceMode mode,
                               unsigned subdivision_depth, std::vector<bool>* failing) const {
    const auto enclosures = enclose(remainder, mode, subdivision_depth);
    if (failing) failing->assign(dims_, false);
    std::ostringstream detail;
    bool ok = true;
    std::optional<Rational> min_margin;
    for (std::size_t i = 0; i < dims_; ++i) {
        const Interval& slope = remainder[i].b;
        const Interval& d = enclosures[i];
        const Rational margin = min(Rational(d.lo() - slope.lo()), Rational(slope.hi() - d.hi()));
        if (!min_margin || margin < *min_margin) min_margin = margin;
        if (!slope.strictly_contains(d)) {
            ok = false;
            if (failing) (*failing)[i] = true;
            detail << "dim " << i + 1 << ": defect [" << to_string(d.lo()) << ", " << to_string(d.hi())
                   << "] not strictly inside [" << to_string(slope.lo()) << ", " << to_string(slope.hi()) << "]; ";
        }
    }
    if (ok) return CheckResult::pass("min margin " + to_string(*min_margin));
    std::string text = detail.str();
    text.resize(text.size() - 2);
    return CheckResult::fail(text);
}

CheckResult check_derivative_premise(const TaylorModel& tm, const OdeSystem& sys, DisturbanceMode mode,
                                     unsigned subdivision_depth, unsigned threads) {
    if (tm.dims() != sys.dims()) throw DomainMismatch("Taylor model and ODE dimensions differ");
    if (tm.dt != sys.dt()) return CheckResult::fail("Taylor model horizon differs from the sampling period");
    return DefectModel(sys, tm.p, threads).check(tm.remainder, mode, subdivision_depth);
}

CheckResult check_initial_premise(const TaylorModel& tm, const Zonotope& x0) {
    if (x0.dim() != tm.dims()) return CheckResult::fail("initial set dimension differs from the Taylor model");
    if (tm.remainder.size() != tm.dims()) return CheckResult::fail("remainder count differs from dimension count");
    for (std::size_t i = 0; i < tm.dims(); ++i)
        if (!tm.remainder[i].at(Rational(0)).contains(Rational(0)))
            return CheckResult::fail("0 not in I(0) for dim " + std::to_string(i + 1));

    const auto params = tm.space->indices_with_role(VarRole::parameter).size();
    const auto space = make_taylor_space(std::max(params, x0.generators()), tm.space->degree_cap());
    const PolyVector h = zonotope_polynomials(x0, space);
    for (std::size_t i = 0; i < tm.dims(); ++i) {
        const Polynomial at_zero = substitute(tm.p[i], std::map<std::string, Rational>{{"t", Rational(0)}});
        const Polynomial diff = embed(at_zero, space) - h[i];
        if (!diff.is_zero())
            return CheckResult::fail("p(0, l) differs from the initial zonotope in dim " + std::to_string(i + 1) +
                                     " by " + diff.to_string());
    }
    return CheckResult::pass("p(0, l) = c + G l and 0 in I(0)");
}

TaylorModel synthesize_remainder(const OdeSystem& sys, const PolyVector& p, const Zonotope& init, unsigned order,
                                 const RemainderSearch& search) {
    const DefectModel defects(sys, p, search.threads);
    RationalVector slopes(sys.dims(), search.initial_slope);
    std::vector<AffineIntervalFn> remainder(sys.dims());
    std::vector<bool> failing;
    CheckResult last;
    bool found = false;
    for (unsigned attempt = 0; attempt <= search.max_doublings; ++attempt) {
        for (std::size_t i = 0; i < slopes.size(); ++i) remainder[i] = AffineIntervalFn::slope(slopes[i]);
        last = defects.check(remainder, search.mode, search.subdivision_depth, &failing);
        if (last.passed()) {
            found = true;
            break;
        }
        for (std::size_t i = 0; i < slopes.size(); ++i)
            if (failing[i]) slopes[i] *= 2;
    }
    if (!found)
        throw NoValidRemainder("no pure-slope remainder after " + std::to_string(search.max_doublings) +
                               " doublings (" + last.detail + "); raise the Picard order or shrink dt");

    TaylorModel tm{p.front().space(), p, remainder, sys.dt(), init, order};
    tm.initial_premise_ok = check_initial_premise(tm, init).passed();
    tm.derivative_premise_ok = defects.check(tm.remainder, search.mode, search.subdivision_depth).passed();
    return tm;
}

TaylorModel build_taylor_model(const OdeSystem& sys, const Zonotope& init, unsigned order,
                               const RemainderSearch& search) {
    if (init.dim() != sys.dims()) throw DimensionMismatch("initial zonotope dimension differs from the ODE");
    const auto space = make_taylor_space(init.generators(), sys.space()->degree_cap());
    return synthesize_remainder(sys, picard_iterate(sys, zonotope_polynomials(init, space), order), init, order,
                                search);
}

}  // namespace envcert
