#pragma once

#include "envcert/check.hpp"
#include "envcert/config.hpp"
#include "envcert/interval.hpp"
#include "envcert/matrix.hpp"
#include "envcert/polynomial.hpp"
#include "envcert/zonotope.hpp"

#include <string>
#include <vector>

namespace envcert {

/// Polynomial ODE x' = f(x, w) over the extended state (states followed by
/// held inputs with u' = 0). Disturbances w enter f as variables bounded by
/// |w_i| <= W_i.
class OdeSystem {
public:
    /// `dims` names the extended state in order; `f` holds one right-hand side
    /// per dim over a space made of `dims` and `disturbances`.
    OdeSystem(std::vector<Variable> dims, std::vector<std::string> disturbances, std::vector<std::string> rhs,
              RationalVector disturbance_bounds, Rational dt, unsigned degree_cap = default_degree_cap);
    OdeSystem(VarSpacePtr space, PolyVector f, RationalVector disturbance_bounds, Rational dt);

    const VarSpacePtr& space() const noexcept { return space_; }
    const PolyVector& f() const noexcept { return f_; }
    std::size_t dims() const noexcept { return f_.size(); }
    const std::vector<std::string>& dim_names() const noexcept { return dim_names_; }
    const std::vector<std::string>& disturbance_names() const noexcept { return disturbance_names_; }
    const RationalVector& disturbance_bounds() const noexcept { return w_bounds_; }
    const Rational& dt() const noexcept { return dt_; }

private:
    void validate();

    VarSpacePtr space_;
    PolyVector f_;
    std::vector<std::string> dim_names_;
    std::vector<std::string> disturbance_names_;
    RationalVector w_bounds_;
    Rational dt_;
};

/// (t, l1..lp) space for Taylor-model polynomials.
VarSpacePtr make_taylor_space(std::size_t params, unsigned degree_cap = default_degree_cap);

/// h(lambda) = c + G*lambda over a Taylor-model space with G.cols() params.
PolyVector zonotope_polynomials(const Zonotope& z, const VarSpacePtr& taylor_space);

/// Flow enclosure x(t) in p(t, lambda) + I(t) for t in [0, dt], |lambda| <= 1.
struct TaylorModel {
    VarSpacePtr space;
    PolyVector p;
    std::vector<AffineIntervalFn> remainder;
    Rational dt;
    Zonotope init;
    unsigned order = 0;
    bool initial_premise_ok = false;
    bool derivative_premise_ok = false;

    bool valid() const noexcept { return initial_premise_ok && derivative_premise_ok; }
    std::size_t dims() const noexcept { return p.size(); }
};

/// p_0 = h, p_{k+1} = h + integral_0^t f(p_k(s)) ds, with disturbances at 0.
PolyVector picard_iterate(const OdeSystem& sys, const PolyVector& h, unsigned k);

/// The defect d_i(t, lambda, e, w) = f_i(p + e, w) - dp_i/dt, expanded once
/// and re-evaluated for different remainder candidates.
class DefectModel {
public:
    DefectModel(const OdeSystem& sys, const PolyVector& p, unsigned threads = 1);

    const VarSpacePtr& space() const noexcept { return space_; }
    const PolyVector& defects() const noexcept { return defects_; }

    /// Enclosure of every defect over t in [0, dt], lambda in [-1, 1]^p, e_j
    /// in the hull of I_j over [0, dt], and w in [-W, W] (robust) or 0.
    std::vector<Interval> enclose(const std::vector<AffineIntervalFn>& remainder, DisturbanceMode mode,
                                  unsigned subdivision_depth = 0) const;

    /// Strict inclusion of each defect enclosure in the constant derivative
    /// interval b_i of I_i(t) = a_i + b_i t.
    CheckResult check(const std::vector<AffineIntervalFn>& remainder, DisturbanceMode mode,
                      unsigned subdivision_depth = 0, std::vector<bool>* failing = nullptr) const;

private:
    VarSpacePtr space_;
    PolyVector defects_;
    std::size_t params_;
    std::size_t dims_;
    Rational dt_;
    RationalVector w_bounds_;
    unsigned threads_;
};

CheckResult check_derivative_premise(const TaylorModel& tm, const OdeSystem& sys, DisturbanceMode mode,
                                     unsigned subdivision_depth = 0, unsigned threads = 1);

/// p(0, lambda) == c + G*lambda identically and 0 in I(0).
CheckResult check_initial_premise(const TaylorModel& tm, const Zonotope& x0);

struct RemainderSearch {
    Rational initial_slope = pow10(-6);
    unsigned max_doublings = 80;
    DisturbanceMode mode = DisturbanceMode::nominal;
    unsigned subdivision_depth = 0;
    unsigned threads = 1;
};

/// Searches pure-slope remainders [-s_i t, s_i t], doubling the failing
/// components until the derivative premise holds. The returned model has
/// both premises re-checked. Throws NoValidRemainder.
TaylorModel synthesize_remainder(const OdeSystem& sys, const PolyVector& p, const Zonotope& init,
                                 unsigned order, const RemainderSearch& search = {});

/// Picard iterate of the given order from `init` followed by remainder
/// synthesis.
TaylorModel build_taylor_model(const OdeSystem& sys, const Zonotope& init, unsigned order,
                               const RemainderSearch& search = {});

}  // namespace envcert
