#pragma once

#include "envcert/config.hpp"
#include "envcert/taylor.hpp"
#include "envcert/zonotope.hpp"

namespace envcert {

/// Zonotope enclosing the flow at t = dt from a valid Taylor model:
///   b = p(dt, 0) + mid(I(dt)) + mid(R)
///   H = [grad_l p(dt, 0), diag(rad(I(dt))/2), diag(rad(R)/2)]
/// where R bounds the terms of p of degree >= 2 in lambda. Zero columns are
/// dropped. Throws InvalidTM unless both premises were checked.
Zonotope reach_discrete(const TaylorModel& tm, AbstractionDomain domain = AbstractionDomain::literal,
                        unsigned subdivision_depth = 0);

/// Zonotope enclosing the whole tube over t in [0, dt]. The remainder R bounds
/// everything of p + I beyond its affine part at (t, lambda) = 0. In tight
/// mode the time generator g is applied as (dt/2) g around a shifted centre;
/// in literal mode g is used as is and dt must not exceed 1 (DtTooLarge).
Zonotope reach_interval(const TaylorModel& tm, TimeNormalization normalization = TimeNormalization::tight,
                        unsigned subdivision_depth = 0);

}  // namespace envcert
