#include "envcert/containment.hpp"

#include "envcert/error.hpp"

namespace envcert {

CheckResult certify(const Zonotope& inner, const Zonotope& outer, const ContainmentWitness& w) {
    const RationalMatrix& h = outer.G;
    const std::size_t n = outer.dim();
    if (inner.dim() != n) return CheckResult::fail("dimension mismatch: inner " + std::to_string(inner.dim()) +
                                                   ", outer " + std::to_string(n));
    if (w.hplus.rows() != h.cols() || w.hplus.cols() != n)
        return CheckResult::fail("H+ has the wrong shape");
    if (w.gamma.rows() != h.cols() || w.gamma.cols() != inner.generators())
        return CheckResult::fail("gamma has the wrong shape");
    if (w.beta.size() != h.cols()) return CheckResult::fail("beta has the wrong length");
    if (w.epsilon < 0) return CheckResult::fail("negative epsilon");

    if (h * w.hplus != RationalMatrix::identity(n)) return CheckResult::fail("H * H+ != I");
    if (h * w.beta != outer.c - inner.c) return CheckResult::fail("H * beta != b - c");

    const Rational residual = mat_inf_norm(h * w.gamma - inner.G);
    if (residual > w.epsilon)
        return CheckResult::fail("|H gamma - G| = " + to_string(residual) + " exceeds epsilon " +
                                 to_string(w.epsilon));

    const Rational norm = mat_inf_norm(hstack(w.gamma, RationalMatrix::column(w.beta)));
    const Rational budget = 1 - w.epsilon * mat_inf_norm(w.hplus);
    const std::string margins = "|[gamma beta]| = " + to_string(norm) + ", budget " + to_string(budget) +
                                ", epsilon " + to_string(w.epsilon);
    if (norm > budget) return CheckResult::fail(margins);
    return CheckResult::pass(margins);
}

CheckResult in_box(const Zonotope& z, const Box& box) {
    if (box.size() != z.dim()) throw DimensionMismatch("box has " + std::to_string(box.size()) +
                                                       " intervals, zonotope dimension " + std::to_string(z.dim()));
    const Box hull = interval_hull(z);
    Rational margin;
    bool first = true;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Rational m = min(Rational(hull[i].lo() - box[i].lo()), Rational(box[i].hi() - hull[i].hi()));
        if (first || m < margin) margin = m;
        first = false;
        if (!box[i].contains(hull[i]))
            return CheckResult::fail("row " + std::to_string(i) + ": hull [" + to_string(hull[i].lo()) + ", " +
                                     to_string(hull[i].hi()) + "] leaves box [" + to_string(box[i].lo()) + ", " +
                                     to_string(box[i].hi()) + "]");
    }
    return CheckResult::pass("margin " + to_string(margin));
}

}  // namespace envcert
