#include "envcert/witness_search.hpp"

#include "envcert/error.hpp"
#include "envcert/rationalize.hpp"

namespace envcert {

namespace {

constexpr double infeasible_norm = 1.0 + 1e-6;

}  // namespace

LpWitnessResult lp_witness_search(const Zonotope& inner, const Zonotope& outer, const LpOptions& options) {
    const std::size_t n = outer.dim();
    if (inner.dim() != n) throw DimensionMismatch("containment of zonotopes of different dimension");
    const std::size_t po = outer.generators();
    const std::size_t pi = inner.generators();

    // Variables, all >= 0: gamma+ and gamma- (po x pi each, row-major),
    // beta+ and beta-, one slack per row-sum constraint, then s.
    const std::size_t g_plus = 0;
    const std::size_t g_minus = po * pi;
    const std::size_t b_plus = 2 * po * pi;
    const std::size_t b_minus = b_plus + po;
    const std::size_t slack = b_minus + po;
    const std::size_t s_var = slack + po;
    const std::size_t vars = s_var + 1;
    const std::size_t rows = n * pi + n + po;

    DenseMatrix a(rows, vars);
    std::vector<double> rhs(rows, 0.0);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < pi; ++j, ++row) {
            for (std::size_t k = 0; k < po; ++k) {
                const double h = to_double(outer.G(i, k));
                a(row, g_plus + k * pi + j) = h;
                a(row, g_minus + k * pi + j) = -h;
            }
            rhs[row] = to_double(inner.G(i, j));
        }
    }
    for (std::size_t i = 0; i < n; ++i, ++row) {
        for (std::size_t k = 0; k < po; ++k) {
            const double h = to_double(outer.G(i, k));
            a(row, b_plus + k) = h;
            a(row, b_minus + k) = -h;
        }
        rhs[row] = to_double(Rational(outer.c[i] - inner.c[i]));
    }
    for (std::size_t k = 0; k < po; ++k, ++row) {
        for (std::size_t j = 0; j < pi; ++j) {
            a(row, g_plus + k * pi + j) = 1.0;
            a(row, g_minus + k * pi + j) = 1.0;
        }
        a(row, b_plus + k) = 1.0;
        a(row, b_minus + k) = 1.0;
        a(row, slack + k) = 1.0;
        a(row, s_var) = -1.0;
    }
    std::vector<double> cost(vars, 0.0);
    cost[s_var] = 1.0;

    const LpResult lp = solve_lp(a, rhs, cost, options);
    LpWitnessResult out;
    if (lp.status == LpStatus::infeasible) {
        out.detail = "H gamma = G, H beta = b - c has no solution";
        return out;
    }
    if (lp.status == LpStatus::unbounded) throw NumericalFailure("witness LP reported unbounded");

    FloatWitness& w = out.witness;
    w.gamma = DenseMatrix(po, pi);
    w.beta.assign(po, 0.0);
    for (std::size_t k = 0; k < po; ++k) {
        for (std::size_t j = 0; j < pi; ++j)
            w.gamma(k, j) = lp.x[g_plus + k * pi + j] - lp.x[g_minus + k * pi + j];
        w.beta[k] = lp.x[b_plus + k] - lp.x[b_minus + k];
    }
    w.norm = lp.x[s_var];
    if (w.norm > infeasible_norm) {
        out.detail = "optimal |[gamma beta]| = " + std::to_string(w.norm) + " exceeds 1";
        return out;
    }
    out.found = true;
    out.detail = "optimal |[gamma beta]| = " + std::to_string(w.norm);
    return out;
}

ContainmentWitness exactify(const FloatWitness& w, const Zonotope& inner, const Zonotope& outer,
                            const RationalMatrix& hplus, RationalizeMode mode, std::uint64_t max_denominator) {
    const RationalMatrix& h = outer.G;
    if (h * hplus != RationalMatrix::identity(outer.dim())) throw RankDeficient("H+ is not a right inverse of H");
    if (w.gamma.rows != h.cols() || w.gamma.cols != inner.generators() || w.beta.size() != h.cols())
        throw DimensionMismatch("float witness shape does not match the zonotopes");

    ContainmentWitness out;
    out.hplus = hplus;
    out.gamma = RationalMatrix(w.gamma.rows, w.gamma.cols);
    for (std::size_t k = 0; k < w.gamma.rows; ++k)
        for (std::size_t j = 0; j < w.gamma.cols; ++j)
            out.gamma(k, j) = rationalize(w.gamma(k, j), mode, max_denominator);

    RationalVector beta;
    beta.reserve(w.beta.size());
    for (double v : w.beta) beta.push_back(rationalize(v, mode, max_denominator));
    const RationalVector defect = h * beta - (outer.c - inner.c);
    out.beta = beta - hplus * defect;
    out.epsilon = mat_inf_norm(h * out.gamma - inner.G);
    return out;
}

}  // namespace envcert
