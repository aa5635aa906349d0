#include "envcert/lp.hpp"

#include "envcert/error.hpp"

#include <cmath>
#include <limits>

namespace envcert {

namespace {

constexpr unsigned degenerate_run_limit = 50;

class Tableau {
public:
    Tableau(std::size_t m, std::size_t n) : m_(m), width_(n + 1), t_((m + 1) * (n + 1), 0.0), basis_(m) {}

    double& at(std::size_t r, std::size_t c) { return t_[r * width_ + c]; }
    double at(std::size_t r, std::size_t c) const { return t_[r * width_ + c]; }
    double& rhs(std::size_t r) { return at(r, width_ - 1); }
    double& cost(std::size_t c) { return at(m_, c); }
    std::size_t cols() const { return width_ - 1; }
    std::size_t rows() const { return m_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double p = at(pr, pc);
        for (std::size_t c = 0; c < width_; ++c) at(pr, c) /= p;
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < width_; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        basis_[pr] = pc;
    }

    /// Prices out the basic columns from the cost row.
    void canonicalize_costs() {
        for (std::size_t r = 0; r < m_; ++r) {
            const double f = cost(basis_[r]);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < width_; ++c) at(m_, c) -= f * at(r, c);
        }
    }

    /// Runs the simplex on columns [0, allowed). Returns false if unbounded.
    bool optimize(std::size_t allowed, const LpOptions& opt, unsigned& iterations) {
        unsigned degenerate = 0;
        for (;;) {
            const bool bland = degenerate >= degenerate_run_limit;
            std::size_t enter = allowed;
            double best = -opt.tol;
            for (std::size_t c = 0; c < allowed; ++c) {
                if (cost(c) < best) {
                    enter = c;
                    if (bland) break;
                    best = cost(c);
                }
            }
            if (enter == allowed) return true;

            std::size_t leave = m_;
            double ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                const double a = at(r, enter);
                if (a <= opt.tol) continue;
                const double q = rhs(r) / a;
                if (q < ratio - opt.tol || (q <= ratio + opt.tol && leave < m_ && basis_[r] < basis_[leave])) {
                    if (q < ratio) ratio = q;
                    leave = r;
                }
            }
            if (leave == m_) return false;
            if (++iterations > opt.max_iter)
                throw NumericalFailure("simplex exceeded " + std::to_string(opt.max_iter) + " iterations");
            degenerate = ratio <= opt.tol ? degenerate + 1 : 0;
            pivot(leave, enter);
        }
    }

private:
    std::size_t m_;
    std::size_t width_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const DenseMatrix& a, const std::vector<double>& b, const std::vector<double>& c,
                  const LpOptions& options) {
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    if (b.size() != m || c.size() != n) throw DimensionMismatch("LP data shapes disagree");
    for (double v : a.data)
        if (!std::isfinite(v)) throw NotFinite("non-finite LP coefficient");

    // Columns: n structural, then m artificials.
    Tableau tab(m, n + m);
    for (std::size_t r = 0; r < m; ++r) {
        const double sign = b[r] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = sign * a(r, j);
        tab.at(r, n + r) = 1.0;
        tab.rhs(r) = sign * b[r];
        tab.basis()[r] = n + r;
        tab.cost(n + r) = 1.0;
    }
    tab.canonicalize_costs();

    LpResult result;
    tab.optimize(n + m, options, result.iterations);
    double scale = 1.0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    if (-tab.rhs(m) > options.tol * scale * static_cast<double>(m + 1)) {
        result.status = LpStatus::infeasible;
        return result;
    }

    // Drive remaining artificials out of the basis; rows with no structural
    // entry are redundant and stay pinned at zero.
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis()[r] < n) continue;
        std::size_t best = n;
        double mag = options.tol;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(tab.at(r, j)) > mag) {
                mag = std::abs(tab.at(r, j));
                best = j;
            }
        }
        if (best < n) tab.pivot(r, best);
    }

    for (std::size_t j = 0; j <= n + m; ++j) tab.cost(j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) tab.cost(j) = c[j];
    tab.canonicalize_costs();
    if (!tab.optimize(n, options, result.iterations)) {
        result.status = LpStatus::unbounded;
        return result;
    }

    result.status = LpStatus::optimal;
    result.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (tab.basis()[r] < n) result.x[tab.basis()[r]] = tab.rhs(r);
    result.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
    return result;
}

}  // namespace envcert
