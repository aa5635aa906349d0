#include "envcert/simulate.hpp"

#include "envcert/error.hpp"
#include "envcert/lp.hpp"
#include "envcert/reach.hpp"
#include "envcert/rationalize.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace envcert {

FloatField::FloatField(const OdeSystem& sys) : dims_(sys.dims()) {
    std::size_t dim = 0, dist = 0;
    for (const auto& v : sys.space()->variables()) {
        if (v.role == VarRole::disturbance)
            slots_.push_back(-1 - static_cast<long>(dist++));
        else
            slots_.push_back(static_cast<long>(dim++));
    }
    for (const auto& fi : sys.f()) {
        std::vector<Term> ts;
        for (const auto& [m, c] : fi.terms()) ts.push_back({to_double(c), m});
        terms_.push_back(std::move(ts));
    }
}

std::vector<double> FloatField::operator()(const std::vector<double>& x, const std::vector<double>& w) const {
    std::vector<double> out(dims_, 0.0);
    for (std::size_t i = 0; i < dims_; ++i) {
        for (const auto& t : terms_[i]) {
            double v = t.coeff;
            for (std::size_t k = 0; k < t.powers.size(); ++k) {
                if (t.powers[k] == 0) continue;
                const long s = slots_[k];
                const double base = s >= 0 ? x[static_cast<std::size_t>(s)] : w[static_cast<std::size_t>(-1 - s)];
                v *= std::pow(base, static_cast<double>(t.powers[k]));
            }
            out[i] += v;
        }
    }
    return out;
}

std::vector<double> rk4(const FloatField& f, std::vector<double> x, const std::vector<double>& w, double t,
                        unsigned steps) {
    if (steps == 0 || t == 0.0) return x;
    const double h = t / steps;
    const std::size_t n = x.size();
    std::vector<double> tmp(n);
    auto axpy = [&](const std::vector<double>& k, double a) {
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + a * k[i];
        return tmp;
    };
    for (unsigned s = 0; s < steps; ++s) {
        const auto k1 = f(x, w);
        const auto k2 = f(axpy(k1, h / 2), w);
        const auto k3 = f(axpy(k2, h / 2), w);
        const auto k4 = f(axpy(k3, h), w);
        for (std::size_t i = 0; i < n; ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return x;
}

std::vector<double> zonotope_point(const Zonotope& z, const std::vector<double>& lambda) {
    if (lambda.size() != z.generators()) throw DimensionMismatch("one parameter per generator");
    std::vector<double> out(z.dim());
    for (std::size_t i = 0; i < z.dim(); ++i) {
        double v = to_double(z.c[i]);
        for (std::size_t j = 0; j < z.generators(); ++j) v += to_double(z.G(i, j)) * lambda[j];
        out[i] = v;
    }
    return out;
}

std::vector<double> envelope_fiber(const ProblemSpec& ps, const std::vector<double>& x) {
    const Zonotope ex = ps.envelope_x();
    const std::size_t n = ex.dim();
    const std::size_t p = ex.generators();
    // Variables: lambda+, lambda-, slack, s.
    DenseMatrix a(n + p, 3 * p + 1);
    std::vector<double> b(n + p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            a(i, j) = to_double(ex.G(i, j));
            a(i, p + j) = -a(i, j);
        }
        b[i] = x[i] - to_double(ex.c[i]);
    }
    for (std::size_t j = 0; j < p; ++j) {
        a(n + j, j) = 1.0;
        a(n + j, p + j) = 1.0;
        a(n + j, 2 * p + j) = 1.0;
        a(n + j, 3 * p) = -1.0;
    }
    std::vector<double> c(3 * p + 1, 0.0);
    c[3 * p] = 1.0;
    const LpResult r = solve_lp(a, b, c);
    if (r.status != LpStatus::optimal) return {};
    std::vector<double> lambda(p);
    for (std::size_t j = 0; j < p; ++j) lambda[j] = r.x[j] - r.x[p + j];
    return lambda;
}

std::string SimulationReport::text() const {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    const double total = states_checked ? static_cast<double>(states_checked) : 1.0;
    os << "samples " << samples << ", steps " << steps << ", seed " << seed << '\n'
       << "states checked " << states_checked << '\n'
       << "inside X_safe " << inside_safe << " (" << 100.0 * static_cast<double>(inside_safe) / total << "%)\n"
       << "inside tube hull " << inside_tube << " (" << 100.0 * static_cast<double>(inside_tube) / total << "%)\n"
       << "fiber misses " << fiber_misses << '\n';
    return os.str();
}

SimulationReport simulate_sanity(const ProblemSpec& ps, unsigned samples, std::uint64_t seed, unsigned steps,
                                 unsigned threads) {
    if (samples == 0) throw DomainMismatch("simulate needs at least one sample");
    ps.validate();
    SimulationReport rep{samples, steps, seed};

    std::vector<std::pair<double, double>> tube;
    try {
        const TaylorModel tm =
            build_taylor_model(ps.sys, ps.envelope, ps.config.picard_order, ps.remainder_search(threads));
        for (const auto& iv : interval_hull(ps.state_rows(reach_interval(tm, ps.config.time_normalization))))
            tube.emplace_back(to_double(iv.lo()), to_double(iv.hi()));
    } catch (const Error&) {
        tube.clear();
    }

    const FloatField f(ps.sys);
    const std::size_t n = ps.states.size();
    const std::size_t p = ps.envelope.generators();
    const double dt = to_double(ps.sys.dt());
    std::vector<double> w_bounds;
    for (const auto& w : ps.sys.disturbance_bounds()) w_bounds.push_back(to_double(w));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    constexpr unsigned substeps = 10;
    constexpr double slack = 1e-9;
    auto inside = [&](const std::vector<double>& x, auto bound) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto [lo, hi] = bound(i);
            if (x[i] < lo - slack || x[i] > hi + slack) return false;
        }
        return true;
    };
    const Zonotope eu = ps.inputs.empty() ? Zonotope() : ps.envelope_u();

    for (unsigned s = 0; s < samples; ++s) {
        std::vector<double> lambda(p);
        for (auto& l : lambda) l = unit(rng);
        std::vector<double> x = zonotope_point(ps.envelope, lambda);
        for (unsigned k = 0; k < steps; ++k) {
            std::vector<double> w(w_bounds.size(), 0.0);
            if (ps.config.disturbance == DisturbanceMode::robust)
                for (std::size_t q = 0; q < w.size(); ++q) w[q] = w_bounds[q] * unit(rng);
            for (unsigned sub = 1; sub <= substeps; ++sub) {
                x = rk4(f, x, w, dt / substeps, 4);
                ++rep.states_checked;
                if (inside(x, [&](std::size_t i) {
                        return std::pair{to_double(ps.x_safe[i].lo()), to_double(ps.x_safe[i].hi())};
                    }))
                    ++rep.inside_safe;
                if (!tube.empty() && inside(x, [&](std::size_t i) { return tube[i]; })) ++rep.inside_tube;
            }
            if (ps.inputs.empty()) continue;
            std::vector<double> fiber = envelope_fiber(ps, x);
            double norm = 0.0;
            for (double l : fiber) norm = std::max(norm, std::abs(l));
            if (fiber.empty() || norm > 1.0 + 1e-9) {
                ++rep.fiber_misses;
                if (fiber.empty()) fiber.assign(p, 0.0);
                else
                    for (auto& l : fiber) l /= norm;
            }
            const std::vector<double> xu = zonotope_point(ps.envelope, fiber);
            for (std::size_t i = n; i < xu.size(); ++i) x[i] = xu[i];
        }
    }
    return rep;
}

}  // namespace envcert
