#include "envcert/pipeline.hpp"

#include "envcert/containment.hpp"
#include "envcert/error.hpp"
#include "envcert/reach.hpp"
#include "envcert/rationalize.hpp"
#include "envcert/witness_search.hpp"

namespace envcert {

ContainmentAttempt prove_containment(const Zonotope& inner, const Zonotope& outer, const Config& config) {
    RationalMatrix hplus;
    try {
        hplus = right_inverse(outer.G);
    } catch (const RankDeficient& e) {
        return {CheckResult::unknown(std::string("outer generators are rank deficient (") + e.what() +
                                     "); try --config inflate_outer=<delta>"),
                std::nullopt};
    }
    LpWitnessResult lp;
    try {
        lp = lp_witness_search(inner, outer, {to_double(config.lp_tol), config.lp_max_iter});
    } catch (const NumericalFailure& e) {
        return {CheckResult::unknown(std::string("witness LP: ") + e.what()), std::nullopt};
    }
    if (!lp.found) return {CheckResult::fail("no witness: " + lp.detail), std::nullopt};

    ContainmentWitness w = exactify(lp.witness, inner, outer, hplus, config.rationalize_mode,
                                    config.rationalize_max_den);
    CheckResult exact = certify(inner, outer, w);
    if (!exact.passed()) return {CheckResult::unknown("exactified witness insufficient: " + exact.detail), std::nullopt};
    return {std::move(exact), std::move(w)};
}

RciResult check_rci(const ProblemSpec& ps, unsigned threads) {
    ps.validate();
    RciResult out;
    Certificate& cert = out.certificate;
    cert.problem_hash = problem_hash(ps);
    cert.config = ps.config;

    auto add = [&](std::string_view name, CheckResult result, std::optional<ContainmentWitness> witness = {}) {
        cert.conditions.push_back({std::string(name), result.verdict, std::move(witness)});
        out.report.conditions.push_back({std::string(name), std::move(result)});
    };

    std::optional<TaylorModel> tm;
    try {
        tm = build_taylor_model(ps.sys, ps.envelope, ps.config.picard_order, ps.remainder_search(threads));
    } catch (const NoValidRemainder& e) {
        add(condition::taylor_model, CheckResult::unknown(e.what()));
    }
    if (tm) {
        if (tm->valid()) {
            cert.taylor_model = make_record(*tm);
            add(condition::taylor_model, CheckResult::pass("premises hold"));
        } else {
            add(condition::taylor_model, CheckResult::unknown("synthesized model failed its premise re-check"));
            tm.reset();
        }
    }

    const Zonotope target = ps.containment_target();
    if (tm) {
        const Zonotope discrete = reach_discrete(*tm, ps.config.abstraction_domain, ps.config.subdivision);
        cert.reach_discrete = discrete;
        ContainmentAttempt inv = prove_containment(ps.state_rows(discrete), target, ps.config);
        add(condition::invariance, std::move(inv.result), std::move(inv.witness));

        try {
            const Zonotope tube = reach_interval(*tm, ps.config.time_normalization, ps.config.subdivision);
            cert.reach_interval = tube;
            add(condition::safety, in_box(ps.state_rows(tube), ps.x_safe));
        } catch (const DtTooLarge& e) {
            add(condition::safety, CheckResult::unknown(e.what()));
        }
    } else {
        add(condition::invariance, CheckResult::unknown("no valid Taylor model"));
        add(condition::safety, CheckResult::unknown("no valid Taylor model"));
    }

    add(condition::admissibility,
        ps.inputs.empty() ? CheckResult::pass("no inputs") : in_box(ps.envelope_u(), ps.u_adm));

    ContainmentAttempt init = prove_containment(ps.x0, target, ps.config);
    add(condition::initial_coverage, std::move(init.result), std::move(init.witness));

    cert.verdict = out.report.overall();
    return out;
}

}  // namespace envcert
