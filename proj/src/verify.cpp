#include "envcert/verify.hpp"

#include "envcert/containment.hpp"
#include "envcert/error.hpp"
#include "envcert/reach.hpp"

#include <optional>

namespace envcert {

namespace {

struct Verifier {
    const Certificate& cert;
    ProblemSpec ps;
    unsigned threads;
    std::optional<TaylorModel> tm;

    const ConditionRecord& record(std::string_view name) const {
        for (const auto& c : cert.conditions)
            if (c.name == name) return c;
        throw Malformed("certificate lacks condition '" + std::string(name) + "'");
    }

    /// Verdict for a condition whose stored verdict is not PASS and which
    /// carries no witness: reproduced as stored.
    CheckResult without_evidence(const ConditionRecord& rec) const {
        if (rec.verdict == Verdict::pass) throw Malformed("PASS for '" + rec.name + "' without evidence");
        return {rec.verdict, "reported " + std::string(to_string(rec.verdict)) + " without evidence"};
    }

    /// Condition that needs the Taylor model when none verified.
    CheckResult no_model(const ConditionRecord& rec) const {
        if (cert.taylor_model || rec.witness) return CheckResult::unknown("no valid Taylor model");
        return without_evidence(rec);
    }

    CheckResult taylor_model() {
        const ConditionRecord& rec = record(condition::taylor_model);
        if (!cert.taylor_model) return without_evidence(rec);
        const TaylorModelRecord& r = *cert.taylor_model;
        if (r.order != ps.config.picard_order) return CheckResult::fail("Picard order differs from the configuration");
        if (r.dt != ps.sys.dt()) return CheckResult::fail("Taylor model horizon differs from dt");
        if (r.p.size() != ps.sys.dims()) return CheckResult::fail("Taylor model dimension differs from the problem");

        const auto space = make_taylor_space(ps.envelope.generators(), ps.config.degree_cap);
        std::vector<std::string> expected;
        for (const auto& v : space->variables()) expected.push_back(v.name);
        if (r.variables != expected) return CheckResult::fail("Taylor model variables differ from the envelope layout");

        PolyVector p = record_polynomials(r, space);
        const PolyVector picard = picard_iterate(ps.sys, zonotope_polynomials(ps.envelope, space), r.order);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!(p[i] == picard[i]))
                return CheckResult::fail("stored p differs from the Picard iterate in dim " + std::to_string(i + 1));

        TaylorModel model{space, std::move(p), r.remainder, r.dt, ps.envelope, r.order};
        const CheckResult init = check_initial_premise(model, ps.envelope);
        if (!init.passed()) return CheckResult::fail("initial premise: " + init.detail);
        const CheckResult deriv =
            check_derivative_premise(model, ps.sys, ps.config.disturbance, ps.config.subdivision, threads);
        if (!deriv.passed()) return CheckResult::fail("derivative premise: " + deriv.detail);
        model.initial_premise_ok = true;
        model.derivative_premise_ok = true;
        tm = std::move(model);
        return CheckResult::pass("Picard iterate reproduced; " + deriv.detail);
    }

    std::optional<CheckResult> reach_mismatch(const std::optional<Zonotope>& stored, const Zonotope& derived,
                                              const char* what) const {
        if (!stored || !(*stored == derived))
            return CheckResult::fail(std::string("stored ") + what + " differs from the recomputed set");
        return std::nullopt;
    }

    CheckResult containment(const ConditionRecord& rec, const Zonotope& inner) const {
        if (!rec.witness) return without_evidence(rec);
        return certify(inner, ps.containment_target(), *rec.witness);
    }

    CheckResult invariance() {
        const ConditionRecord& rec = record(condition::invariance);
        if (!tm) return no_model(rec);
        const Zonotope reach = reach_discrete(*tm, ps.config.abstraction_domain, ps.config.subdivision);
        if (auto bad = reach_mismatch(cert.reach_discrete, reach, "reach_discrete")) return *bad;
        return containment(rec, ps.state_rows(reach));
    }

    CheckResult safety() {
        const ConditionRecord& rec = record(condition::safety);
        if (!tm) return no_model(rec);
        if (ps.config.time_normalization == TimeNormalization::literal && ps.sys.dt() > 1) return without_evidence(rec);
        const Zonotope reach = reach_interval(*tm, ps.config.time_normalization, ps.config.subdivision);
        if (auto bad = reach_mismatch(cert.reach_interval, reach, "reach_interval")) return *bad;
        return in_box(ps.state_rows(reach), ps.x_safe);
    }

    CheckResult admissibility() const {
        if (ps.inputs.empty()) return CheckResult::pass("no inputs");
        return in_box(ps.envelope_u(), ps.u_adm);
    }

    CheckResult initial_coverage() const { return containment(record(condition::initial_coverage), ps.x0); }
};

}  // namespace

CheckReport verify_certificate(const Certificate& cert, const ProblemSpec& problem, unsigned threads) {
    if (cert.schema != certificate_schema) throw Malformed("unsupported certificate schema '" + cert.schema + "'");
    std::vector<std::string> names;
    for (const auto& c : cert.conditions) names.push_back(c.name);
    if (names != condition_names()) throw Malformed("certificate must list the five conditions in order");
    CheckReport stored_report;
    for (const auto& c : cert.conditions) stored_report.conditions.push_back({c.name, {c.verdict, {}}});
    if (stored_report.overall() != cert.verdict) throw Malformed("overall verdict disagrees with the conditions");

    Verifier v{cert, problem, threads, std::nullopt};
    v.ps.config = cert.config;
    if (problem_hash(v.ps) != cert.problem_hash) throw Mismatch("certificate belongs to a different problem");

    CheckReport report;
    auto add = [&](std::string_view name, CheckResult derived) {
        const Verdict claimed = v.record(name).verdict;
        if (claimed != derived.verdict)
            derived = CheckResult::fail("stored " + std::string(to_string(claimed)) + " but re-derived " +
                                        std::string(to_string(derived.verdict)) + ": " + derived.detail);
        report.conditions.push_back({std::string(name), std::move(derived)});
    };
    add(condition::taylor_model, v.taylor_model());
    add(condition::invariance, v.invariance());
    add(condition::safety, v.safety());
    add(condition::admissibility, v.admissibility());
    add(condition::initial_coverage, v.initial_coverage());
    return report;
}

}  // namespace envcert
