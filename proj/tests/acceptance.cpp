#include "envcert/error.hpp"
#include "envcert/pipeline.hpp"
#include "envcert/problem_io.hpp"
#include "envcert/rationalize.hpp"
#include "envcert/reach.hpp"
#include "envcert/simulate.hpp"
#include "envcert/verify.hpp"

#include "audit.hpp"
#include "oracle.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace envcert;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Pinned thresholds.
constexpr double ac1_seconds = 1.0;
constexpr double ac2_seconds = 5.0;
constexpr double ac2_factor = 2.0;
constexpr int ac3_pairs = 500;
constexpr std::size_t ac3_max_generators = 6;
constexpr double ac3_seconds = 60.0;
constexpr int ac4_pairs = 200;
constexpr double ac4_rate = 0.95;
constexpr int ac5_samples = 100;
constexpr int ac5_times = 10;
constexpr double ac5_slack = 1e-9;
constexpr int ac6_mutations = 50;
constexpr double ac7_seconds = 30.0;

const fs::path root{ENVCERT_SOURCE_DIR};

Rational q(const char* s) { return parse_rational(s); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* what, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::printf("%s %s  %s  (%s)\n", id, o.ok ? "PASS" : "FAIL", what, o.detail.c_str());
    std::fflush(stdout);
}

std::vector<Variable> xu(std::size_t states, std::size_t inputs) {
    std::vector<Variable> v;
    for (std::size_t i = 0; i < states; ++i) v.push_back({"x" + std::to_string(i + 1), VarRole::state});
    for (std::size_t i = 0; i < inputs; ++i) v.push_back({"u" + std::to_string(i + 1), VarRole::input});
    return v;
}

Zonotope box(std::size_t n, const Rational& s) {
    return Zonotope(RationalVector(n, Rational(0)), s * RationalMatrix::identity(n));
}

Outcome ac1() {
    const auto t0 = std::chrono::steady_clock::now();
    const OdeSystem sys(xu(2, 1), {}, {"x2", "u1", "0"}, {}, q("1/10"));
    const Zonotope init = box(3, Rational(1));
    const auto space = make_taylor_space(3);
    const PolyVector p = picard_iterate(sys, zonotope_polynomials(init, space), 2);
    const std::vector<std::string> printed{"l1 + t*l2 + 1/2*t^2*l3", "l2 + t*l3", "l3"};
    bool same = p.size() == 3;
    for (std::size_t i = 0; same && i < 3; ++i) same = p[i] == parse_polynomial(printed[i], space);
    const TaylorModel tm{space, p,
                         {AffineIntervalFn::slope(Rational(101020) * pow10(-11)), AffineIntervalFn::slope(pow10(-6)),
                          AffineIntervalFn::slope(pow10(-6))},
                         sys.dt(), init, 2};
    const CheckResult premise = check_derivative_premise(tm, sys, DisturbanceMode::nominal);
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << "polynomials " << (same ? "match" : "differ") << ", premise " << to_string(premise.verdict) << ", " << s
      << " s";
    return {same && premise.passed() && s < ac1_seconds, d.str()};
}

Outcome ac2() {
    const auto t0 = std::chrono::steady_clock::now();
    const OdeSystem sys(xu(2, 1), {}, {"-x2 - 3/2*x1^2 - 1/2*x1^3", "u1", "0"}, {}, q("1/10"));
    const TaylorModel tm = build_taylor_model(sys, box(3, q("3/10")), 2);
    const Rational reference = Rational(28605705206) * pow10(-11);
    const Rational slope = tm.remainder[0].b.hi();
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << "x1 slope " << to_string(slope) << " = " << to_double(slope) << " vs bound " << ac2_factor * to_double(reference)
      << ", valid " << tm.valid() << ", " << s << " s";
    return {tm.valid() && slope <= Rational(2) * reference && s < ac2_seconds, d.str()};
}

Rational random_rational(std::mt19937_64& rng, int span) {
    Rational r(std::uniform_int_distribution<int>(-span, span)(rng), std::uniform_int_distribution<int>(1, 8)(rng));
    r.canonicalize();
    return r;
}

Zonotope random_zonotope(std::mt19937_64& rng, std::size_t p, const Rational& scale) {
    RationalMatrix g(2, p);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < p; ++j) g(i, j) = scale * random_rational(rng, 8);
    return Zonotope(RationalVector{scale * random_rational(rng, 2) / 4, scale * random_rational(rng, 2) / 4}, g);
}

Outcome ac3() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> gens(1, ac3_max_generators);
    const Config cfg;
    int passed = 0, unsound = 0, contained = 0;
    for (int i = 0; i < ac3_pairs; ++i) {
        const Zonotope outer = random_zonotope(rng, std::max<std::size_t>(2, gens(rng)), Rational(1));
        const Rational shrink(std::uniform_int_distribution<int>(1, 6)(rng), 6);
        const Zonotope inner = random_zonotope(rng, gens(rng), shrink / 2);
        const bool truth = oracle::contained_2d(inner, outer);
        contained += truth;
        if (prove_containment(inner, outer, cfg).result.passed()) {
            ++passed;
            if (!truth) ++unsound;
        }
    }
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << passed << " certified, " << contained << " contained by oracle, " << unsound << " unsound, " << s << " s";
    return {unsound == 0 && passed > 0 && s < ac3_seconds, d.str()};
}

Outcome ac4() {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<std::size_t> gens(2, ac3_max_generators);
    const Config cfg;
    int passed = 0;
    for (int i = 0; i < ac4_pairs; ++i) {
        const Zonotope inner = random_zonotope(rng, gens(rng), Rational(1));
        const Zonotope outer(inner.c, q("105/100") * inner.G);
        passed += prove_containment(inner, outer, cfg).result.passed();
    }
    const double rate = double(passed) / ac4_pairs;
    std::ostringstream d;
    d << passed << "/" << ac4_pairs << " certified";
    return {rate >= ac4_rate, d.str()};
}

Outcome ac5() {
    std::ostringstream d;
    bool ok = true;
    for (const char* name : {"double_integrator.json", "jet_engine.json"}) {
        ProblemSpec ps = load_problem((root / "problems" / name).string());
        ps.config.disturbance = DisturbanceMode::nominal;
        const TaylorModel tm =
            build_taylor_model(ps.sys, ps.envelope, ps.config.picard_order, ps.remainder_search());
        const Box hull = interval_hull(reach_interval(tm, ps.config.time_normalization, ps.config.subdivision));
        const FloatField f(ps.sys);
        const double dt = to_double(ps.sys.dt());
        const std::vector<double> w(ps.sys.disturbance_names().size(), 0.0);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        int outside = 0, checked = 0;
        double worst = -1e300;
        for (int s = 0; s < ac5_samples; ++s) {
            std::vector<double> lambda(ps.envelope.generators());
            for (auto& l : lambda) l = u(rng);
            const auto x0 = zonotope_point(ps.envelope, lambda);
            for (int k = 1; k <= ac5_times; ++k) {
                const auto x = rk4(f, x0, w, dt * k / ac5_times, 100 * k);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double lo = to_double(hull[i].lo()), hi = to_double(hull[i].hi());
                    worst = std::max({worst, lo - x[i], x[i] - hi});
                    ++checked;
                    if (x[i] < lo - ac5_slack || x[i] > hi + ac5_slack) ++outside;
                }
            }
        }
        ok = ok && outside == 0;
        d << name << ": " << outside << "/" << checked << " outside, worst excess " << worst << "; ";
    }
    return {ok, d.str()};
}

void leaves(const json& j, const json::json_pointer& at, std::vector<json::json_pointer>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) leaves(it.value(), at / it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) leaves(j[i], at / i, out);
    } else {
        out.push_back(at);
    }
}

json mutate(const json& leaf, std::mt19937_64& rng) {
    if (leaf.is_string()) {
        const std::string s = leaf.get<std::string>();
        try {
            const Rational v = parse_rational(s);
            Rational delta(std::uniform_int_distribution<int>(2, 9)(rng));
            if (rng() & 1) delta = -delta;
            return to_string(v + delta);
        } catch (const ParseError&) {
            if (s == "PASS") return "FAIL";
            if (s == "FAIL" || s == "UNKNOWN") return "PASS";
            return s + "_";
        }
    }
    if (leaf.is_number_integer()) return leaf.get<long long>() + 2;
    return "x";
}

Outcome ac6() {
    std::ostringstream d;
    int reproduced = 0, rejected = 0, total = 0;
    std::mt19937_64 rng(59);
    for (const char* name : {"double_integrator.json", "jet_engine.json"}) {
        const ProblemSpec ps = load_problem((root / "problems" / name).string());
        const RciResult run = check_rci(ps);
        const json good = to_json(run.certificate);
        const Certificate back = certificate_from_json(json::parse(good.dump()));
        const CheckReport rep = verify_certificate(back, ps);
        bool same = back == run.certificate && rep.overall() == run.certificate.verdict;
        for (std::size_t i = 0; i < rep.conditions.size(); ++i)
            same = same && rep.conditions[i].result.verdict == run.certificate.conditions[i].verdict;
        reproduced += same;

        std::vector<json::json_pointer> fields;
        leaves(good, json::json_pointer(), fields);
        std::erase_if(fields, [](const json::json_pointer& p) { return p.to_string() == "/tool_version"; });
        for (int m = 0; m < ac6_mutations / 2; ++m) {
            const auto& at = fields[std::uniform_int_distribution<std::size_t>(0, fields.size() - 1)(rng)];
            json bad = good;
            bad[at] = mutate(good[at], rng);
            ++total;
            try {
                if (verify_certificate(certificate_from_json(bad), ps).overall() != run.certificate.verdict)
                    ++rejected;
                else
                    d << "survived " << at.to_string() << "; ";
            } catch (const Malformed&) {
                ++rejected;
            } catch (const Mismatch&) {
                ++rejected;
            }
        }
    }
    const auto modules = audit::closure(root, root / "src/verify.cpp");
    bool clean = audit::float_offenders(root, root / "src/verify.cpp").empty();
    for (const auto& m : audit::numeric_modules()) clean = clean && modules.count(m) == 0;
    d << reproduced << "/2 round trips reproduced, " << rejected << "/" << total << " mutations rejected, verifier "
      << (clean ? "float-free" : "touches floating point");
    return {reproduced == 2 && rejected == total && total == ac6_mutations && clean, d.str()};
}

Outcome ac7() {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir = fs::temp_directory_path() / ("envcert_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ostringstream d;
    bool ok = true;
    for (const char* name : {"double_integrator", "jet_engine"}) {
        const fs::path cert = dir / (std::string(name) + ".cert.json");
        const fs::path log = dir / (std::string(name) + ".txt");
        const std::string cmd = std::string("\"") + ENVCERT_CLI + "\" certify \"" +
                                (root / "problems" / (std::string(name) + ".json")).string() + "\" --out \"" +
                                cert.string() + "\" > \"" + log.string() + "\" 2>&1";
        const int status = std::system(cmd.c_str());
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        const std::string text = audit::read(log);
        const bool table = text.find("overall") != std::string::npos;
        ok = ok && code >= 0 && code <= 2 && table && fs::exists(cert);
        d << name << " exit " << code << "; ";
    }
    fs::remove_all(dir);
    const double s = seconds_since(t0);
    d << s << " s";
    return {ok && s < ac7_seconds, d.str()};
}

}  // namespace

int main() {
    report("AC1", "double integrator Taylor model reproduction", ac1);
    report("AC2", "jet engine Taylor model slope", ac2);
    report("AC3", "containment soundness", ac3);
    report("AC4", "containment at 5% slack", ac4);
    report("AC5", "tube encloses RK4 trajectories", ac5);
    report("AC6", "certificate integrity", ac6);
    report("AC7", "end-to-end CLI", ac7);
    return failures == 0 ? 0 : 1;
}
