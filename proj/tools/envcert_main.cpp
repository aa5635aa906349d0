#include "envcert/certificate.hpp"
#include "envcert/error.hpp"
#include "envcert/pipeline.hpp"
#include "envcert/plot.hpp"
#include "envcert/problem_io.hpp"
#include "envcert/reach.hpp"
#include "envcert/simulate.hpp"
#include "envcert/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

using namespace envcert;

namespace {

enum Exit { exit_pass = 0, exit_fail = 1, exit_unknown = 2, exit_input = 3, exit_mismatch = 4 };

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::pass: return exit_pass;
        case Verdict::fail: return exit_fail;
        case Verdict::unknown: return exit_unknown;
    }
    return exit_unknown;
}

unsigned thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ENVCERT_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            std::cerr << "ignoring malformed ENVCERT_THREADS='" << env << "'\n";
        }
    }
    return n;
}

struct Common {
    std::vector<std::string> config;
    int picard_order = -1;

    std::vector<std::string> overrides() const {
        auto out = config;
        if (picard_order >= 0) out.push_back("picard.order=" + std::to_string(picard_order));
        return out;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "Override a config key (key=value); repeatable");
    cmd->add_option("--picard-order", c.picard_order, "Picard iteration order")->check(CLI::NonNegativeNumber);
}

void print_zonotope(const std::string& title, const Zonotope& z) {
    std::cout << title << " (" << z.dim() << " rows, " << z.generators() << " generators)\n";
    for (std::size_t i = 0; i < z.dim(); ++i) {
        std::cout << "  " << (z.labels.empty() ? std::to_string(i) : z.labels[i]) << ": c = " << to_string(z.c[i])
                  << ", G = [";
        for (std::size_t j = 0; j < z.generators(); ++j) std::cout << (j ? ", " : "") << to_string(z.G(i, j));
        std::cout << "]\n";
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

int cmd_certify(const std::string& problem, const std::string& out_path, const Common& common) {
    const ProblemSpec ps = load_problem(problem, common.overrides());
    const RciResult r = check_rci(ps, thread_count());
    std::cout << r.report.table();
    if (!out_path.empty()) {
        write_file(out_path, to_json(r.certificate).dump(2) + "\n");
        std::cout << "certificate written to " << out_path << '\n';
    }
    return exit_code(r.report.overall());
}

int cmd_verify(const std::string& cert_path, const std::string& problem) {
    const ProblemSpec ps = load_problem(problem);
    Certificate cert;
    try {
        cert = certificate_from_json(read_json_file(cert_path));
    } catch (const ParseError& e) {
        throw Malformed(e.what());
    }
    const CheckReport report = verify_certificate(cert, ps, thread_count());
    std::cout << report.table();
    return exit_code(report.overall());
}

Zonotope taylor_init(const ProblemSpec& ps, const std::string& init, const std::string& scale) {
    if (init == "envelope") return ps.envelope;
    const std::size_t n = ps.envelope.dim();
    const Rational s = parse_rational(scale);
    return Zonotope(RationalVector(n, Rational(0)), s * RationalMatrix::identity(n), ps.envelope.labels);
}

int cmd_taylor(const std::string& problem, const Common& common, const std::string& init,
               const std::string& scale, const std::string& bounds_path) {
    const ProblemSpec ps = load_problem(problem, common.overrides());
    const Zonotope z = taylor_init(ps, init, scale);
    const unsigned order = ps.config.picard_order;
    const auto space = make_taylor_space(z.generators(), ps.config.degree_cap);
    const PolyVector p = picard_iterate(ps.sys, zonotope_polynomials(z, space), order);

    TaylorModel tm;
    if (bounds_path.empty()) {
        try {
            tm = synthesize_remainder(ps.sys, p, z, order, ps.remainder_search(thread_count()));
        } catch (const NoValidRemainder& e) {
            for (std::size_t i = 0; i < p.size(); ++i)
                std::cout << ps.sys.dim_names()[i] << ": p = " << p[i].to_string() << '\n';
            std::cerr << e.what() << '\n';
            return exit_unknown;
        }
    } else {
        const auto doc = read_json_file(bounds_path);
        const auto& slopes = doc.is_object() ? doc.at("slopes") : doc;
        if (!slopes.is_array() || slopes.size() != p.size())
            throw Malformed("bounds file needs one slope per dimension");
        std::vector<AffineIntervalFn> rem;
        for (const auto& s : slopes) rem.push_back(AffineIntervalFn::slope(parse_rational(s.get<std::string>())));
        tm = TaylorModel{space, p, rem, ps.sys.dt(), z, order};
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::cout << ps.sys.dim_names()[i] << ": p = " << p[i].to_string() << '\n';
        std::cout << "    I(t) = [" << to_string(tm.remainder[i].a.lo()) << ", " << to_string(tm.remainder[i].a.hi())
                  << "] + [" << to_string(tm.remainder[i].b.lo()) << ", " << to_string(tm.remainder[i].b.hi())
                  << "] t\n";
    }
    const CheckResult init_ok = check_initial_premise(tm, z);
    const CheckResult deriv = check_derivative_premise(tm, ps.sys, ps.config.disturbance, ps.config.subdivision,
                                                       thread_count());
    CheckReport report;
    report.conditions.push_back({"initial_premise", init_ok});
    report.conditions.push_back({"derivative_premise", deriv});
    std::cout << report.table();
    return exit_code(report.overall());
}

int cmd_reach(const std::string& problem, const Common& common) {
    const ProblemSpec ps = load_problem(problem, common.overrides());
    TaylorModel tm;
    try {
        tm = build_taylor_model(ps.sys, ps.envelope, ps.config.picard_order, ps.remainder_search(thread_count()));
    } catch (const NoValidRemainder& e) {
        std::cerr << e.what() << '\n';
        return exit_unknown;
    }
    print_zonotope("reach_discrete", reach_discrete(tm, ps.config.abstraction_domain, ps.config.subdivision));
    print_zonotope("reach_interval", reach_interval(tm, ps.config.time_normalization, ps.config.subdivision));
    return exit_pass;
}

std::size_t row_index(const std::vector<std::string>& labels, const std::string& row) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == row) return i;
    throw DimensionMismatch("unknown row '" + row + "'");
}

int cmd_plot(const std::string& problem, const std::string& cert_path, const std::vector<std::string>& rows,
             const std::string& out_dir, const Common& common) {
    const ProblemSpec ps = load_problem(problem, common.overrides());
    if (rows.size() != 2 || rows[0] == rows[1]) throw DimensionMismatch("--rows needs two distinct state names");
    const std::size_t r0 = row_index(ps.states, rows[0]);
    const std::size_t r1 = row_index(ps.states, rows[1]);

    std::optional<Zonotope> discrete, tube;
    if (!cert_path.empty()) {
        const Certificate cert = certificate_from_json(read_json_file(cert_path));
        discrete = cert.reach_discrete;
        tube = cert.reach_interval;
    } else {
        try {
            const TaylorModel tm = build_taylor_model(ps.sys, ps.envelope, ps.config.picard_order,
                                                      ps.remainder_search(thread_count()));
            discrete = reach_discrete(tm, ps.config.abstraction_domain, ps.config.subdivision);
            tube = reach_interval(tm, ps.config.time_normalization, ps.config.subdivision);
        } catch (const NoValidRemainder& e) {
            std::cerr << e.what() << '\n';
        }
    }

    std::filesystem::create_directories(out_dir);
    auto emit = [&](const std::string& name, const std::vector<Point2>& poly) {
        const std::string path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
        std::ofstream out(path);
        if (!out) throw ParseError("cannot write '" + path + "'");
        write_polygon_csv(out, poly);
        std::cout << path << '\n';
    };
    emit("envelope", vertices_2d(ps.envelope, r0, r1));
    if (discrete) emit("reach_discrete", vertices_2d(*discrete, r0, r1));
    if (tube) emit("reach_interval", vertices_2d(*tube, r0, r1));
    emit("safety_box", box_polygon(ps.x_safe[r0], ps.x_safe[r1]));
    return exit_pass;
}

int cmd_simulate(const std::string& problem, unsigned samples, std::uint64_t seed, unsigned steps,
                 const Common& common) {
    const ProblemSpec ps = load_problem(problem, common.overrides());
    std::cout << simulate_sanity(ps, samples, seed, steps, thread_count()).text();
    return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certification of zonotopic control envelopes for polynomial sampled-data systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    Common common;
    std::string problem, cert_path, out_path, bounds_path, init = "envelope", scale = "1";
    std::vector<std::string> rows;
    unsigned samples = 100, steps = 50;
    std::uint64_t seed = 1;

    auto* certify = app.add_subcommand("certify", "Check the envelope and write a certificate");
    certify->add_option("problem", problem, "Problem JSON")->required();
    certify->add_option("--out", out_path, "Certificate output path");
    add_common(certify, common);

    auto* verify = app.add_subcommand("verify", "Re-check a certificate with exact arithmetic only");
    verify->add_option("certificate", cert_path, "Certificate JSON")->required();
    verify->add_option("problem", problem, "Problem JSON")->required();

    auto* taylor = app.add_subcommand("taylor", "Print the Taylor model of the extended system");
    taylor->add_option("problem", problem, "Problem JSON")->required();
    taylor->add_option("--order", common.picard_order, "Picard order")->check(CLI::NonNegativeNumber);
    taylor->add_option("--check-bounds", bounds_path, "JSON list of remainder slopes to validate");
    taylor->add_option("--init", init, "Initial set: the envelope or the unit box")
        ->check(CLI::IsMember({"envelope", "unit"}));
    taylor->add_option("--init-scale", scale, "Scale of the unit initial box");
    taylor->add_option("--config", common.config, "Override a config key (key=value); repeatable");

    auto* reach = app.add_subcommand("reach", "Print the one-step and tube reach zonotopes");
    reach->add_option("problem", problem, "Problem JSON")->required();
    add_common(reach, common);

    auto* plot = app.add_subcommand("plot-data", "Write CSV polygons of the envelope, reach sets and safety box");
    plot->add_option("problem", problem, "Problem JSON")->required();
    plot->add_option("--cert", cert_path, "Take the reach sets from this certificate");
    plot->add_option("--rows", rows, "Two state names, e.g. x1 x2")->expected(2)->required();
    plot->add_option("--out", out_path, "Output directory")->required();
    add_common(plot, common);

    auto* sim = app.add_subcommand("simulate", "Float RK4 closed-loop rollouts (advisory)");
    sim->add_option("problem", problem, "Problem JSON")->required();
    sim->add_option("--samples", samples, "Number of rollouts")->check(CLI::PositiveNumber);
    sim->add_option("--seed", seed, "Random seed");
    sim->add_option("--steps", steps, "Sampling periods per rollout");
    add_common(sim, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (*certify) return cmd_certify(problem, out_path, common);
        if (*verify) return cmd_verify(cert_path, problem);
        if (*taylor) return cmd_taylor(problem, common, init, scale, bounds_path);
        if (*reach) return cmd_reach(problem, common);
        if (*plot) return cmd_plot(problem, cert_path, rows, out_path, common);
        if (*sim) return cmd_simulate(problem, samples, seed, steps, common);
    } catch (const Mismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_mismatch;
    } catch (const NoValidRemainder& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_unknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
