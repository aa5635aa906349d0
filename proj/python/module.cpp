#include "envcert/error.hpp"
#include "envcert/pipeline.hpp"
#include "envcert/problem_io.hpp"
#include "envcert/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace envcert;

namespace {

py::dict report_dict(const CheckReport& r) {
    py::dict conditions;
    for (const auto& c : r.conditions)
        conditions[py::str(c.name)] = py::make_tuple(std::string(to_string(c.result.verdict)), c.result.detail);
    py::dict out;
    out["verdict"] = std::string(to_string(r.overall()));
    out["conditions"] = conditions;
    return out;
}

Rational exact(const py::handle& v) {
    if (py::isinstance<py::str>(v)) return parse_rational(v.cast<std::string>());
    if (py::isinstance<py::int_>(v)) return parse_rational(py::str(v).cast<std::string>());
    throw ParseError("zonotope entries must be int or str, got " + py::repr(v).cast<std::string>());
}

Zonotope zonotope(const py::sequence& c, const py::sequence& g) {
    RationalVector centre;
    for (auto v : c) centre.push_back(exact(v));
    std::size_t cols = 0;
    if (py::len(g) > 0) cols = py::len(g[0]);
    RationalMatrix gen(centre.size(), cols);
    if (py::len(g) != centre.size()) throw DimensionMismatch("G needs one row per centre entry");
    for (std::size_t i = 0; i < centre.size(); ++i) {
        const py::sequence row = g[i];
        if (py::len(row) != cols) throw DimensionMismatch("ragged G");
        for (std::size_t j = 0; j < cols; ++j) gen(i, j) = exact(row[j]);
    }
    return Zonotope(std::move(centre), std::move(gen));
}

}  // namespace

PYBIND11_MODULE(_envcert, m) {
    m.doc() = "Exact certification of zonotopic control envelopes";
    m.attr("__version__") = std::string(tool_version);

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<Mismatch> mismatch(m, "Mismatch", error.ptr());
    static py::exception<Malformed> malformed(m, "Malformed", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Mismatch& e) {
            mismatch(e.what());
        } catch (const Malformed& e) {
            malformed(e.what());
        } catch (const Error& e) {
            error(e.what());
        }
    });

    m.def(
        "certify",
        [](const std::string& problem, const std::vector<std::string>& config, unsigned threads) {
            const ProblemSpec ps = load_problem(problem, config);
            RciResult r;
            {
                py::gil_scoped_release release;
                r = check_rci(ps, threads);
            }
            py::dict out = report_dict(r.report);
            out["certificate"] = to_json(r.certificate).dump(2);
            return out;
        },
        py::arg("problem"), py::arg("config") = std::vector<std::string>{}, py::arg("threads") = 1u,
        "Check the envelope of a problem file; returns verdicts and the certificate JSON.");

    m.def(
        "verify",
        [](const std::string& certificate, const std::string& problem, unsigned threads) {
            Certificate cert;
            try {
                cert = certificate_from_json(nlohmann::json::parse(certificate));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
            }
            const ProblemSpec ps = load_problem(problem);
            CheckReport r;
            {
                py::gil_scoped_release release;
                r = verify_certificate(cert, ps, threads);
            }
            return report_dict(r);
        },
        py::arg("certificate"), py::arg("problem"), py::arg("threads") = 1u,
        "Re-check certificate JSON text against a problem file in exact arithmetic.");

    m.def(
        "problem_hash",
        [](const std::string& problem, const std::vector<std::string>& config) {
            return envcert::problem_hash(load_problem(problem, config));
        },
        py::arg("problem"), py::arg("config") = std::vector<std::string>{});

    m.def(
        "contains",
        [](const py::sequence& inner_c, const py::sequence& inner_g, const py::sequence& outer_c,
           const py::sequence& outer_g) {
            const ContainmentAttempt a =
                prove_containment(zonotope(inner_c, inner_g), zonotope(outer_c, outer_g), Config{});
            return py::make_tuple(std::string(to_string(a.result.verdict)), a.result.detail);
        },
        py::arg("inner_c"), py::arg("inner_G"), py::arg("outer_c"), py::arg("outer_G"),
        "Containment of Z(inner_c, inner_G) in Z(outer_c, outer_G). Entries are ints or rational strings.");
}
