#include "envcert/problem_io.hpp"

#include "envcert/error.hpp"
#include "envcert/rationalize.hpp"

#include <fstream>

namespace envcert {

using nlohmann::json;

namespace {

struct Reader {
    RationalizeMode numbers = RationalizeMode::dyadic;
    std::uint64_t max_den = 1'000'000;

    const json& field(const json& j, const char* key) const {
        if (!j.is_object()) throw Malformed(std::string("expected an object holding '") + key + "'");
        auto it = j.find(key);
        if (it == j.end()) throw Malformed(std::string("problem lacks '") + key + "'");
        return *it;
    }

    Rational number(const json& j) const {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
        if (j.is_number_unsigned()) return Rational(std::to_string(j.get<unsigned long long>()));
        if (j.is_number_float()) return rationalize(j.get<double>(), numbers, max_den);
        throw Malformed("expected a number, got " + j.dump());
    }

    RationalVector vector(const json& j) const {
        if (!j.is_array()) throw Malformed("expected an array of numbers");
        RationalVector out;
        for (const auto& x : j) out.push_back(number(x));
        return out;
    }

    RationalMatrix matrix(const json& j, std::size_t rows) const {
        if (!j.is_array() || j.size() != rows)
            throw Malformed("generator matrix needs " + std::to_string(rows) + " rows");
        std::vector<RationalVector> data;
        for (const auto& r : j) data.push_back(vector(r));
        const std::size_t cols = data.empty() ? 0 : data.front().size();
        RationalMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (data[r].size() != cols) throw Malformed("ragged generator matrix");
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = data[r][c];
        }
        return m;
    }

    Zonotope zonotope(const json& j, std::vector<std::string> labels) const {
        RationalVector c = vector(field(j, "c"));
        if (c.size() != labels.size())
            throw Malformed("zonotope centre has " + std::to_string(c.size()) + " entries, expected " +
                            std::to_string(labels.size()));
        RationalMatrix g = matrix(field(j, "G"), c.size());
        return Zonotope(std::move(c), std::move(g), std::move(labels));
    }

    Box box(const json& j) const {
        if (!j.is_array()) throw Malformed("expected a list of [lo, hi] pairs");
        Box out;
        for (const auto& iv : j) {
            if (!iv.is_array() || iv.size() != 2) throw Malformed("expected [lo, hi]");
            Rational lo = number(iv[0]), hi = number(iv[1]);
            if (hi < lo) throw Malformed("box interval with hi < lo");
            out.emplace_back(std::move(lo), std::move(hi));
        }
        return out;
    }
};

std::vector<std::string> names(const char* prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
    return out;
}

}  // namespace

ProblemSpec problem_from_json(const json& doc, const std::vector<std::string>& overrides) {
    Reader rd;
    if (auto it = doc.find("numbers"); it != doc.end()) {
        const std::string mode = it->is_string() ? it->get<std::string>() : "";
        if (mode == "dyadic")
            rd.numbers = RationalizeMode::dyadic;
        else if (mode == "cfrac")
            rd.numbers = RationalizeMode::cfrac;
        else
            throw Malformed("'numbers' must be \"dyadic\" or \"cfrac\"");
    }

    Config config;
    if (auto it = doc.find("config"); it != doc.end()) {
        if (!it->is_object()) throw Malformed("config must be an object");
        for (const auto& [k, v] : it->items())
            config.set(k, v.is_string() ? v.get<std::string>() : v.dump());
    }
    for (const auto& o : overrides) config.set(o);

    const json& dyn = rd.field(doc, "dynamics");
    if (!dyn.is_array() || dyn.empty()) throw Malformed("dynamics must be a non-empty list of polynomials");
    std::vector<std::string> rhs;
    for (const auto& f : dyn) {
        if (!f.is_string()) throw Malformed("each dynamics entry must be a polynomial string");
        rhs.push_back(f.get<std::string>());
    }
    const Box x_safe = rd.box(rd.field(doc, "state_box"));
    const Box u_adm = doc.contains("input_box") ? rd.box(doc["input_box"]) : Box{};
    const RationalVector w = doc.contains("disturbance") ? rd.vector(doc["disturbance"]) : RationalVector{};

    const auto states = names("x", rhs.size());
    const auto inputs = names("u", u_adm.size());
    std::vector<Variable> dims;
    for (const auto& s : states) dims.push_back({s, VarRole::state});
    for (const auto& u : inputs) {
        dims.push_back({u, VarRole::input});
        rhs.push_back("0");
    }
    OdeSystem sys(dims, names("w", w.size()), rhs, w, rd.number(rd.field(doc, "dt")), config.degree_cap);

    std::vector<std::string> xu = states;
    xu.insert(xu.end(), inputs.begin(), inputs.end());
    ProblemSpec ps{std::move(sys),
                   states,
                   inputs,
                   rd.zonotope(rd.field(doc, "envelope"), xu),
                   rd.zonotope(rd.field(doc, "X0"), states),
                   x_safe,
                   u_adm,
                   config};
    if (ps.x_safe.size() != states.size()) throw Malformed("state_box needs one interval per state");
    ps.validate();
    return ps;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

ProblemSpec load_problem(const std::string& path, const std::vector<std::string>& overrides) {
    return problem_from_json(read_json_file(path), overrides);
}

}  // namespace envcert
