#include "envcert/certificate.hpp"

#include "envcert/error.hpp"

namespace envcert {

using nlohmann::json;

const std::vector<std::string>& condition_names() {
    static const std::vector<std::string> names{
        std::string(condition::taylor_model), std::string(condition::invariance), std::string(condition::safety),
        std::string(condition::admissibility), std::string(condition::initial_coverage)};
    return names;
}

TaylorModelRecord make_record(const TaylorModel& tm) {
    TaylorModelRecord r;
    r.order = tm.order;
    r.dt = tm.dt;
    for (const auto& v : tm.space->variables()) r.variables.push_back(v.name);
    for (const auto& pi : tm.p) r.p.emplace_back(pi.terms().begin(), pi.terms().end());
    r.remainder = tm.remainder;
    return r;
}

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw Malformed(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw Malformed(std::string("missing field '") + key + "'");
    return *it;
}

std::string text(const json& j) {
    if (!j.is_string()) throw Malformed("expected a string, got " + j.dump());
    return j.get<std::string>();
}

Rational rational(const json& j) {
    try {
        return parse_rational(text(j));
    } catch (const ParseError& e) {
        throw Malformed(e.what());
    }
}

unsigned small_integer(const json& j) {
    const Rational q = rational(j);
    if (q.get_den() != 1 || sgn(q) < 0 || q > 1'000'000) throw Malformed("expected a small non-negative integer");
    return static_cast<unsigned>(q.get_num().get_ui());
}

json vector_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

RationalVector vector_from(const json& j) {
    if (!j.is_array()) throw Malformed("expected an array of rationals");
    RationalVector out;
    for (const auto& x : j) out.push_back(rational(x));
    return out;
}

json matrix_json(const RationalMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (const auto& x : m.row(r)) row.push_back(to_string(x));
        out.push_back(std::move(row));
    }
    return out;
}

/// Rows given as nested arrays; an empty list is a 0 x 0 matrix.
RationalMatrix matrix_from(const json& j) {
    if (!j.is_array()) throw Malformed("expected a matrix as a list of rows");
    std::vector<RationalVector> rows;
    for (const auto& r : j) rows.push_back(vector_from(r));
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Malformed("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

json strings_json(const std::vector<std::string>& v) { return json(v); }

std::vector<std::string> strings_from(const json& j) {
    if (!j.is_array()) throw Malformed("expected an array of strings");
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(text(x));
    return out;
}

json interval_json(const Interval& iv) { return json{{"lo", to_string(iv.lo())}, {"hi", to_string(iv.hi())}}; }

Interval interval_from(const json& j) {
    if (!j.is_object() || j.size() != 2) throw Malformed("expected an interval {lo, hi}");
    const Rational lo = rational(field(j, "lo"));
    const Rational hi = rational(field(j, "hi"));
    if (hi < lo) throw Malformed("interval with hi < lo");
    return Interval(lo, hi);
}

json terms_json(const std::vector<std::pair<Monomial, Rational>>& terms) {
    json out = json::array();
    for (const auto& [m, c] : terms) {
        json e = json::array();
        for (auto k : m) e.push_back(std::to_string(k));
        out.push_back(json{{"exponents", std::move(e)}, {"coeff", to_string(c)}});
    }
    return out;
}

std::vector<std::pair<Monomial, Rational>> terms_from(const json& j) {
    if (!j.is_array()) throw Malformed("polynomial must be a list of terms");
    std::vector<std::pair<Monomial, Rational>> out;
    for (const auto& t : j) {
        const json& e = field(t, "exponents");
        if (!e.is_array()) throw Malformed("exponents must be a list");
        Monomial m;
        for (const auto& k : e) m.push_back(small_integer(k));
        out.emplace_back(std::move(m), rational(field(t, "coeff")));
    }
    return out;
}

json taylor_json(const TaylorModelRecord& r) {
    json polys = json::array();
    for (const auto& terms : r.p) polys.push_back(terms_json(terms));
    json rem = json::array();
    for (const auto& f : r.remainder) rem.push_back(json{{"a", interval_json(f.a)}, {"b", interval_json(f.b)}});
    return json{{"order", std::to_string(r.order)},
                {"dt", to_string(r.dt)},
                {"variables", strings_json(r.variables)},
                {"p", std::move(polys)},
                {"I", std::move(rem)}};
}

TaylorModelRecord taylor_from(const json& j) {
    TaylorModelRecord r;
    r.order = small_integer(field(j, "order"));
    r.dt = rational(field(j, "dt"));
    r.variables = strings_from(field(j, "variables"));
    const json& polys = field(j, "p");
    if (!polys.is_array()) throw Malformed("p must be a list of polynomials");
    for (const auto& poly : polys) r.p.push_back(terms_from(poly));
    const json& rem = field(j, "I");
    if (!rem.is_array()) throw Malformed("remainder must be an array");
    for (const auto& f : rem) r.remainder.push_back({interval_from(field(f, "a")), interval_from(field(f, "b"))});
    if (r.remainder.size() != r.p.size()) throw Malformed("one remainder per polynomial expected");
    return r;
}

template <typename T, typename F>
json optional_json(const std::optional<T>& v, F convert) {
    return v ? convert(*v) : json(nullptr);
}

}  // namespace

json polynomial_to_json(const Polynomial& p) {
    return terms_json({p.terms().begin(), p.terms().end()});
}

PolyVector record_polynomials(const TaylorModelRecord& r, const VarSpacePtr& space) {
    PolyVector out;
    const GradedOrder before;
    for (const auto& terms : r.p) {
        Polynomial poly(space);
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const auto& [m, c] = terms[k];
            if (m.size() != space->size()) throw Malformed("exponent vector length differs from the variable count");
            if (sgn(c) == 0) throw Malformed("zero coefficient stored");
            if (k > 0 && !before(terms[k - 1].first, m)) throw Malformed("terms are not in strict term order");
            poly.add_term(m, c);
        }
        out.push_back(std::move(poly));
    }
    return out;
}

json zonotope_to_json(const Zonotope& z) {
    return json{{"c", vector_json(z.c)}, {"G", matrix_json(z.G)}, {"roles", strings_json(z.labels)}};
}

Zonotope zonotope_from_json(const json& j) {
    try {
        RationalVector c = vector_from(field(j, "c"));
        RationalMatrix g = matrix_from(field(j, "G"));
        if (g.rows() != c.size()) throw Malformed("generator rows differ from the centre length");
        return Zonotope(std::move(c), std::move(g), strings_from(field(j, "roles")));
    } catch (const DimensionMismatch& e) {
        throw Malformed(e.what());
    }
}

json witness_to_json(const ContainmentWitness& w) {
    return json{{"Gamma", matrix_json(w.gamma)},
                {"beta", vector_json(w.beta)},
                {"Hplus", matrix_json(w.hplus)},
                {"epsilon", to_string(w.epsilon)}};
}

ContainmentWitness witness_from_json(const json& j) {
    ContainmentWitness w;
    w.gamma = matrix_from(field(j, "Gamma"));
    w.beta = vector_from(field(j, "beta"));
    w.hplus = matrix_from(field(j, "Hplus"));
    w.epsilon = rational(field(j, "epsilon"));
    return w;
}

json to_json(const Certificate& cert) {
    json conditions = json::array();
    for (const auto& c : cert.conditions)
        conditions.push_back(json{{"name", c.name},
                                  {"verdict", std::string(to_string(c.verdict))},
                                  {"witness", optional_json(c.witness, witness_to_json)}});
    return json{{"schema", cert.schema},
                {"tool_version", cert.version},
                {"problem_hash", cert.problem_hash},
                {"config", json(cert.config.entries())},
                {"taylor_model", optional_json(cert.taylor_model, taylor_json)},
                {"reach_discrete", optional_json(cert.reach_discrete, zonotope_to_json)},
                {"reach_interval", optional_json(cert.reach_interval, zonotope_to_json)},
                {"conditions", std::move(conditions)},
                {"verdict", std::string(to_string(cert.verdict))}};
}

Certificate certificate_from_json(const json& j) {
    Certificate cert;
    cert.schema = text(field(j, "schema"));
    if (cert.schema != certificate_schema) throw Malformed("unsupported certificate schema '" + cert.schema + "'");
    cert.version = text(field(j, "tool_version"));
    cert.problem_hash = text(field(j, "problem_hash"));

    const json& cfg = field(j, "config");
    if (!cfg.is_object()) throw Malformed("config must be an object");
    std::map<std::string, std::string> entries;
    for (const auto& [k, v] : cfg.items()) entries[k] = text(v);
    try {
        cert.config = Config::from_entries(entries);
    } catch (const ParseError& e) {
        throw Malformed(e.what());
    }
    if (cert.config.entries() != entries) throw Malformed("config is not in canonical form");

    const json& tm = field(j, "taylor_model");
    if (!tm.is_null()) cert.taylor_model = taylor_from(tm);
    const json& rd = field(j, "reach_discrete");
    if (!rd.is_null()) cert.reach_discrete = zonotope_from_json(rd);
    const json& ri = field(j, "reach_interval");
    if (!ri.is_null()) cert.reach_interval = zonotope_from_json(ri);

    const json& conditions = field(j, "conditions");
    if (!conditions.is_array()) throw Malformed("conditions must be an array");
    for (const auto& c : conditions) {
        ConditionRecord rec;
        rec.name = text(field(c, "name"));
        rec.verdict = parse_verdict(text(field(c, "verdict")));
        const json& w = field(c, "witness");
        if (!w.is_null()) rec.witness = witness_from_json(w);
        cert.conditions.push_back(std::move(rec));
    }
    std::vector<std::string> names;
    for (const auto& c : cert.conditions) names.push_back(c.name);
    if (names != condition_names()) throw Malformed("certificate must list the five conditions in order");
    cert.verdict = parse_verdict(text(field(j, "verdict")));
    if (j.size() != 9) throw Malformed("unexpected top-level fields");
    return cert;
}

}  // namespace envcert
