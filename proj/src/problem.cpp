#include "envcert/problem.hpp"

#include "envcert/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <sstream>

namespace envcert {

void ProblemSpec::validate() const {
    const std::size_t n = states.size();
    const std::size_t m = inputs.size();
    if (sys.dims() != n + m) throw DimensionMismatch("dynamics cover " + std::to_string(sys.dims()) +
                                                     " dimensions, expected " + std::to_string(n + m));
    for (std::size_t i = 0; i < n + m; ++i)
        if (sys.dim_names()[i] != (i < n ? states[i] : inputs[i - n]))
            throw DimensionMismatch("dynamics variable order must be states then inputs");
    if (envelope.dim() != n + m) throw DimensionMismatch("envelope must live over (x, u)");
    if (x0.dim() != n) throw DimensionMismatch("initial set must live over x");
    if (x_safe.size() != n) throw DimensionMismatch("one safety interval per state");
    if (u_adm.size() != m) throw DimensionMismatch("one admissible interval per input");
}

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
    std::vector<std::size_t> out;
    for (std::size_t i = from; i < to; ++i) out.push_back(i);
    return out;
}

void write_vector(std::ostream& os, const RationalVector& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
    os << ']';
}

void write_zonotope(std::ostream& os, const std::string& name, const Zonotope& z) {
    os << name << ".c=";
    write_vector(os, z.c);
    os << '\n' << name << ".G=" << z.G.rows() << 'x' << z.G.cols() << '[';
    for (std::size_t r = 0; r < z.G.rows(); ++r)
        for (std::size_t c = 0; c < z.G.cols(); ++c) os << (r || c ? "," : "") << to_string(z.G(r, c));
    os << "]\n";
}

void write_box(std::ostream& os, const std::string& name, const Box& box) {
    os << name << "=[";
    for (std::size_t i = 0; i < box.size(); ++i)
        os << (i ? "," : "") << '[' << to_string(box[i].lo()) << ',' << to_string(box[i].hi()) << ']';
    os << "]\n";
}

}  // namespace

Zonotope ProblemSpec::envelope_x() const {
    Zonotope z = project(envelope, range(0, states.size()));
    z.labels = states;
    return z;
}

Zonotope ProblemSpec::envelope_u() const {
    Zonotope z = project(envelope, range(states.size(), states.size() + inputs.size()));
    z.labels = inputs;
    return z;
}

Zonotope ProblemSpec::containment_target() const {
    Zonotope z = envelope_x();
    RationalMatrix g = z.G.drop_zero_cols();
    if (config.inflate_outer) g = hstack(g, *config.inflate_outer * RationalMatrix::identity(z.dim()));
    return Zonotope(z.c, std::move(g), z.labels);
}

Zonotope ProblemSpec::state_rows(const Zonotope& z) const {
    Zonotope out = project(z, range(0, states.size()));
    out.labels = states;
    return out;
}

RemainderSearch ProblemSpec::remainder_search(unsigned threads) const {
    RemainderSearch s;
    s.initial_slope = config.initial_slope;
    s.max_doublings = config.max_doublings;
    s.mode = config.disturbance;
    s.subdivision_depth = config.subdivision;
    s.threads = threads;
    return s;
}

std::string canonical_text(const ProblemSpec& ps) {
    std::ostringstream os;
    os << "envcert-problem-v1\n";
    os << "space=";
    for (const auto& v : ps.sys.space()->variables()) os << v.name << ':' << to_string(v.role) << ';';
    os << '\n';
    for (std::size_t i = 0; i < ps.sys.dims(); ++i) os << "f." << ps.sys.dim_names()[i] << '=' << ps.sys.f()[i].to_string() << '\n';
    os << "W=";
    write_vector(os, ps.sys.disturbance_bounds());
    os << "\ndt=" << to_string(ps.sys.dt()) << '\n';
    write_zonotope(os, "E", ps.envelope);
    write_zonotope(os, "X0", ps.x0);
    write_box(os, "X_safe", ps.x_safe);
    write_box(os, "U_adm", ps.u_adm);
    for (const auto& [k, v] : ps.config.entries()) os << "config." << k << '=' << v << '\n';
    return os.str();
}

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Malformed("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string problem_hash(const ProblemSpec& ps) { return sha256_hex(canonical_text(ps)); }

}  // namespace envcert
