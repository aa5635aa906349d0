#include "envcert/polynomial.hpp"

#include "envcert/error.hpp"

#include <cctype>
#include <numeric>
#include <set>

namespace envcert {

std::string_view to_string(VarRole role) {
    switch (role) {
        case VarRole::time: return "time";
        case VarRole::parameter: return "parameter";
        case VarRole::remainder: return "remainder";
        case VarRole::disturbance: return "disturbance";
        case VarRole::state: return "state";
        case VarRole::input: return "input";
        case VarRole::error: return "error";
    }
    return "unknown";
}

VarSpace::VarSpace(std::vector<Variable> vars, unsigned degree_cap)
    : vars_(std::move(vars)), degree_cap_(degree_cap) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!seen.insert(vars_[i].name).second) throw DomainMismatch("duplicate variable '" + vars_[i].name + "'");
        if (vars_[i].role == VarRole::time) {
            if (time_) throw DomainMismatch("more than one time variable");
            time_ = i;
        }
    }
}

std::optional<std::size_t> VarSpace::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::size_t VarSpace::require(std::string_view name) const {
    if (auto i = index_of(name)) return *i;
    throw DomainMismatch("unknown variable '" + std::string(name) + "'");
}

std::vector<std::size_t> VarSpace::indices_with_role(VarRole role) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].role == role) out.push_back(i);
    return out;
}

VarSpacePtr make_space(std::vector<Variable> vars, unsigned degree_cap) {
    return std::make_shared<const VarSpace>(std::move(vars), degree_cap);
}

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

bool GradedOrder::operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return b < a;
}

void require_same_space(const Polynomial& a, const Polynomial& b) {
    if (a.space() != b.space() && !(*a.space() == *b.space()))
        throw DomainMismatch("polynomials live over different variable spaces");
}

Polynomial::Polynomial(VarSpacePtr space) : space_(std::move(space)) {
    if (!space_) throw DomainMismatch("null variable space");
}

Polynomial Polynomial::constant(VarSpacePtr space, const Rational& value) {
    Polynomial p(space);
    p.add_term(Monomial(p.space_->size(), 0), value);
    return p;
}

Polynomial Polynomial::variable(VarSpacePtr space, std::string_view name) {
    const std::size_t i = space->require(name);
    return variable(std::move(space), i);
}

Polynomial Polynomial::variable(VarSpacePtr space, std::size_t index) {
    Polynomial p(space);
    Monomial m(p.space_->size(), 0);
    m.at(index) = 1;
    p.add_term(m, Rational(1));
    return p;
}

Polynomial Polynomial::monomial(VarSpacePtr space, Monomial exponents, const Rational& coeff) {
    Polynomial p(space);
    if (exponents.size() != p.space_->size()) throw DomainMismatch("monomial arity");
    p.add_term(exponents, coeff);
    return p;
}

unsigned Polynomial::degree() const {
    // Terms are sorted by total degree, so the last one is the highest.
    return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& coeff) {
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    require_same_space(*this, other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    require_same_space(*this, other);
    for (const auto& [m, c] : other.terms_) add_term(m, Rational(-c));
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

bool Polynomial::operator==(const Polynomial& other) const {
    require_same_space(*this, other);
    return terms_ == other.terms_;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = sgn(c) < 0;
        const Rational magnitude = abs(c);
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string factors;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += (*space_)[i].name;
            if (m[i] > 1) factors += "^" + std::to_string(m[i]);
        }
        if (factors.empty()) {
            out += envcert::to_string(magnitude);
        } else if (magnitude == 1) {
            out += factors;
        } else {
            out += envcert::to_string(magnitude) + "*" + factors;
        }
    }
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    r += b;
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    r -= b;
    return r;
}

Polynomial operator-(const Polynomial& a) {
    Polynomial r = a;
    r *= Rational(-1);
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_space(a, b);
    Polynomial r(a.space());
    if (a.is_zero() || b.is_zero()) return r;
    const unsigned cap = a.space()->degree_cap();
    if (a.degree() + b.degree() > cap)
        throw DegreeCapExceeded("product degree " + std::to_string(a.degree() + b.degree()) + " exceeds cap " +
                                std::to_string(cap));
    const std::size_t n = a.space()->size();
    Monomial m(n);
    Rational c;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            for (std::size_t i = 0; i < n; ++i) m[i] = ma[i] + mb[i];
            c = ca * cb;
            r.add_term(m, c);
        }
    }
    return r;
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
    Polynomial r = a;
    r *= s;
    return r;
}

Polynomial pow(const Polynomial& p, unsigned k) {
    Polynomial result = Polynomial::constant(p.space(), Rational(1));
    Polynomial base = p;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

Polynomial integrate_time(const Polynomial& p) {
    const auto t = p.space()->time_index();
    if (!t) throw DomainMismatch("integrate_time needs a time variable");
    if (p.degree() + 1 > p.space()->degree_cap())
        throw DegreeCapExceeded("integration would exceed degree cap " + std::to_string(p.space()->degree_cap()));
    Polynomial r(p.space());
    for (const auto& [m, c] : p.terms()) {
        Monomial shifted = m;
        shifted[*t] += 1;
        r.add_term(shifted, Rational(c / shifted[*t]));
    }
    return r;
}

Polynomial derivative(const Polynomial& p, std::size_t var) {
    if (var >= p.space()->size()) throw DomainMismatch("derivative variable out of range");
    Polynomial r(p.space());
    for (const auto& [m, c] : p.terms()) {
        if (m[var] == 0) continue;
        Monomial lowered = m;
        lowered[var] -= 1;
        r.add_term(lowered, Rational(c * m[var]));
    }
    return r;
}

Polynomial derivative(const Polynomial& p, std::string_view var) { return derivative(p, p.space()->require(var)); }

PolyVector gradient(const Polynomial& p, std::span<const std::string> vars) {
    PolyVector g;
    g.reserve(vars.size());
    for (const auto& v : vars) g.push_back(derivative(p, v));
    return g;
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> images, const VarSpacePtr& target) {
    const std::size_t n = p.space()->size();
    if (images.size() != n) throw DomainMismatch("compose needs one image per variable");
    for (const auto& img : images)
        if (img.space() != target && !(*img.space() == *target))
            throw DomainMismatch("compose image outside the target space");

    // powers[i][k] = images[i]^k, built lazily.
    std::vector<std::vector<Polynomial>> powers(n);
    auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, Rational(1)));
        while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
        return cache[k];
    };

    Polynomial result(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < n; ++i)
            if (m[i] > 0) term = term * power(i, m[i]);
        result += term;
    }
    return result;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings) {
    const auto& space = p.space();
    std::vector<Polynomial> images;
    images.reserve(space->size());
    for (std::size_t i = 0; i < space->size(); ++i) {
        auto it = bindings.find((*space)[i].name);
        images.push_back(it == bindings.end() ? Polynomial::variable(space, i) : it->second);
    }
    for (const auto& [name, _] : bindings) space->require(name);
    return compose(p, images, space);
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Rational>& bindings) {
    std::map<std::string, Polynomial> as_poly;
    for (const auto& [name, value] : bindings) as_poly.emplace(name, Polynomial::constant(p.space(), value));
    return substitute(p, as_poly);
}

Polynomial embed(const Polynomial& p, const VarSpacePtr& target) {
    const auto& source = *p.space();
    std::vector<std::optional<std::size_t>> map(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) map[i] = target->index_of(source[i].name);
    Polynomial r(target);
    for (const auto& [m, c] : p.terms()) {
        Monomial out(target->size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!map[i]) throw DomainMismatch("variable '" + source[i].name + "' missing from target space");
            out[*map[i]] = m[i];
        }
        r.add_term(out, c);
    }
    return r;
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
    if (point.size() != p.space()->size()) throw DomainMismatch("evaluation point arity");
    Rational sum(0);
    for (const auto& [m, c] : p.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term *= pow(point[i], m[i]);
        sum += term;
    }
    return sum;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarSpacePtr& space) : text_(text), space_(space) {}

    Polynomial parse() {
        Polynomial p = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expression() {
        Polynomial acc = term();
        while (true) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (true) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                Polynomial d = unary();
                if (d.degree() != 0 || d.is_zero()) fail("division by a non-constant or zero");
                acc *= Rational(1 / d.terms().begin()->second);
            } else {
                return acc;
            }
        }
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("exponent must be a non-negative integer");
            const unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (k > space_->degree_cap()) fail("exponent exceeds degree cap");
            return pow(base, static_cast<unsigned>(k));
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expression();
            if (!accept(')')) fail("missing ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t look = pos_ + 1;
                if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
                if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                    pos_ = look;
                    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                }
            }
            return Polynomial::constant(space_, parse_rational(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            const auto idx = space_->index_of(name);
            if (!idx) fail("unknown variable '" + std::string(name) + "'");
            return Polynomial::variable(space_, *idx);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const VarSpacePtr& space_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarSpacePtr& space) { return Parser(text, space).parse(); }

}  // namespace envcert
