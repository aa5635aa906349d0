#include "envcert/rational.hpp"

#include "envcert/error.hpp"

#include <cctype>

namespace envcert {

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational pow10(int exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) return Rational(p);
    Rational r(mpz_class(1), p);
    r.canonicalize();
    return r;
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational result(1);
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= b;
        b *= b;
        exponent >>= 1u;
    }
    return result;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_decimal(std::string_view text, std::string_view original) {
    // [sign] digits [. digits] [e|E [sign] digits]
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    int exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = text.substr(e + 1);
        text = text.substr(0, e);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            throw ParseError("bad exponent in number '" + std::string(original) + "'");
        exponent = std::stoi(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw ParseError("malformed number '" + std::string(original) + "'");
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<int>(frac.size());
    } else {
        if (!all_digits(text)) throw ParseError("malformed number '" + std::string(original) + "'");
        digits = std::string(text);
    }
    Rational value(mpz_class(digits, 10));
    value *= pow10(exponent);
    if (negative) value = -value;
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view original = text;
    text = trim(text);
    if (text.empty()) throw ParseError("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(trim(text.substr(0, slash)), original);
        Rational den = parse_decimal(trim(text.substr(slash + 1)), original);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(original) + "'");
        return Rational(num / den);
    }
    return parse_decimal(text, original);
}

}  // namespace envcert
