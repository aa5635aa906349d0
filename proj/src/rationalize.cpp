#include "envcert/rationalize.hpp"

#include "envcert/error.hpp"

#include <cmath>

namespace envcert {

Rational rationalize_dyadic(double v) {
    if (!std::isfinite(v)) throw NotFinite("cannot rationalize a non-finite value");
    return Rational(v);
}

Rational rationalize(double v, std::uint64_t max_denominator) {
    if (max_denominator == 0) throw DimensionMismatch("max_denominator must be positive");
    const Rational exact = rationalize_dyadic(v);
    const mpz_class cap(static_cast<unsigned long>(max_denominator));

    // Convergents h_k / k_k of the continued fraction of `exact`.
    mpz_class h_prev(1), h_prev2(0), k_prev(0), k_prev2(1);
    mpz_class num = exact.get_num();
    mpz_class den = exact.get_den();
    Rational best(0);
    bool have_best = false;
    while (den != 0) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_class h = a * h_prev + h_prev2;
        mpz_class k = a * k_prev + k_prev2;
        if (k > cap) break;
        best = Rational(h, k);
        best.canonicalize();
        have_best = true;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        mpz_class rem = num - a * den;
        num = den;
        den = rem;
    }
    // The first convergent floor(v)/1 always fits; have_best only guards the loop shape.
    return have_best ? best : Rational(0);
}

Rational rationalize(double v, RationalizeMode mode, std::uint64_t max_denominator) {
    return mode == RationalizeMode::dyadic ? rationalize_dyadic(v) : rationalize(v, max_denominator);
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace envcert
