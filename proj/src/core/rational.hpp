#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

namespace sgikit {

// Exact rational coefficients. mpq_class keeps values canonical:
// positive denominator, gcd(|num|, den) = 1.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) {
    return r.get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) {
    return r.get_den() == 1;
}

// Uniform positive rational with numerator and denominator in [1, bound].
inline Rat random_positive_rat(std::mt19937_64& rng, long bound = 10000) {
    std::uniform_int_distribution<long> dist(1, bound);
    return rat(dist(rng), dist(rng));
}

// Exact square root of a non-negative rational, if it is itself rational.
inline bool exact_sqrt(const Rat& r, Rat& out) {
    if (sgn(r) < 0) return false;
    Int num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    out = Rat(sn, sd);
    return true;
}

} // namespace sgikit
