#pragma once

#include <vector>

#include "../core/rational.hpp"

namespace sgikit::ident {

struct RealRoot {
    bool rational = false;
    Rat value;   // exact value when rational
    Rat lo, hi;  // isolating interval otherwise (lo < root <= hi)
};

/// All real roots (without multiplicity) of the polynomial with rational
/// coefficients c[0] + c[1] x + ... Rational roots are returned exactly;
/// irrational roots as Sturm-isolated intervals narrower than `width`.
std::vector<RealRoot> real_roots(std::vector<Rat> coeffs,
                                 const Rat& width = Rat(1, 1000000));

/// Exact evaluation of a coefficient-vector polynomial.
Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x);

} // namespace sgikit::ident
