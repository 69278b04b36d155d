#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monomial.hpp"
#include "order.hpp"
#include "rational.hpp"
#include "ring.hpp"

namespace sgikit {

/// Sparse multivariate polynomial with exact rational coefficients over a
/// shared ring of named indeterminates. Immutable in spirit: all operations
/// return new values. No stored term has coefficient zero.
class MultiPoly {
public:
    using Terms = std::map<Monomial, Rat>;

    MultiPoly() : ring_(make_ring({})) {}
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MultiPoly zero(RingPtr ring) { return MultiPoly(std::move(ring)); }
    static MultiPoly constant(RingPtr ring, const Rat& c);
    static MultiPoly variable(RingPtr ring, int index);
    static MultiPoly variable(RingPtr ring, const std::string& name);
    static MultiPoly term(RingPtr ring, Monomial m, const Rat& c);

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Value of a constant polynomial (0 for the zero polynomial).
    Rat constant_value() const;

    int total_degree() const; // -1 for the zero polynomial
    int degree_in(int var) const;

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rat& c) const;
    MultiPoly pow(unsigned e) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Exact evaluation; assignment indexed by ring position, must cover
    /// the whole ring.
    Rat eval(const std::vector<Rat>& assignment) const;
    /// Named-assignment evaluation; errors if a variable appearing in the
    /// polynomial is missing from the assignment.
    Rat eval(const std::map<std::string, Rat>& assignment) const;

    /// Partial substitution of rational values; result stays in the ring.
    MultiPoly substitute(const std::map<int, Rat>& values) const;

    /// Formal partial derivative.
    MultiPoly derivative(int var) const;

    /// Move this polynomial into a ring containing all of its variables,
    /// matched by name.
    MultiPoly promoted(const RingPtr& target) const;
    /// Positional rename: target must have the same arity.
    MultiPoly renamed(const RingPtr& target) const;

    Monomial leading_monomial(const MonomialOrder& order) const;
    Rat leading_coeff(const MonomialOrder& order) const;
    const Rat& coeff(const Monomial& m) const;
    /// Scaled so the leading coefficient under `order` is 1.
    MultiPoly monic(const MonomialOrder& order) const;

    /// View as univariate in `var`: coefficient polynomials by power,
    /// index 0 = constant term. Coefficients live in the same ring.
    std::vector<MultiPoly> coeffs_in(int var) const;
    static MultiPoly from_coeffs_in(const RingPtr& ring, int var,
                                    const std::vector<MultiPoly>& coeffs);

    /// Canonical text form, e.g. `k01*k12*k23 + 2*k21 - 3/4*s^2`.
    std::string to_string() const;
    static MultiPoly parse(const std::string& text, const RingPtr& ring);

private:
    void add_term(const Monomial& m, const Rat& c);
    static void align(const MultiPoly& a, const MultiPoly& b, MultiPoly& ap,
                      MultiPoly& bp);

    RingPtr ring_;
    Terms terms_;
};

inline MultiPoly operator*(const Rat& c, const MultiPoly& p) { return p * c; }

struct DivisionResult {
    std::vector<MultiPoly> quotients;
    MultiPoly remainder;
    long steps = 0;
};

/// Multivariate division of p by an ordered list of divisors under `order`.
/// The remainder has no term divisible by any divisor's leading term.
DivisionResult divide(const MultiPoly& p, const std::vector<MultiPoly>& divisors,
                      const MonomialOrder& order, long step_budget = -1);

/// Quotient a/b when the division is exact, std::nullopt otherwise.
std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b);

/// Multivariate GCD over the rationals, normalized with leading coefficient 1
/// under the ring's default grevlex order. Errors on zero input.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

} // namespace sgikit
