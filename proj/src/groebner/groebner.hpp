#pragma once

#include <optional>
#include <vector>

#include "../core/poly.hpp"

namespace sgikit::groebner {

struct Config {
    // Reduction steps across the whole basis computation.
    long step_budget = 1000000;
};

/// A polynomial ideal with a lazily computed reduced Groebner basis.
class Ideal {
public:
    Ideal(std::vector<MultiPoly> generators, MonomialOrder order);

    const RingPtr& ring() const { return ring_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<MultiPoly>& generators() const { return generators_; }

    bool basis_computed() const { return basis_.has_value(); }
    /// The unique reduced Groebner basis (every element monic, no term of any
    /// element divisible by another element's leading term).
    const std::vector<MultiPoly>& reduced_basis() const;

    void compute_basis(const Config& cfg = {});

private:
    RingPtr ring_;
    MonomialOrder order_;
    std::vector<MultiPoly> generators_;
    std::optional<std::vector<MultiPoly>> basis_;
};

/// Unique remainder of p modulo the reduced basis; zero iff p is a member.
MultiPoly normal_form(const MultiPoly& p, const Ideal& ideal);

/// True iff a and b generate the same ideal (orders may differ).
bool ideal_equal(const Ideal& a, const Ideal& b);

struct IdealAnalysis {
    std::vector<MultiPoly> reduced_basis;
    // -1 encodes the unit ideal (empty variety).
    int dimension = 0;
    // Vector-space dimension of the quotient ring when dimension == 0.
    bool degree_finite = false;
    long degree = 0;
};

/// Dimension via the combinatorial test on leading terms; quotient degree
/// (number of standard monomials) when zero-dimensional.
IdealAnalysis dimension_and_degree(const Ideal& ideal);

/// Convenience: compute the reduced basis of `gens` under `order`.
Ideal buchberger(std::vector<MultiPoly> gens, MonomialOrder order,
                 const Config& cfg = {});

} // namespace sgikit::groebner
