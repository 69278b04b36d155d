#pragma once

#include <string>
#include <vector>

#include "../core/poly.hpp"
#include "../model/model.hpp"

namespace sgikit::transfer {

/// A rational function in s over the parameter ring, in canonical form:
/// gcd(num, den) = 1 and the denominator's top s-coefficient is the
/// constant 1.
struct RatFun {
    MultiPoly num;
    MultiPoly den;
    bool canonical = false;
    int cancelled_degree = 0;   // s-degree of the cancelled common factor
    bool fully_cancelled = false; // numerator was identically zero
};

struct FaddeevResult {
    // det(sI - A) = s^n + c_{n-1} s^{n-1} + ... + c_0, in ring_s.
    MultiPoly char_poly;
    // adj(sI - A) = sum_d M[d] s^d; entries in the parameter ring.
    std::vector<std::vector<std::vector<MultiPoly>>> adjugate;
};

struct TransferData {
    RingPtr ring_s;   // parameter ring extended with the transform variable
    int s_var = -1;   // index of s within ring_s
    MultiPoly char_poly;
    std::vector<RatFun> V;              // k entries
    std::vector<std::vector<RatFun>> W; // k x m, empty when m = 0
    bool not_generically_minimal = false;
};

struct Invariant {
    std::string label; // provenance: matrix entry and coefficient position
    MultiPoly poly;    // in the parameter ring
};

struct InvariantVector {
    std::vector<Invariant> entries;
    std::vector<std::string> dropped_constants; // labels of parameter-free coefficients
    bool deduplicated = true;
};

/// Characteristic polynomial and adjugate of (sI - A) by the
/// Faddeev-LeVerrier recurrence; division-free apart from exact integer
/// divisions.
FaddeevResult faddeev_leverrier(const std::vector<std::vector<MultiPoly>>& A,
                                const RingPtr& ring_s, int s_var);

/// Symbolic transfer matrices V = C(sI-A)^{-1}x0 and W = C(sI-A)^{-1}B,
/// every entry reduced to canonical form.
TransferData derive_transfer(const model::StructureSpec& spec);

/// Coefficients of the canonical transfer entries, deduplicated, with
/// parameter-free coefficients dropped. Restricted mode re-canonicalizes
/// V + W * L{u} per output before extracting coefficients.
InvariantVector extract_invariants(const TransferData& td,
                                   const model::InputSet& input_set);

/// Helpers shared with tests: rational-function arithmetic and reduction.
RatFun canonicalize(const MultiPoly& num, const MultiPoly& den, int s_var);
RatFun ratfun_add(const RatFun& a, const RatFun& b, int s_var);

} // namespace sgikit::transfer
