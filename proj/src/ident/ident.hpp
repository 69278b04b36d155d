#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "../groebner/groebner.hpp"
#include "../model/model.hpp"
#include "../transfer/transfer.hpp"

namespace sgikit::ident {

/// The specialized test system phi(theta') = phi(theta*) in the primed
/// parameter ring.
struct TestSystem {
    RingPtr params;  // original parameter ring
    RingPtr primed;  // theta' ring (names suffixed with ')
    std::vector<MultiPoly> equations; // in primed
    std::vector<Rat> specialization;  // theta*, indexed like params
    std::vector<bool> positive;       // per-parameter positive-domain flag
    uint64_t seed = 0;
};

TestSystem build_test_system(const transfer::InvariantVector& inv,
                             const model::StructureSpec& spec, uint64_t seed);

/// Variant with a caller-chosen specialization theta* (indexed like
/// spec.params). Throws DegenerateError if any equation collapses.
TestSystem build_test_system(const transfer::InvariantVector& inv,
                             const model::StructureSpec& spec,
                             const std::vector<Rat>& specialization);

/// Max over trials of the exact rank of [d phi_i / d theta_j] at random
/// positive rational parameter points.
int jacobian_rank_test(const transfer::InvariantVector& inv,
                       const model::StructureSpec& spec, int trials,
                       uint64_t seed);

enum class Classification { SGI, SLI, SU };

std::string to_string(Classification c);

struct SystemAnalysis {
    int dimension = 0;
    bool degree_finite = false;
    long degree = 0;
    std::vector<std::string> forced_params; // theta'_i = theta*_i in the ideal
};

SystemAnalysis classify_system(const TestSystem& ts, const MonomialOrder& order,
                               const groebner::Config& cfg = {});

struct Verdict {
    Classification classification = Classification::SU;
    bool input_restricted = false; // verdict is relative to a restricted input set
    int dimension = 0;
    bool degree_finite = false;
    long degree = 0;
    std::vector<std::string> globally_identifiable;
    int jacobian_rank = 0;
    std::vector<uint64_t> seeds;
    std::vector<std::string> warnings;

    std::string label() const; // "SLI", "U-SU", ...
};

/// Full classification: two independent specializations (seed, seed+1),
/// grevlex Groebner analysis, per-parameter identifiability, Jacobian
/// cross-check. Disagreeing seeds yield the weaker classification plus a
/// warning.
Verdict classify(const transfer::InvariantVector& inv,
                 const model::StructureSpec& spec, const model::InputSet& input,
                 uint64_t seed, const groebner::Config& cfg = {});

struct Solution {
    // Exact rational coordinates, keyed by original parameter name.
    std::map<std::string, Rat> values;
    bool rational = true;
    // For irrational coordinates: isolating interval per variable.
    std::map<std::string, std::pair<Rat, Rat>> intervals;
    bool feasible = false; // inside the declared (positive) domain
    std::string note;
};

/// Enumerate the solutions of a zero-dimensional test system by lex-basis
/// triangularization and exact back-substitution. Irrational coordinates are
/// isolated to intervals and not extended further.
std::vector<Solution> enumerate_solutions(const TestSystem& ts,
                                          long degree_bound = 8,
                                          const groebner::Config& cfg = {});

} // namespace sgikit::ident
