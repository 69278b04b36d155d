#pragma once

#include <random>
#include <string>
#include <vector>

#include "../core/poly.hpp"

namespace sgikit::model {

enum class StructureClass { general_lti, positive, compartmental };

std::string to_string(StructureClass c);

/// A parsed LTI model structure: parameter ring, system matrices with
/// polynomial entries, and class flags. Immutable after parsing.
struct StructureSpec {
    std::string name;
    RingPtr params;             // ordered parameter list
    int n = 0, m = 0, k = 0;    // states / inputs / outputs (m = 0: uncontrolled)
    std::vector<std::vector<MultiPoly>> A; // n x n
    std::vector<std::vector<MultiPoly>> B; // n x m
    std::vector<std::vector<MultiPoly>> C; // k x n
    std::vector<MultiPoly> x0;             // n
    StructureClass clazz = StructureClass::general_lti;
    // Parameters whose domain is all of R rather than R+ (default: none).
    std::vector<std::string> unsigned_free_params;

    int p() const { return params->size(); }
    bool param_positive(const std::string& name) const;
};

/// Input signals with rational Laplace transforms.
struct InputSignal {
    enum class Kind { impulse, step, ramp, exponential, none };
    Kind kind = Kind::impulse;
    Rat rate = Rat(0); // exponential only

    static InputSignal impulse() { return {Kind::impulse, Rat(0)}; }
    static InputSignal step() { return {Kind::step, Rat(0)}; }
    static InputSignal ramp() { return {Kind::ramp, Rat(0)}; }
    static InputSignal exponential(const Rat& a) { return {Kind::exponential, a}; }
    static InputSignal none() { return {Kind::none, Rat(0)}; }

    /// Laplace transform as (numerator, denominator) in the given ring,
    /// where s_var indexes the transform variable.
    std::pair<MultiPoly, MultiPoly> laplace(const RingPtr& ring, int s_var) const;
    /// Signal value at t = 0+ (used by the non-degeneracy check).
    Rat value_at_zero() const;
    std::string describe() const;
};

struct InputSet {
    enum class Mode { full, restricted, uncontrolled };
    Mode mode = Mode::uncontrolled;
    std::vector<InputSignal> signals; // restricted mode only

    static InputSet full() { return {Mode::full, {}}; }
    static InputSet restricted(std::vector<InputSignal> sigs) {
        return {Mode::restricted, std::move(sigs)};
    }
    static InputSet uncontrolled() { return {Mode::uncontrolled, {}}; }
    std::string describe() const;
};

/// Parse a model file in the line-oriented grammar. Throws ParseError with
/// line/column on syntax errors, dimension mismatches, and undeclared
/// parameters.
StructureSpec parse_structure(const std::string& text);
StructureSpec parse_structure_file(const std::string& path);

/// Render a StructureSpec back into the model-file grammar.
std::string print_structure(const StructureSpec& spec);

struct Violation {
    std::string where;
    std::string detail;
    bool definite = true; // false: syntactic test inconclusive, not a proven violation
};

/// Conservation-of-mass check: empty iff all off-diagonal A entries, all
/// B/C/x0 entries, and all negated column-sum excesses have non-negative
/// coefficients. Inconclusive entries are flagged rather than rejected.
std::vector<Violation> check_compartmental(const StructureSpec& spec);

/// Randomized check that the structure does not start at (and stay in) an
/// equilibrium: A(t)x0(t) (+ B u(0) when applicable) is nonzero at `trials`
/// random positive parameter draws. Impulse inputs displace any equilibrium.
bool check_nondegenerate_start(const StructureSpec& spec, const InputSet& input,
                               int trials, uint64_t seed);

/// Validate an input set against the structure dimensions.
void validate_input_set(const StructureSpec& spec, const InputSet& input);

} // namespace sgikit::model
