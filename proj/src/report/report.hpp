#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "../model/model.hpp"

namespace sgikit::report {

using json = nlohmann::ordered_json;

/// Options shared by the analysis entry points. String-typed where the value
/// is parsed against the loaded structure (orders, input modes, theta maps).
struct Options {
    std::string inputs = "full"; // full|impulse|step|ramp|exponential:<rate>|none|uncontrolled
    uint64_t seed = 1;           // 0 requests an entropy-derived seed
    std::string order;           // e.g. "lex:k21,k32,k01,k12,k23,x20"; empty = grevlex
    std::string compare_order;   // groebner command only
    bool validate = false;       // numeric cross-validation of enumerated solutions
    bool timings = false;        // include wall-clock timings (breaks byte-determinism)
    long step_budget = 1000000;
    long degree_bound = 8;
    // simulate command only:
    std::string theta;                 // "k01=1,k12=1/2,..."
    std::string sim_input = "impulse"; // input signal for simulation
    double sim_t_end = 10.0;
    int sim_points = 201;
};

/// Map an --inputs mode string onto an InputSet for the given structure.
model::InputSet resolve_input_set(const model::StructureSpec& spec,
                                  const std::string& inputs);

/// Parse "kind:v1,v2,..." (kind in lex/grlex/grevlex; names optional =
/// declaration order) against a ring.
MonomialOrder parse_order_spec(const Ring& ring, const std::string& spec);

/// Full identifiability analysis report (the analyze command).
json analyze(const model::StructureSpec& spec, const Options& opts);

/// Labeled invariant list only (the invariants command).
json invariants_report(const model::StructureSpec& spec, const Options& opts);

/// Groebner ordering experiment on the invariant ideal (the groebner command).
json groebner_report(const model::StructureSpec& spec, const Options& opts);

/// Numeric simulation, returned as CSV text (the simulate command).
std::string simulate_csv(const model::StructureSpec& spec, const Options& opts);

/// Deterministic serialization: 2-space indent, trailing newline.
std::string dump(const json& j);

const char* version();

} // namespace sgikit::report
