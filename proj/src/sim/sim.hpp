#pragma once

#include <map>
#include <string>
#include <vector>

#include "../model/model.hpp"

namespace sgikit::sim {

struct SimConfig {
    std::vector<double> t_grid;  // strictly increasing, starts at 0
    model::InputSignal input = model::InputSignal::none();
    double rel_tolerance = 1e-9;
    double abs_floor = 1e-12;

    static std::vector<double> default_grid(double t_end = 10.0, int points = 201);
};

struct Trajectory {
    std::vector<double> t;
    // outputs[i][j] = y_i(t_j)
    std::vector<std::vector<double>> outputs;
    // states[i][j] = x_i(t_j)
    std::vector<std::vector<double>> states;
};

/// Closed-form LTI simulation: matrix exponential (scaling-and-squaring,
/// Pade-13) with block augmentation for the input convolution term.
Trajectory simulate(const model::StructureSpec& spec,
                    const std::map<std::string, Rat>& theta, const SimConfig& cfg);

struct CandidateVerdict {
    bool coincides = false;
    double max_rel_deviation = 0.0;
};

/// Output coincidence of each candidate against theta_star over the grid and
/// over all inputs implied by the input set (catalog inputs for full mode).
std::vector<CandidateVerdict> cross_validate(
    const model::StructureSpec& spec, const std::map<std::string, Rat>& theta_star,
    const std::vector<std::map<std::string, Rat>>& candidates,
    const model::InputSet& input_set, const SimConfig& cfg);

/// CSV export: header `t,y1..yk`, full double precision.
std::string trajectory_csv(const Trajectory& traj);

} // namespace sgikit::sim
