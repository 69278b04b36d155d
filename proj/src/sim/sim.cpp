#include "sim.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "../core/errors.hpp"

namespace sgikit::sim {

namespace {

double eval_entry(const MultiPoly& p, const std::map<std::string, Rat>& theta) {
    return p.eval(theta).get_d();
}

Eigen::MatrixXd eval_matrix(const std::vector<std::vector<MultiPoly>>& m,
                            const std::map<std::string, Rat>& theta) {
    if (m.empty()) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd out(m.size(), m[0].size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                eval_entry(m[i][j], theta);
    return out;
}

Eigen::VectorXd eval_vector(const std::vector<MultiPoly>& v,
                            const std::map<std::string, Rat>& theta) {
    Eigen::VectorXd out(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = eval_entry(v[i], theta);
    return out;
}

// The simulated system is the augmented autonomous pair (M, z0): the first n
// augmented states reproduce x(t) under the given input applied uniformly to
// every input channel.
struct Augmented {
    Eigen::MatrixXd M;
    Eigen::VectorXd z0;
    int n = 0;
};

Augmented augment(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                  const Eigen::VectorXd& x0, const model::InputSignal& sig) {
    const int n = static_cast<int>(A.rows());
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    if (B.cols() > 0) b = B * Eigen::VectorXd::Ones(B.cols());

    using Kind = model::InputSignal::Kind;
    switch (sig.kind) {
        case Kind::none:
            return {A, x0, n};
        case Kind::impulse: {
            // A unit impulse displaces the state instantaneously: x(0+) = x0 + b.
            Eigen::VectorXd z0 = x0 + b;
            return {A, z0, n};
        }
        case Kind::step: {
            // u(t) = 1 is generated by one extra constant state.
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
            M.topLeftCorner(n, n) = A;
            M.topRightCorner(n, 1) = b;
            Eigen::VectorXd z0 = Eigen::VectorXd::Zero(n + 1);
            z0.head(n) = x0;
            z0(n) = 1.0;
            return {M, z0, n};
        }
        case Kind::ramp: {
            // u(t) = t needs two generator states: z1' = z2, z2' = 0.
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 2, n + 2);
            M.topLeftCorner(n, n) = A;
            M.block(0, n, n, 1) = b;
            M(n, n + 1) = 1.0;
            Eigen::VectorXd z0 = Eigen::VectorXd::Zero(n + 2);
            z0.head(n) = x0;
            z0(n + 1) = 1.0;
            return {M, z0, n};
        }
        case Kind::exponential: {
            // u(t) = exp(a t): one generator state with z' = a z.
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
            M.topLeftCorner(n, n) = A;
            M.topRightCorner(n, 1) = b;
            M(n, n) = sig.rate.get_d();
            Eigen::VectorXd z0 = Eigen::VectorXd::Zero(n + 1);
            z0.head(n) = x0;
            z0(n) = 1.0;
            return {M, z0, n};
        }
    }
    throw InvalidArgument("unknown input signal kind");
}

} // namespace

std::vector<double> SimConfig::default_grid(double t_end, int points) {
    if (points < 2 || t_end <= 0)
        throw InvalidArgument("time grid needs t_end > 0 and at least two points");
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i) t[i] = t_end * i / (points - 1);
    return t;
}

Trajectory simulate(const model::StructureSpec& spec,
                    const std::map<std::string, Rat>& theta, const SimConfig& cfg) {
    if (cfg.t_grid.empty()) throw InvalidArgument("empty time grid");
    for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
        if (cfg.t_grid[i] < 0)
            throw InvalidArgument("time grid contains a negative time");
        if (i > 0 && cfg.t_grid[i] <= cfg.t_grid[i - 1])
            throw InvalidArgument("time grid must be strictly increasing");
    }
    if (spec.m == 0 && cfg.input.kind != model::InputSignal::Kind::none &&
        cfg.input.kind != model::InputSignal::Kind::impulse)
        throw InvalidArgument("uncontrolled structure cannot receive the input " +
                              cfg.input.describe());

    Eigen::MatrixXd A = eval_matrix(spec.A, theta);
    Eigen::MatrixXd B = spec.m > 0 ? eval_matrix(spec.B, theta)
                                   : Eigen::MatrixXd(spec.n, 0);
    Eigen::MatrixXd C = eval_matrix(spec.C, theta);
    Eigen::VectorXd x0 = eval_vector(spec.x0, theta);

    Augmented aug = augment(A, B, x0, cfg.input);

    Trajectory traj;
    traj.t = cfg.t_grid;
    traj.outputs.assign(spec.k, std::vector<double>(cfg.t_grid.size()));
    traj.states.assign(spec.n, std::vector<double>(cfg.t_grid.size()));
    for (size_t j = 0; j < cfg.t_grid.size(); ++j) {
        Eigen::MatrixXd E = (aug.M * cfg.t_grid[j]).exp();
        Eigen::VectorXd z = E * aug.z0;
        Eigen::VectorXd x = z.head(aug.n);
        Eigen::VectorXd y = C * x;
        for (int i = 0; i < spec.n; ++i) traj.states[i][j] = x(i);
        for (int i = 0; i < spec.k; ++i) traj.outputs[i][j] = y(i);
    }
    return traj;
}

std::vector<CandidateVerdict> cross_validate(
    const model::StructureSpec& spec, const std::map<std::string, Rat>& theta_star,
    const std::vector<std::map<std::string, Rat>>& candidates,
    const model::InputSet& input_set, const SimConfig& cfg) {
    // Inputs to exercise: restricted sets test exactly their signals; the full
    // set is probed with a catalog of analytically distinct signals; an
    // uncontrolled structure has only its free response.
    std::vector<model::InputSignal> signals;
    switch (input_set.mode) {
        case model::InputSet::Mode::uncontrolled:
            signals = {model::InputSignal::none()};
            break;
        case model::InputSet::Mode::restricted:
            signals = input_set.signals;
            break;
        case model::InputSet::Mode::full:
            signals = {model::InputSignal::impulse(), model::InputSignal::step(),
                       model::InputSignal::ramp(),
                       model::InputSignal::exponential(Rat(-1, 2))};
            break;
    }
    if (spec.m == 0) signals = {model::InputSignal::none()};

    std::vector<Trajectory> reference;
    for (const auto& sig : signals) {
        SimConfig c = cfg;
        c.input = sig;
        reference.push_back(simulate(spec, theta_star, c));
    }

    std::vector<CandidateVerdict> verdicts;
    for (const auto& cand : candidates) {
        CandidateVerdict v;
        v.coincides = true;
        for (size_t si = 0; si < signals.size(); ++si) {
            SimConfig c = cfg;
            c.input = signals[si];
            Trajectory t = simulate(spec, cand, c);
            for (int i = 0; i < spec.k; ++i)
                for (size_t j = 0; j < c.t_grid.size(); ++j) {
                    double a = reference[si].outputs[i][j];
                    double b = t.outputs[i][j];
                    double scale = std::max({std::fabs(a), std::fabs(b),
                                             cfg.abs_floor / cfg.rel_tolerance});
                    double rel = std::fabs(a - b) / scale;
                    v.max_rel_deviation = std::max(v.max_rel_deviation, rel);
                }
        }
        v.coincides = v.max_rel_deviation <= cfg.rel_tolerance;
        verdicts.push_back(v);
    }
    return verdicts;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os.precision(17);
    os << "t";
    for (size_t i = 0; i < traj.outputs.size(); ++i) os << ",y" << (i + 1);
    os << "\n";
    for (size_t j = 0; j < traj.t.size(); ++j) {
        os << traj.t[j];
        for (const auto& y : traj.outputs) os << "," << y[j];
        os << "\n";
    }
    return os.str();
}

} // namespace sgikit::sim
