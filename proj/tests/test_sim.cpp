#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../src/model/model.hpp"
#include "../src/sim/sim.hpp"
#include "../src/transfer/transfer.hpp"

using namespace sgikit;
using namespace sgikit::sim;

namespace {

std::string model_dir() {
#ifdef SGIKIT_MODEL_DIR
    return SGIKIT_MODEL_DIR;
#else
    return "models";
#endif
}

std::map<std::string, Rat> theta_star() {
    return {{"k01", rat(1)}, {"k12", rat(1)}, {"k21", rat(3)},
            {"k23", rat(2)}, {"k32", rat(1)}, {"x20", rat(1)}};
}

} // namespace

TEST_CASE("scalar exponential decay") {
    auto spec = model::parse_structure(
        "params a\nstates 1\noutputs 1\nA 1 1 = -a\nC 1 1 = 1\nx0 1 = 1\n");
    SimConfig cfg;
    cfg.t_grid = {0.0, 0.5, 1.0, 2.0};
    Trajectory t = simulate(spec, {{"a", rat(1)}}, cfg);
    CHECK(t.outputs[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.outputs[0][1] == doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
    CHECK(t.outputs[0][2] == doctest::Approx(0.3678794411714423).epsilon(1e-9));
    CHECK(t.outputs[0][3] == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("nilpotent system: y(t) = t exactly") {
    auto spec = model::parse_structure(
        "params a\nstates 2\noutputs 1\nA 1 2 = 1\nC 1 1 = 1\nx0 2 = 1\n");
    SimConfig cfg;
    cfg.t_grid = SimConfig::default_grid();
    Trajectory t = simulate(spec, {{"a", rat(1)}}, cfg);
    for (size_t j = 0; j < cfg.t_grid.size(); ++j)
        CHECK(t.outputs[0][j] == doctest::Approx(cfg.t_grid[j]).epsilon(1e-12));
}

TEST_CASE("catalog inputs on an integrator: step gives t, ramp gives t^2/2, "
          "exponential gives 1 - e^{-t}") {
    auto spec = model::parse_structure(
        "params a\nstates 1\ninputs 1\noutputs 1\nB 1 1 = 1\nC 1 1 = 1\n");
    SimConfig cfg;
    cfg.t_grid = {0.0, 0.5, 1.0, 3.0};

    cfg.input = model::InputSignal::step();
    Trajectory st = simulate(spec, {{"a", rat(1)}}, cfg);
    cfg.input = model::InputSignal::ramp();
    Trajectory rp = simulate(spec, {{"a", rat(1)}}, cfg);
    cfg.input = model::InputSignal::exponential(rat(-1));
    Trajectory ex = simulate(spec, {{"a", rat(1)}}, cfg);
    for (size_t j = 0; j < cfg.t_grid.size(); ++j) {
        double t = cfg.t_grid[j];
        CHECK(st.outputs[0][j] == doctest::Approx(t).epsilon(1e-9));
        CHECK(rp.outputs[0][j] == doctest::Approx(t * t / 2).epsilon(1e-9));
        CHECK(ex.outputs[0][j] ==
              doctest::Approx(1.0 - std::exp(-t)).epsilon(1e-9));
    }

    cfg.input = model::InputSignal::impulse();
    Trajectory im = simulate(spec, {{"a", rat(1)}}, cfg);
    for (size_t j = 0; j < cfg.t_grid.size(); ++j)
        CHECK(im.outputs[0][j] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("S1 impulse response decays towards zero and mass never increases") {
    auto spec = model::parse_structure_file(model_dir() + "/s1.model");
    SimConfig cfg;
    // The slowest mode of A(theta*) decays like e^{-0.143 t}; by t = 100 the
    // output is below 1e-5.
    cfg.t_grid = SimConfig::default_grid(100.0, 401);
    cfg.input = model::InputSignal::impulse();
    Trajectory t = simulate(spec, theta_star(), cfg);
    CHECK(std::fabs(t.outputs[0].back()) < 1e-5);

    double prev = 0;
    for (size_t j = 0; j < cfg.t_grid.size(); ++j) {
        double mass = 0;
        for (int i = 0; i < spec.n; ++i) mass += t.states[i][j];
        if (j > 0) CHECK(mass <= prev + 1e-10);
        prev = mass;
    }
}

TEST_CASE("cross-validation: trivial candidate, mirror candidate, and a "
          "perturbed candidate") {
    auto spec = model::parse_structure_file(model_dir() + "/s1.model");
    auto star = theta_star();
    auto mirror = star;
    mirror["k21"] = rat(2); // -k01+k23+k32
    mirror["k32"] = rat(2); // k01+k21-k23
    auto perturbed = star;
    perturbed["k23"] = rat(21, 10);

    SimConfig cfg;
    cfg.t_grid = SimConfig::default_grid();
    auto verdicts = cross_validate(spec, star, {star, mirror, perturbed},
                                   model::InputSet::full(), cfg);
    REQUIRE(verdicts.size() == 3);
    CHECK(verdicts[0].coincides);
    CHECK(verdicts[0].max_rel_deviation == 0.0);
    CHECK(verdicts[1].coincides);
    CHECK(!verdicts[2].coincides);
    CHECK(verdicts[2].max_rel_deviation > 1e-3);
}

TEST_CASE("symbolic transfer function agrees with the numerically integrated "
          "Laplace transform of the impulse response") {
    for (const char* name : {"/s0.model", "/s1.model"}) {
        auto spec = model::parse_structure_file(model_dir() + name);
        auto star = theta_star();
        bool controlled = spec.m > 0;

        // Simulated response: free response for S0, impulse response for S1.
        SimConfig cfg;
        int points = 160001;
        double t_end = 40.0;
        cfg.t_grid = SimConfig::default_grid(t_end, points);
        cfg.input = controlled ? model::InputSignal::impulse()
                               : model::InputSignal::none();
        Trajectory t = simulate(spec, star, cfg);

        // Numeric Laplace transform at s = 2 by the trapezoid rule.
        double s = 2.0, acc = 0.0;
        double h = t_end / (points - 1);
        for (int j = 0; j < points; ++j) {
            double w = (j == 0 || j == points - 1) ? 0.5 : 1.0;
            acc += w * t.outputs[0][j] * std::exp(-s * cfg.t_grid[j]) * h;
        }

        // Symbolic value: V(2) for S0; V(2) + W(2)*1 for S1 under an impulse.
        auto td = transfer::derive_transfer(spec);
        std::map<std::string, Rat> at = star;
        at["s"] = rat(2);
        double symbolic =
            Rat(td.V[0].num.eval(at) / td.V[0].den.eval(at)).get_d();
        if (controlled)
            symbolic +=
                Rat(td.W[0][0].num.eval(at) / td.W[0][0].den.eval(at)).get_d();
        CHECK(std::fabs(acc - symbolic) < 1e-6);
    }
}

TEST_CASE("CSV export format") {
    auto spec = model::parse_structure(
        "params a\nstates 1\noutputs 1\nA 1 1 = -a\nC 1 1 = 1\nx0 1 = 1\n");
    SimConfig cfg;
    cfg.t_grid = {0.0, 1.0};
    std::string csv = trajectory_csv(simulate(spec, {{"a", rat(1)}}, cfg));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,y1");
    std::getline(in, line);
    CHECK(line == "0,1");
    std::getline(in, line);
    CHECK(line.substr(0, 2) == "1,");
    CHECK(line.find("0.36787944117144") != std::string::npos);
}

TEST_CASE("invalid grids are rejected") {
    auto spec = model::parse_structure(
        "params a\nstates 1\noutputs 1\nA 1 1 = -a\nC 1 1 = 1\nx0 1 = 1\n");
    SimConfig cfg;
    cfg.t_grid = {0.0, 2.0, 1.0};
    CHECK_THROWS(simulate(spec, {{"a", rat(1)}}, cfg));
    cfg.t_grid.clear();
    CHECK_THROWS(simulate(spec, {{"a", rat(1)}}, cfg));
}
