#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../src/core/errors.hpp"
#include "../src/ident/ident.hpp"
#include "../src/ident/uniroot.hpp"
#include "../src/model/model.hpp"
#include "../src/transfer/transfer.hpp"

using namespace sgikit;
using namespace sgikit::ident;

namespace {

std::string model_dir() {
#ifdef SGIKIT_MODEL_DIR
    return SGIKIT_MODEL_DIR;
#else
    return "models";
#endif
}

struct Loaded {
    model::StructureSpec spec;
    transfer::InvariantVector inv;
    model::InputSet input;
};

Loaded load(const char* file, const model::InputSet& input) {
    auto spec = model::parse_structure_file(model_dir() + file);
    auto inv = transfer::extract_invariants(transfer::derive_transfer(spec), input);
    return {std::move(spec), std::move(inv), input};
}

} // namespace

TEST_CASE("test-system shape") {
    auto s0 = load("/s0.model", model::InputSet::uncontrolled());
    TestSystem ts = build_test_system(s0.inv, s0.spec, 1);
    CHECK(ts.equations.size() == 5); // five conditions on six parameters
    CHECK(ts.primed->size() == 6);
    CHECK(ts.primed->name(0) == "k01'");

    auto s1 = load("/s1.model", model::InputSet::full());
    CHECK(build_test_system(s1.inv, s1.spec, 1).equations.size() == 6);

    transfer::InvariantVector empty;
    CHECK_THROWS_AS(build_test_system(empty, s0.spec, 1), DegenerateError);
}

TEST_CASE("trivial solution always solves its own system") {
    for (const char* file : {"/s0.model", "/s1.model"}) {
        auto input = std::string(file) == "/s0.model" ? model::InputSet::uncontrolled()
                                                      : model::InputSet::full();
        auto l = load(file, input);
        for (uint64_t seed : {1, 2, 3}) {
            TestSystem ts = build_test_system(l.inv, l.spec, seed);
            std::map<int, Rat> at;
            for (int i = 0; i < ts.primed->size(); ++i)
                at[i] = ts.specialization[i];
            for (const auto& eq : ts.equations)
                CHECK(eq.substitute(at).is_zero());
        }
    }
}

TEST_CASE("jacobian ranks: S0 is rank-deficient, S1 full is not") {
    auto s0 = load("/s0.model", model::InputSet::uncontrolled());
    CHECK(jacobian_rank_test(s0.inv, s0.spec, 3, 1) == 5);

    auto s1 = load("/s1.model", model::InputSet::full());
    CHECK(jacobian_rank_test(s1.inv, s1.spec, 3, 1) == 6);

    // Single parameter, phi = theta^2: rank 1.
    auto tiny = model::parse_structure(
        "params a\nstates 1\noutputs 1\nA 1 1 = -a\nC 1 1 = a\nx0 1 = 1\n");
    auto inv = transfer::extract_invariants(transfer::derive_transfer(tiny),
                                            model::InputSet::uncontrolled());
    CHECK(jacobian_rank_test(inv, tiny, 3, 1) == 1);
}

TEST_CASE("classification goldens") {
    auto s0 = load("/s0.model", model::InputSet::uncontrolled());
    Verdict v0 = classify(s0.inv, s0.spec, s0.input, 1);
    CHECK(v0.classification == Classification::SU);
    CHECK(v0.label() == "SU");
    CHECK(v0.dimension == 1);
    CHECK(v0.globally_identifiable == std::vector<std::string>{"k23"});
    CHECK(v0.jacobian_rank == 5);

    auto s1 = load("/s1.model", model::InputSet::full());
    Verdict v1 = classify(s1.inv, s1.spec, s1.input, 1);
    CHECK(v1.classification == Classification::SLI);
    CHECK(v1.dimension == 0);
    CHECK(v1.degree == 2);
    CHECK(v1.globally_identifiable ==
          std::vector<std::string>{"k01", "k12", "k23", "x20"});

    auto imp = load("/s1.model",
                    model::InputSet::restricted({model::InputSignal::impulse()}));
    Verdict vi = classify(imp.inv, imp.spec, imp.input, 1);
    CHECK(vi.classification == Classification::SU);
    CHECK(vi.label() == "U-SU");
    CHECK(vi.dimension >= 1);
}

TEST_CASE("enumerate: single linear solution") {
    auto tiny = model::parse_structure(
        "params a\nstates 1\noutputs 1\nA 1 1 = -a\nC 1 1 = 1\nx0 1 = 1\n");
    auto inv = transfer::extract_invariants(transfer::derive_transfer(tiny),
                                            model::InputSet::uncontrolled());
    TestSystem ts = build_test_system(inv, tiny, std::vector<Rat>{rat(5, 3)});
    auto sols = enumerate_solutions(ts);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].values.at("a") == rat(5, 3));
    CHECK(sols[0].feasible);
}

TEST_CASE("enumerate: S1 full mode mirror family") {
    auto s1 = load("/s1.model", model::InputSet::full());

    SUBCASE("theta* = (2,3,5,7,11,13): mirror has k32' = 0, infeasible") {
        std::vector<Rat> theta{rat(2), rat(3), rat(5), rat(7), rat(11), rat(13)};
        TestSystem ts = build_test_system(s1.inv, s1.spec, theta);
        auto sols = enumerate_solutions(ts);
        REQUIRE(sols.size() == 2);
        int feasible = 0, trivial = 0, mirror = 0;
        for (const auto& s : sols) {
            REQUIRE(s.rational);
            if (s.feasible) ++feasible;
            if (s.values == std::map<std::string, Rat>{{"k01", rat(2)},
                                                       {"k12", rat(3)},
                                                       {"k21", rat(5)},
                                                       {"k23", rat(7)},
                                                       {"k32", rat(11)},
                                                       {"x20", rat(13)}})
                ++trivial;
            // Mirror: k21' = -k01+k23+k32 = 16, k32' = k01+k21-k23 = 0.
            if (s.values == std::map<std::string, Rat>{{"k01", rat(2)},
                                                       {"k12", rat(3)},
                                                       {"k21", rat(16)},
                                                       {"k23", rat(7)},
                                                       {"k32", rat(0)},
                                                       {"x20", rat(13)}})
                ++mirror;
        }
        CHECK(trivial == 1);
        CHECK(mirror == 1);
        CHECK(feasible == 1); // k32' = 0 is outside the open positive domain
    }

    SUBCASE("theta* = (1,1,3,2,1,1): both solutions feasible") {
        std::vector<Rat> theta{rat(1), rat(1), rat(3), rat(2), rat(1), rat(1)};
        TestSystem ts = build_test_system(s1.inv, s1.spec, theta);
        auto sols = enumerate_solutions(ts);
        REQUIRE(sols.size() == 2);
        for (const auto& s : sols) CHECK(s.feasible);
    }
}

TEST_CASE("enumerate rejects positive-dimensional systems and huge degrees") {
    auto s0 = load("/s0.model", model::InputSet::uncontrolled());
    TestSystem ts = build_test_system(s0.inv, s0.spec, 1);
    CHECK_THROWS_AS(enumerate_solutions(ts), InvalidArgument);

    auto s1 = load("/s1.model", model::InputSet::full());
    TestSystem ts1 = build_test_system(s1.inv, s1.spec, 1);
    CHECK_THROWS_AS(enumerate_solutions(ts1, /*degree_bound=*/1), ResourceError);
}

TEST_CASE("univariate real roots") {
    // 2x^3 - 3x^2 - 11x + 6 has roots 3, -2, 1/2.
    auto roots = real_roots({rat(6), rat(-11), rat(-3), rat(2)});
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].value == rat(-2));
    CHECK(roots[1].value == rat(1, 2));
    CHECK(roots[2].value == rat(3));

    // x^2 - 2: irrational pair, isolated.
    auto irr = real_roots({rat(-2), rat(0), rat(1)});
    REQUIRE(irr.size() == 2);
    for (const auto& r : irr) {
        CHECK(!r.rational);
        CHECK(r.hi - r.lo < rat(1, 1000000));
        // Sign change across the interval.
        CHECK(sgn(poly_eval({rat(-2), rat(0), rat(1)}, r.lo)) *
                  sgn(poly_eval({rat(-2), rat(0), rat(1)}, r.hi)) <=
              0);
    }

    // Repeated roots collapse: (x-1)^2.
    auto rep = real_roots({rat(1), rat(-2), rat(1)});
    REQUIRE(rep.size() == 1);
    CHECK(rep[0].value == rat(1));
}

TEST_CASE("seed stability of bundled verdicts") {
    auto s1 = load("/s1.model", model::InputSet::full());
    Verdict a = classify(s1.inv, s1.spec, s1.input, 1);
    Verdict b = classify(s1.inv, s1.spec, s1.input, 2);
    CHECK(a.classification == b.classification);
    CHECK(a.dimension == b.dimension);
    CHECK(a.degree == b.degree);
    CHECK(a.globally_identifiable == b.globally_identifiable);
    CHECK(a.warnings.empty());
}
