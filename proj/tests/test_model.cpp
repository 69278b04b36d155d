#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "../src/core/errors.hpp"
#include "../src/model/model.hpp"

using namespace sgikit;
using namespace sgikit::model;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string model_dir() {
#ifdef SGIKIT_MODEL_DIR
    return SGIKIT_MODEL_DIR;
#else
    return "models";
#endif
}

MultiPoly P(const std::string& text, const RingPtr& ring) {
    return MultiPoly::parse(text, ring);
}

} // namespace

TEST_CASE("bundled S0 parses to the expected structure") {
    StructureSpec s = parse_structure_file(model_dir() + "/s0.model");
    CHECK(s.name == "S0");
    CHECK(s.n == 3);
    CHECK(s.m == 0);
    CHECK(s.k == 1);
    CHECK(s.p() == 6);
    CHECK(s.clazz == StructureClass::compartmental);
    const auto& r = s.params;
    CHECK(r->names() == std::vector<std::string>{"k01", "k12", "k21", "k23",
                                                 "k32", "x20"});
    CHECK(s.A[0][0] == P("-k01-k21", r));
    CHECK(s.A[0][1] == P("k12", r));
    CHECK(s.A[0][2].is_zero());
    CHECK(s.A[1][0] == P("k21", r));
    CHECK(s.A[1][1] == P("-k12-k32", r));
    CHECK(s.A[1][2] == P("k23", r));
    CHECK(s.A[2][0].is_zero());
    CHECK(s.A[2][1] == P("k32", r));
    CHECK(s.A[2][2] == P("-k23", r));
    CHECK(s.C[0][0] == P("1", r));
    CHECK(s.C[0][1].is_zero());
    CHECK(s.x0[0].is_zero());
    CHECK(s.x0[1] == P("x20", r));
    CHECK(s.x0[2].is_zero());
}

TEST_CASE("bundled S1 parses with B = (0,0,1)^T") {
    StructureSpec s = parse_structure_file(model_dir() + "/s1.model");
    CHECK(s.m == 1);
    CHECK(s.B[0][0].is_zero());
    CHECK(s.B[1][0].is_zero());
    CHECK(s.B[2][0] == P("1", s.params));
}

TEST_CASE("parse diagnostics") {
    CHECK_THROWS_AS(parse_structure("params a\nstates 2\noutputs 1\n"
                                    "A 1 3 = a\n"),
                    ParseError); // column out of range
    CHECK_THROWS_AS(parse_structure("params a\nstates 1\noutputs 1\n"
                                    "A 1 1 = b\n"),
                    ParseError); // undeclared parameter
    CHECK_THROWS_AS(parse_structure("params a\noutputs 1\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("params a\nstates 1\noutputs 1\n"
                                    "B 1 1 = 1\n"),
                    ParseError); // B entry in an uncontrolled structure
    CHECK_THROWS_AS(parse_structure("params a\nstates 1\noutputs 1\n"
                                    "A 1 1 = a +\n"),
                    ParseError); // expression syntax
    // Line numbers are reported.
    try {
        parse_structure("params a\nstates 1\noutputs 1\nA 1 1 = ??\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("parse -> print -> parse round-trips") {
    for (const char* name : {"/s0.model", "/s1.model"}) {
        StructureSpec a = parse_structure_file(model_dir() + name);
        StructureSpec b = parse_structure(print_structure(a));
        CHECK(a.name == b.name);
        CHECK(a.params->names() == b.params->names());
        CHECK(a.A == b.A);
        CHECK(a.B == b.B);
        CHECK(a.C == b.C);
        CHECK(a.x0 == b.x0);
        CHECK(a.clazz == b.clazz);
    }
}

TEST_CASE("compartmental check: bundled models clean, mutations flagged") {
    StructureSpec s = parse_structure_file(model_dir() + "/s1.model");
    CHECK(check_compartmental(s).empty());

    // Sign mutations each produce at least one violation.
    auto r = s.params;
    StructureSpec bad = s;
    bad.A[0][1] = P("-k12", r);
    CHECK(!check_compartmental(bad).empty());

    bad = s;
    bad.A[0][0] = P("k01", r); // positive diagonal: column-sum excess fails
    CHECK(!check_compartmental(bad).empty());

    bad = s;
    bad.B[2][0] = P("-1", r);
    CHECK(!check_compartmental(bad).empty());

    bad = s;
    bad.x0[1] = P("-x20", r);
    CHECK(!check_compartmental(bad).empty());

    // 1x1 positive diagonal example.
    StructureSpec tiny = parse_structure(
        "params k01\nstates 1\noutputs 1\nclass compartmental\n"
        "A 1 1 = k01\nC 1 1 = 1\nx0 1 = 1\n");
    auto v = check_compartmental(tiny);
    REQUIRE(!v.empty());
    CHECK(v[0].definite);
}

TEST_CASE("input signal Laplace transforms") {
    auto r = make_ring({"s"});
    auto check = [&](InputSignal sig, const char* num, const char* den) {
        auto [n, d] = sig.laplace(r, 0);
        CHECK(n == P(num, r));
        CHECK(d == P(den, r));
    };
    check(InputSignal::impulse(), "1", "1");
    check(InputSignal::step(), "1", "s");
    check(InputSignal::ramp(), "1", "s^2");
    check(InputSignal::exponential(rat(3)), "1", "s-3");
    check(InputSignal::none(), "0", "1");
}

TEST_CASE("input set validation") {
    StructureSpec s0 = parse_structure_file(model_dir() + "/s0.model");
    StructureSpec s1 = parse_structure_file(model_dir() + "/s1.model");
    CHECK_THROWS_AS(validate_input_set(s0, InputSet::restricted(
                                               {InputSignal::impulse()})),
                    InvalidArgument);
    CHECK_THROWS_AS(validate_input_set(s1, InputSet::uncontrolled()),
                    InvalidArgument);
    CHECK_NOTHROW(validate_input_set(s0, InputSet::uncontrolled()));
    CHECK_NOTHROW(validate_input_set(s1, InputSet::full()));
}

TEST_CASE("non-degenerate start") {
    StructureSpec s0 = parse_structure_file(model_dir() + "/s0.model");
    CHECK(check_nondegenerate_start(s0, InputSet::uncontrolled(), 3, 1));

    // x0 = 0, uncontrolled: equilibrium start.
    StructureSpec eq = parse_structure(
        "params a\nstates 1\noutputs 1\nA 1 1 = -a\nC 1 1 = 1\n");
    CHECK(!check_nondegenerate_start(eq, InputSet::uncontrolled(), 3, 1));

    // x0 = 0 but an impulse input displaces the equilibrium.
    StructureSpec imp = parse_structure(
        "params a\nstates 1\ninputs 1\noutputs 1\nA 1 1 = -a\nB 1 1 = 1\n"
        "C 1 1 = 1\n");
    CHECK(check_nondegenerate_start(
        imp, InputSet::restricted({InputSignal::impulse()}), 3, 1));
}
