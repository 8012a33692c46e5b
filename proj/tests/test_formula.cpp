#include <doctest.h>

#include "episim/formula.hpp"
#include "support/gen.hpp"

using namespace episim;

namespace {
const std::vector<std::string> kAB = {"a", "b"};
const std::vector<std::string> kABC = {"a", "b", "c"};
}  // namespace

TEST_CASE("basic grammar productions") {
    Formula f = parse_formula("D{a,b} p", kABC);
    CHECK(f == Formula::knows(AgentSet(0b011), Formula::atom("p")));

    CHECK(parse_formula("(p & !q)", kAB) ==
          Formula::conj(Formula::atom("p"), Formula::neg(Formula::atom("q"))));
    CHECK(parse_formula("D{} p", kAB) == Formula::knows(AgentSet{}, Formula::atom("p")));
    // group literals are sets: order and duplicates collapse
    CHECK(parse_formula("D{b,a,b} p", kAB) == parse_formula("D{a,b} p", kAB));
}

TEST_CASE("derived forms expand definitionally") {
    CHECK(parse_formula("K{a} p", kAB) == parse_formula("D{a} p", kAB));
    CHECK(parse_formula("hatD{a,b} p", kAB) ==
          Formula::neg(Formula::knows(AgentSet(0b11), Formula::neg(Formula::atom("p")))));
    CHECK(parse_formula("alive{a}", kAB) ==
          Formula::neg(Formula::knows(AgentSet(0b01), Formula::neg(Formula::truth()))));
    CHECK(parse_formula("dead{a}", kAB) ==
          Formula::knows(AgentSet(0b01), Formula::falsity()));
    CHECK(parse_formula("dead{a,b}", kAB) ==
          Formula::conj(Formula::dead_agent(0), Formula::dead_agent(1)));
    CHECK(parse_formula("dead{}", kAB) == Formula::truth());
    CHECK(parse_formula("true", kAB) == Formula::truth());
    CHECK(parse_formula("false", kAB) == Formula::falsity());
    CHECK(parse_formula("p | q", kAB) == Formula::disj(Formula::atom("p"), Formula::atom("q")));
    CHECK(parse_formula("p -> q", kAB) ==
          Formula::implies(Formula::atom("p"), Formula::atom("q")));
    // -> is right associative
    CHECK(parse_formula("p -> q -> r", kAB) ==
          Formula::implies(Formula::atom("p"),
                           Formula::implies(Formula::atom("q"), Formula::atom("r"))));
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(parse_formula("D{a} %", kAB), ParseError);
    CHECK_THROWS_AS(parse_formula("D{z} p", kAB), ParseError);  // unknown agent
    CHECK_THROWS_AS(parse_formula("p &", kAB), ParseError);
    CHECK_THROWS_AS(parse_formula("K{a,b} p", kAB), ParseError);
    CHECK_THROWS_AS(parse_formula("", kAB), ParseError);
    try {
        parse_formula("p & %", kAB);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    try {
        parse_formula("D{c} p", kAB);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
    }
}

TEST_CASE("modal depth") {
    CHECK(modal_depth(parse_formula("p", kAB)) == 0);
    CHECK(modal_depth(parse_formula("D{a} p", kAB)) == 1);
    CHECK(modal_depth(parse_formula("D{a}(D{a,b} p & q)", kAB)) == 2);
    CHECK(modal_depth(parse_formula("alive{a}", kAB)) == 1);
}

TEST_CASE("printing matches the documented forms") {
    CHECK(print_formula(Formula::knows(AgentSet(0b01), Formula::atom("p")), kABC) == "D{a} p");
    CHECK(print_formula(Formula::conj(Formula::atom("p"), Formula::neg(Formula::atom("q"))),
                        kABC) == "(p & !q)");
    CHECK(print_formula(Formula::knows(AgentSet{}, Formula::atom("p")), kABC) == "D{} p");
}

TEST_CASE("parser/printer round-trip on 10000 random formulas") {
    testgen::Rng rng(20240811);
    const std::vector<std::string> atoms = {"p", "q", "r2", "s_x"};
    for (int i = 0; i < 10000; ++i) {
        Formula f = testgen::random_formula(rng, 4, atoms, 6);
        std::vector<std::string> roster = {"a", "b", "c", "d"};
        Formula g = parse_formula(print_formula(f, roster), roster);
        REQUIRE(f == g);
    }
    // derived forms survive a round trip through their expansions
    for (const char* s : {"alive{a,b}", "dead{a}", "true", "false", "p -> (q | !r)"}) {
        Formula f = parse_formula(s, kAB);
        CHECK(parse_formula(print_formula(f, kAB), kAB) == f);
    }
}

TEST_CASE("atom collection skips nothing and sorts") {
    Formula f = parse_formula("q & D{a}(p & q)", kAB);
    CHECK(formula_atoms(f) == std::vector<std::string>{"p", "q"});
    CHECK(formula_atoms(parse_formula("alive{a}", kAB)) ==
          std::vector<std::string>{Formula::reserved_atom()});
}
