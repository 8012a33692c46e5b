#include <doctest.h>

#include "episim/fixtures.hpp"
#include "episim/io.hpp"
#include "support/gen.hpp"

using namespace episim;

TEST_CASE("frame json round-trips") {
    testgen::Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        auto m = testgen::random_model(rng);
        auto text = frame_to_json(m);
        auto loaded = parse_model_text(text, /*complete=*/false);
        REQUIRE(loaded.kind == FileKind::Frame);
        CHECK(*loaded.model == m);
    }
}

TEST_CASE("covering json round-trips") {
    testgen::Rng rng(52);
    std::vector<EpistemicCoveringModel> covs = {*find_fixture("fig2-covering")->covering};
    for (int i = 0; i < 100; ++i) covs.push_back(testgen::random_covering(rng));
    for (const auto& x : covs) {
        auto text = covering_to_json(x);
        auto loaded = parse_model_text(text, false);
        REQUIRE(loaded.kind == FileKind::Covering);
        CHECK(*loaded.covering == x);
    }
}

TEST_CASE("strict mode takes pair lists literally; complete mode closes generators") {
    // generators only: {a}-pairs list one direction, supergroup pairs missing below
    std::string text = R"({
      "kind": "frame",
      "agents": ["a", "b"],
      "worlds": [{"id": "w0", "props": []}, {"id": "w1", "props": ["p"]}],
      "relations": [
        {"group": ["a", "b"], "pairs": [["w0", "w1"]]}
      ]
    })";
    CHECK_THROWS_AS(parse_model_text(text, false), ValidationError);

    auto loaded = parse_model_text(text, true);
    const auto& m = *loaded.model;
    CHECK(m.frame.per(AgentSet(0b11)).related(0, 1));
    CHECK(m.frame.per(AgentSet(0b01)).related(0, 1));  // completed downward
    CHECK(m.frame.per(AgentSet(0b10)).related(0, 1));
    CHECK(m.frame.per(AgentSet(0b00)).related(0, 1));
    CHECK(validate_frame(m.frame).empty());
    CHECK(m.has_prop(1, "p"));
}

TEST_CASE("union-closure violations are errors in both modes") {
    std::string text = R"({
      "kind": "frame",
      "agents": ["a", "b"],
      "worlds": [{"id": "w0"}],
      "relations": [
        {"group": ["a"], "pairs": [["w0", "w0"]]},
        {"group": ["b"], "pairs": [["w0", "w0"]]}
      ]
    })";
    CHECK_THROWS_AS(parse_model_text(text, false), ValidationError);
    CHECK_THROWS_AS(parse_model_text(text, true), ValidationError);
}

TEST_CASE("schema errors are parse errors with useful messages") {
    CHECK_THROWS_AS(parse_model_text("{", false), ParseError);
    CHECK_THROWS_AS(parse_model_text("{}", false), ParseError);
    CHECK_THROWS_AS(parse_model_text(R"({"kind":"nonsense"})", false), ParseError);
    CHECK_THROWS_AS(parse_model_text(
                        R"({"kind":"frame","agents":["a","a"],"worlds":[]})", false),
                    ParseError);
    CHECK_THROWS_AS(parse_model_text(
                        R"({"kind":"frame","agents":["a"],"worlds":[{"id":"w"},{"id":"w"}]})",
                        false),
                    ParseError);
    // the reserved atom cannot be declared in a valuation
    CHECK_THROWS_AS(
        parse_model_text(
            R"({"kind":"frame","agents":["a"],"worlds":[{"id":"w","props":["__t"]}]})", false),
        ParseError);
}

TEST_CASE("scenario files build the sensor frame") {
    auto sc = paper_sensor_scenario();
    auto loaded = parse_model_text(scenario_to_json(sc), false);
    REQUIRE(loaded.kind == FileKind::Scenario);
    CHECK(*loaded.model == build_sensor_frame(sc));
}

TEST_CASE("world maps parse") {
    auto m = parse_world_map(R"({"kind":"map","map":{"w0":"v0","w1":"v0"}})");
    CHECK(m.size() == 2);
    CHECK(m.at("w1") == "v0");
    CHECK_THROWS_AS(parse_world_map(R"({"kind":"frame","map":{}})"), ParseError);
}

TEST_CASE("dot export lists simplices, faces and annotations") {
    auto dot = to_dot(*find_fixture("fig2-covering")->covering);
    CHECK(dot.find("digraph covering") != std::string::npos);
    CHECK(dot.find("\"t_w2\" -> \"bc_w2\" [label=\"a\"]") != std::string::npos);
    CHECK(dot.find("\"world:w5\" -> \"bot1\" [style=dotted]") != std::string::npos);
    CHECK(dot.find("rank=same") != std::string::npos);
    CHECK(dot.find("w2 [p2]") != std::string::npos);
}

TEST_CASE("defect reports carry readable witnesses") {
    FrameData d;
    d.agents = {"a", "b"};
    d.worlds = {"w0", "w1"};
    d.props = {{}, {}};
    d.relations.push_back({AgentSet(0b11), {{0, 1}}});
    auto report = validate_frame_data(d, false, nullptr);
    REQUIRE(!report.empty());
    CHECK(report[0].kind == FrameDefect::Kind::Asymmetric);
    auto shell = GeneralizedEpistemicFrame::make(d.agents, d.worlds);
    CHECK(describe(report[0], shell).find("w0") != std::string::npos);
}
