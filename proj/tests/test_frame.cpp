#include <doctest.h>

#include <set>

#include "episim/fixtures.hpp"
#include "episim/io.hpp"
#include "support/gen.hpp"

using namespace episim;

namespace {

const GeneralizedEpistemicModel& fig3() { return *find_fixture("fig3-frame")->model; }

int widx(const GeneralizedEpistemicModel& m, const char* id) {
    return m.frame.world_index_checked(id);
}

bool sat(const GeneralizedEpistemicModel& m, const char* w, const char* phi) {
    return satisfies(m, widx(m, w), parse_formula(phi, m.frame.agents));
}

}  // namespace

TEST_CASE("fig3 frame validates and has the documented alive sets") {
    const auto& m = fig3();
    CHECK(validate_frame(m.frame).empty());

    auto live = [&](const char* w) { return group_label(alive_set(m.frame, widx(m, w)), m.frame.agents); };
    CHECK(live("w4") == "{a,c}");
    CHECK(live("w5") == "{}");
    CHECK(live("w0") == "{b}");
    CHECK(live("w1") == "{a,b}");
    CHECK(live("w2") == "{a,b,c}");
}

TEST_CASE("fig3 sub-worlds") {
    const auto& m = fig3();
    CHECK(is_subworld(m.frame, widx(m, "w0"), widx(m, "w1")));
    CHECK(is_subworld(m.frame, widx(m, "w0"), widx(m, "w1p")));
    CHECK(!is_subworld(m.frame, widx(m, "w1"), widx(m, "w0")));
    for (int w = 0; w < m.frame.world_count(); ++w) CHECK(is_subworld(m.frame, w, w));
}

TEST_CASE("fig3 satisfaction: joint distinguishability and dead worlds") {
    const auto& m = fig3();  // p2 labels exactly w2
    CHECK(sat(m, "w2", "D{b,c} p2"));
    CHECK(!sat(m, "w2", "K{b} p2"));
    CHECK(!sat(m, "w2", "K{c} p2"));
    CHECK(sat(m, "w5", "dead{a}"));
    CHECK(sat(m, "w5", "dead{a} & dead{b} & dead{c}"));
    CHECK(sat(m, "w0", "true"));
    CHECK_THROWS_AS(widx(m, "nope"), UnknownWorldError);
}

TEST_CASE("alive/dead formulas mirror the relations on fig3 and random frames") {
    testgen::Rng rng(7);
    std::vector<GeneralizedEpistemicModel> corpus = {fig3()};
    for (int i = 0; i < 1000; ++i) corpus.push_back(testgen::random_model(rng));
    for (const auto& m : corpus) {
        REQUIRE(validate_frame(m.frame).empty());
        for (int w = 0; w < m.frame.world_count(); ++w) {
            for (int mask = 0; mask < m.frame.group_count(); ++mask) {
                AgentSet u(static_cast<std::uint32_t>(mask));
                CHECK(satisfies(m, w, Formula::alive(u)) == m.frame.per(u).in_domain(w));
            }
            for (int a = 0; a < m.frame.agent_count(); ++a)
                CHECK(satisfies(m, w, Formula::dead_agent(a)) ==
                      !m.frame.per(AgentSet::single(a)).in_domain(w));
        }
    }
}

TEST_CASE("compatibility restated: finer groups relate at least as much") {
    testgen::Rng rng(8);
    for (int i = 0; i < 300; ++i) {
        auto m = testgen::random_model(rng);
        for (int mask = 0; mask < m.frame.group_count(); ++mask)
            for (int sub = mask; ; sub = (sub - 1) & mask) {
                CHECK(m.frame.rel[static_cast<std::size_t>(mask)].contained_in(
                    m.frame.rel[static_cast<std::size_t>(sub)]));
                if (sub == 0) break;
            }
    }
}

TEST_CASE("validate_frame reports (a), (b) and nullary-(b) violations with witnesses") {
    // w ~_{a,b} w' without w ~_a w'
    auto f = GeneralizedEpistemicFrame::make({"a", "b"}, {"w0", "w1"});
    f.per(AgentSet(0b11)) = per_closure({{0, 1}}, 2);
    f.per(AgentSet(0b01)) = per_closure({{0, 0}, {1, 1}}, 2);
    f.per(AgentSet(0b10)) = per_closure({{0, 1}}, 2);
    f.per(AgentSet(0b00)) = per_closure({{0, 1}}, 2);
    auto report = validate_frame(f);
    REQUIRE(!report.empty());
    CHECK(report[0].kind == FrameDefect::Kind::Compatibility);
    CHECK(report[0].g1 == AgentSet(0b11));
    CHECK(report[0].g2 == AgentSet(0b01));

    // w ~_a w, w ~_b w, but not w ~_{a,b} w
    auto g = GeneralizedEpistemicFrame::make({"a", "b"}, {"w0"});
    g.per(AgentSet(0b01)) = per_closure({{0, 0}}, 1);
    g.per(AgentSet(0b10)) = per_closure({{0, 0}}, 1);
    g.per(AgentSet(0b00)) = per_closure({{0, 0}}, 1);
    report = validate_frame(g);
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == FrameDefect::Kind::UnionClosure);
    CHECK(report[0].w1 == 0);
    CHECK((report[0].g1 | report[0].g2) == AgentSet(0b11));

    // a world in no relation at all
    auto h = GeneralizedEpistemicFrame::make({"a"}, {"w0"});
    report = validate_frame(h);
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == FrameDefect::Kind::EmptyGroupReflexivity);
}

TEST_CASE("seven properties on the caption fixtures") {
    for (const auto& fx : builtin_fixtures()) {
        if (!fx.model) continue;
        CAPTURE(fx.name);
        REQUIRE(validate_frame(fx.model->frame).empty());
        for (auto [prop, expected] : fx.expected) {
            CAPTURE(property_name(prop));
            CHECK(check_property(fx.model->frame, prop).holds == expected);
        }
    }
}

TEST_CASE("property witnesses are the documented ones") {
    const auto& ns = *find_fixture("frame-nonstandard")->model;
    auto v = check_property(ns.frame, ModelProperty::StandardGroupKnowledge);
    REQUIRE(!v.holds);
    CHECK(describe(v, ns.frame) == "FALSE (w0,w1,{a,b})");

    const auto& m = fig3();
    auto p = check_property(m.frame, ModelProperty::Proper);
    REQUIRE(!p.holds);
    CHECK(m.frame.worlds[static_cast<std::size_t>(p.w1)] == "w1");
    CHECK(m.frame.worlds[static_cast<std::size_t>(p.w2)] == "w1p");
}

TEST_CASE("single-world pure frames under the quantifiers") {
    // |A| = 2: the strict subgroup {a} has no sub-world, so not maximal
    auto f2 = GeneralizedEpistemicFrame::make({"a", "b"}, {"w0"});
    for (int mask = 0; mask < 4; ++mask)
        f2.rel[static_cast<std::size_t>(mask)] = per_closure({{0, 0}}, 1);
    CHECK(validate_frame(f2).empty());
    CHECK(check_property(f2, ModelProperty::Pure).holds);
    CHECK(check_property(f2, ModelProperty::Minimal).holds);
    CHECK(!check_property(f2, ModelProperty::Maximal).holds);

    // |A| = 1 is the degenerate exception: the only nonempty subgroup is the
    // whole roster, so the same frame is maximal
    auto f1 = GeneralizedEpistemicFrame::make({"a"}, {"w0"});
    f1.rel[0] = per_closure({{0, 0}}, 1);
    f1.rel[1] = per_closure({{0, 0}}, 1);
    CHECK(check_property(f1, ModelProperty::Maximal).holds);
}

TEST_CASE("pure implies minimal and no-empty-worlds on generated frames") {
    testgen::Rng rng(9);
    int pure_seen = 0;
    for (int i = 0; i < 400; ++i) {
        auto m = testgen::random_model(rng);
        if (!check_property(m.frame, ModelProperty::Pure).holds) continue;
        ++pure_seen;
        CHECK(check_property(m.frame, ModelProperty::Minimal).holds);
        CHECK(check_property(m.frame, ModelProperty::NoEmptyWorlds).holds);
    }
    for (int i = 0; i < 100; ++i) {
        auto m = testgen::random_pure_proper(rng);
        REQUIRE(check_property(m.frame, ModelProperty::Pure).holds);
        CHECK(check_property(m.frame, ModelProperty::Minimal).holds);
        CHECK(check_property(m.frame, ModelProperty::NoEmptyWorlds).holds);
        ++pure_seen;
    }
    CHECK(pure_seen > 50);
}

TEST_CASE("quotient classes") {
    const auto& m = fig3();
    auto ab = quotient_classes(m.frame, AgentSet(0b011));
    bool found = false;
    for (const auto& c : ab)
        if (c == std::vector<int>{widx(m, "w1"), widx(m, "w1p")}) found = true;
    CHECK(found);

    auto empty_classes = quotient_classes(m.frame, AgentSet{});
    REQUIRE(empty_classes.size() == 2);
    std::set<int> sizes;
    for (const auto& c : empty_classes) sizes.insert(static_cast<int>(c.size()));
    CHECK(sizes == std::set<int>{1, 6});  // {w5} alone, all others together

    auto f = GeneralizedEpistemicFrame::make({"a"}, {"w0"});
    f.rel[0] = per_closure({{0, 0}}, 1);
    CHECK(quotient_classes(f, AgentSet(0b1)).empty());  // empty relation, empty partition
}

TEST_CASE("morphism checks") {
    const auto& m = fig3();
    std::vector<int> id(static_cast<std::size_t>(m.frame.world_count()));
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    CHECK(check_morphism(m, m, id).ok);

    // constant map into a fully-related pure world with a full valuation
    const auto& pure2 = *find_fixture("frame-pure")->model;
    auto target = GeneralizedEpistemicFrame::make({"a", "b", "c"}, {"t"});
    for (int mask = 0; mask < 8; ++mask) target.rel[static_cast<std::size_t>(mask)] = per_closure({{0, 0}}, 1);
    GeneralizedEpistemicModel tm{target, {{"p2"}}};
    std::vector<int> constant(static_cast<std::size_t>(pure2.frame.world_count()), 0);
    CHECK(check_morphism(pure2, tm, constant).ok);

    // breaking one related pair is caught with its witness
    const auto& ns = *find_fixture("frame-nonstandard")->model;  // w0 ~_a w1
    auto split = GeneralizedEpistemicFrame::make({"a", "b"}, {"v0", "v1"});
    for (int mask = 0; mask < 4; ++mask)
        split.rel[static_cast<std::size_t>(mask)] = per_closure({{0, 0}, {1, 1}}, 2);
    GeneralizedEpistemicModel sm{split, {{}, {}}};
    auto r = check_morphism(ns, sm, {0, 1});
    REQUIRE(!r.ok);
    CHECK(r.clause == "relation");
}

TEST_CASE("functional bisimulation checks") {
    const auto& m = fig3();
    std::vector<int> id(static_cast<std::size_t>(m.frame.world_count()));
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    CHECK(check_functional_bisimulation(m, m, id).ok);

    // collapsing two worlds with different valuations breaks (atoms)
    const auto& pure2 = *find_fixture("frame-pure")->model;
    GeneralizedEpistemicModel labelled = pure2;
    labelled.valuation = {{"p"}, {}};
    auto one = GeneralizedEpistemicFrame::make({"a", "b", "c"}, {"t"});
    for (int mask = 0; mask < 8; ++mask) one.rel[static_cast<std::size_t>(mask)] = per_closure({{0, 0}}, 1);
    GeneralizedEpistemicModel tm{one, {{"p"}}};
    auto r = check_functional_bisimulation(labelled, tm, {0, 0});
    REQUIRE(!r.ok);
    CHECK(r.clause == "atoms");
}

TEST_CASE("bisimulation quotient is a bisimulation and preserves formulas") {
    testgen::Rng rng(10);
    const std::vector<std::string> atoms = {"p", "q"};
    for (int i = 0; i < 200; ++i) {
        auto m = testgen::random_model(rng, 5, 3);
        std::vector<int> cls;
        auto q = bisimulation_quotient(m, cls);
        REQUIRE(validate_frame(q.frame).empty());
        CHECK(check_functional_bisimulation(m, q, cls).ok);
        for (int w = 0; w < m.frame.world_count(); ++w)
            for (int d = 0; d <= 3; ++d)
                CHECK(modal_equiv_upto(m, w, q, cls[static_cast<std::size_t>(w)], d));
        // spot-check with random formulas
        for (int k = 0; k < 10; ++k) {
            Formula f = testgen::random_formula(rng, m.frame.agent_count(), atoms, 3);
            int w = static_cast<int>(rng() % static_cast<unsigned>(m.frame.world_count()));
            CHECK(satisfies(m, w, f) == satisfies(q, cls[static_cast<std::size_t>(w)], f));
        }
    }
}

TEST_CASE("modal equivalence: trivial cases and the formula oracle") {
    const auto& m = fig3();
    for (int w = 0; w < m.frame.world_count(); ++w)
        CHECK(modal_equiv_upto(m, w, m, w, 3));

    // different atoms split at depth 0
    CHECK(!modal_equiv_upto(m, widx(m, "w2"), m, widx(m, "w3"), 0));

    // the game agrees with an exact formula witness in both directions
    testgen::Rng rng(11);
    const std::vector<std::string> atoms = {"p", "q"};
    int inequiv = 0;
    for (int i = 0; i < 300; ++i) {
        auto m1 = testgen::random_model(rng, 4, 2);
        auto m2 = testgen::random_model(rng, 4, 2);
        if (m1.frame.agents != m2.frame.agents) continue;
        int w1 = static_cast<int>(rng() % static_cast<unsigned>(m1.frame.world_count()));
        int w2 = static_cast<int>(rng() % static_cast<unsigned>(m2.frame.world_count()));
        for (int d = 0; d <= 2; ++d) {
            auto phi = distinguishing_formula(m1, w1, m2, w2, d);
            if (modal_equiv_upto(m1, w1, m2, w2, d)) {
                CHECK(!phi.has_value());
                // no formula in a generated battery may distinguish them
                for (int k = 0; k < 20; ++k) {
                    Formula f = testgen::random_formula(rng, m1.frame.agent_count(), atoms, d);
                    CHECK(satisfies(m1, w1, f) == satisfies(m2, w2, f));
                }
            } else {
                ++inequiv;
                REQUIRE(phi.has_value());
                CHECK(modal_depth(*phi) <= d);
                CHECK(satisfies(m1, w1, *phi) != satisfies(m2, w2, *phi));
            }
        }
    }
    CHECK(inequiv > 100);
}
