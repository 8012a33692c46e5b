#include <doctest.h>

#include "episim/fixtures.hpp"
#include "support/gen.hpp"

using namespace episim;

namespace {

const EpistemicCoveringModel& fig2() { return *find_fixture("fig2-covering")->covering; }

// two triangles sharing their a- and b-vertices through parallel ab-edges
Cset doubled_edge_cset() {
    Cset x = Cset::make({"a", "b", "c"});
    x.ids[0] = {"bot"};
    x.ids[0b001] = {"va"};
    x.ids[0b010] = {"vb"};
    x.ids[0b100] = {"vc0", "vc1"};
    x.ids[0b011] = {"ab0", "ab1"};
    x.ids[0b101] = {"ac0", "ac1"};
    x.ids[0b110] = {"bc0", "bc1"};
    x.ids[0b111] = {"t0", "t1"};
    auto set = [&](int mask, int agent, std::vector<int> tbl) {
        x.face[static_cast<std::size_t>(mask)][static_cast<std::size_t>(agent)] = std::move(tbl);
    };
    set(0b001, 0, {0});
    set(0b010, 1, {0});
    set(0b100, 2, {0, 0});
    set(0b011, 0, {0, 0});  // remove a -> vb (shared)
    set(0b011, 1, {0, 0});  // remove b -> va (shared): ab0, ab1 are parallel edges
    set(0b101, 0, {0, 1});
    set(0b101, 2, {0, 0});
    set(0b110, 1, {0, 1});
    set(0b110, 2, {0, 0});
    set(0b111, 0, {0, 1});  // remove a -> bc_i
    set(0b111, 1, {0, 1});  // remove b -> ac_i
    set(0b111, 2, {0, 1});  // remove c -> ab_i
    return x;
}

}  // namespace

TEST_CASE("fig2 base census: 7 vertices, 8 edges, 2 triangles, 2 bottom simplices") {
    const Cset& b = fig2().cov.base;
    CHECK(validate_cset(b).empty());
    int vertices = 0, edges = 0, triangles = 0;
    for (int mask = 1; mask < b.level_count(); ++mask) {
        int d = AgentSet(static_cast<std::uint32_t>(mask)).size();
        int n = static_cast<int>(b.ids[static_cast<std::size_t>(mask)].size());
        if (d == 1) vertices += n;
        if (d == 2) edges += n;
        if (d == 3) triangles += n;
    }
    CHECK(vertices == 7);
    CHECK(edges == 8);
    CHECK(triangles == 2);
    CHECK(b.ids[0].size() == 2);
    CHECK(validate_covering(fig2().cov).empty());
}

TEST_CASE("cset validation flags a broken commutation square") {
    Cset x = doubled_edge_cset();
    CHECK(validate_cset(x).empty());
    // corrupt one square: triangle t0's faces no longer commute
    x.face[0b111][0] = {1, 1};  // remove a of t0 -> bc1, but remove b still -> ac0
    auto defects = validate_cset(x);
    REQUIRE(!defects.empty());
    CHECK(defects[0].group == AgentSet(0b111));
    CHECK(defects[0].simplex == 0);
}

TEST_CASE("simplicial-complex detection") {
    Cset x = doubled_edge_cset();
    auto v = is_simplicial_complex(x);
    REQUIRE(!v.holds);  // the parallel ab-edges share both vertices
    CHECK(v.group == AgentSet(0b011));

    // any projective cset is a complex (disjoint simplices)
    TopCset t;
    t.agents = {"a", "b"};
    t.worlds = {{"w0", AgentSet(0b11)}, {"w1", AgentSet(0b11)}, {"w2", AgentSet(0b01)}};
    CHECK(is_simplicial_complex(expand_top(t)).holds);
    CHECK(validate_cset(expand_top(t)).empty());

    CHECK(!is_simplicial_complex(find_fixture("cov-nonstandard")->covering->cov.base).holds);
    CHECK(!is_simplicial_complex(fig2().cov.base).holds);  // doubled bc edge
}

TEST_CASE("covering validation catches a missing facet preimage") {
    auto x = *find_fixture("cov-minimal")->covering;
    x.cov.top.worlds.pop_back();  // drop the world annotating e_ac
    x.cov.image.pop_back();
    x.labels.pop_back();
    auto defects = validate_covering(x.cov);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].kind == CoveringDefect::Kind::MissingPreimage);
    CHECK(defects[0].simplex == "e_ac");
}

TEST_CASE("one-bottom-simplex covering with a single empty world is valid") {
    EpistemicCoveringModel x;
    x.cov.top.agents = {"a"};
    x.cov.base = Cset::make({"a"});
    x.cov.base.ids[0] = {"bot"};
    x.cov.top.worlds = {{"w", AgentSet{}}};
    x.cov.image = {0};
    x.labels = {{}};
    CHECK(validate_covering(x.cov).empty());

    auto m = kappa(x);
    CHECK(m.frame.world_count() == 1);
    CHECK(alive_set(m.frame, 0).empty());
    CHECK(m.frame.per(AgentSet{}).related(0, 0));
}

TEST_CASE("kappa on fig2 equals fig3") {
    auto m = kappa(fig2());
    CHECK(validate_frame(m.frame).empty());
    CHECK(m == *find_fixture("fig3-frame")->model);
}

TEST_CASE("sigma of a one-world pure model is a single standard simplex") {
    auto f = GeneralizedEpistemicFrame::make({"a", "b"}, {"w"});
    for (int mask = 0; mask < 4; ++mask) f.rel[static_cast<std::size_t>(mask)] = per_closure({{0, 0}}, 1);
    GeneralizedEpistemicModel m{f, {{}}};
    auto x = sigma(m);
    CHECK(validate_covering(x.cov).empty());
    CHECK(x.cov.top.worlds.size() == 1);
    CHECK(x.cov.top.worlds[0].color == AgentSet(0b11));
    for (int mask = 0; mask < 4; ++mask) CHECK(x.cov.base.ids[static_cast<std::size_t>(mask)].size() == 1);
}

TEST_CASE("sigma(fig3) is the canonical fig2 covering") {
    auto x = sigma(*find_fixture("fig3-frame")->model);
    CHECK(validate_covering(x.cov).empty());
    CHECK(x == canonical_form(x));  // sigma output is already canonical
    CHECK(x == canonical_form(fig2()));
}

TEST_CASE("round-trips are the identity on fixtures and random instances") {
    testgen::Rng rng(31);
    // kappa . sigma = id, literally
    std::vector<GeneralizedEpistemicModel> models;
    for (const auto& fx : builtin_fixtures())
        if (fx.model) models.push_back(*fx.model);
    for (int i = 0; i < 1000; ++i) models.push_back(testgen::random_model(rng));
    for (const auto& m : models) {
        auto x = sigma(m);
        CHECK(validate_covering(x.cov).empty());
        CHECK(kappa(x) == m);
    }
    // sigma . kappa = id up to canonical renaming
    std::vector<EpistemicCoveringModel> covs;
    for (const auto& fx : builtin_fixtures())
        if (fx.covering) covs.push_back(*fx.covering);
    for (int i = 0; i < 1000; ++i) covs.push_back(testgen::random_covering(rng));
    for (const auto& x : covs) {
        REQUIRE(validate_covering(x.cov).empty());
        auto back = sigma(kappa(x));
        CHECK(back == canonical_form(x));
    }
}

TEST_CASE("satisfaction agrees across kappa") {
    testgen::Rng rng(32);
    const std::vector<std::string> atoms = {"p", "q"};
    std::vector<EpistemicCoveringModel> covs = {fig2()};
    for (const auto& fx : builtin_fixtures())
        if (fx.covering) covs.push_back(*fx.covering);
    for (int i = 0; i < 200; ++i) covs.push_back(testgen::random_covering(rng));
    for (const auto& x : covs) {
        auto m = kappa(x);
        for (int w = 0; w < x.cov.top.world_count(); ++w) {
            for (int t = 0; t < 10; ++t) {
                Formula f = testgen::random_formula(rng, m.frame.agent_count(), atoms, 3);
                CHECK(satisfies_covering(x, w, f) == satisfies(m, w, f));
            }
            // alive{U} holds iff U fits the color
            for (int mask = 0; mask < m.frame.group_count(); ++mask) {
                AgentSet u(static_cast<std::uint32_t>(mask));
                CHECK(satisfies_covering(x, w, Formula::alive(u)) ==
                      u.subset_of(x.cov.top.worlds[static_cast<std::size_t>(w)].color));
            }
        }
    }
    // a (-1)-world satisfies dead{a} for every agent
    const auto& cte = *find_fixture("cov-trivial-empty")->covering;
    int w2 = cte.cov.top.world_index("w2");
    CHECK(satisfies_covering(cte, w2, parse_formula("dead{a} & dead{b}", cte.cov.top.agents)));
}

TEST_CASE("the seven properties agree across kappa and sigma") {
    testgen::Rng rng(33);
    std::vector<EpistemicCoveringModel> covs;
    for (const auto& fx : builtin_fixtures())
        if (fx.covering) covs.push_back(*fx.covering);
    for (int i = 0; i < 1000; ++i) covs.push_back(testgen::random_covering(rng));
    for (const auto& x : covs) {
        auto m = kappa(x);
        for (ModelProperty p : kAllProperties)
            CHECK(check_covering_property(x.cov, p).holds == check_property(m.frame, p).holds);
    }
    std::vector<GeneralizedEpistemicModel> models;
    for (const auto& fx : builtin_fixtures())
        if (fx.model) models.push_back(*fx.model);
    for (int i = 0; i < 1000; ++i) models.push_back(testgen::random_model(rng));
    for (const auto& m : models) {
        auto x = sigma(m);
        for (ModelProperty p : kAllProperties)
            CHECK(check_covering_property(x.cov, p).holds == check_property(m.frame, p).holds);
    }
}

TEST_CASE("covering property captions and witnesses") {
    for (const auto& fx : builtin_fixtures()) {
        if (!fx.covering) continue;
        CAPTURE(fx.name);
        for (auto [prop, expected] : fx.expected) {
            CAPTURE(property_name(prop));
            CHECK(check_covering_property(fx.covering->cov, prop).holds == expected);
        }
    }
    // the worked example: w1 and w1' share an image, so not proper
    auto v = check_covering_property(fig2().cov, ModelProperty::Proper);
    REQUIRE(!v.holds);
    CHECK(v.witness == std::vector<std::string>{"w1", "w1p"});
    // sigma's bottom level counts the empty-group classes
    auto x = sigma(*find_fixture("fig3-frame")->model);
    CHECK(x.cov.base.ids[0].size() == 2);
    CHECK(!check_covering_property(x.cov, ModelProperty::TrivialEmptyGroup).holds);
    // standard group knowledge iff the base is a complex
    testgen::Rng rng(34);
    for (int i = 0; i < 300; ++i) {
        auto cx = testgen::random_covering(rng);
        CHECK(check_property(kappa(cx).frame, ModelProperty::StandardGroupKnowledge).holds ==
              is_simplicial_complex(cx.cov.base).holds);
    }
}

TEST_CASE("covering morphisms: identity, broken square, functor images") {
    const auto& x = fig2();
    CoveringMorphismWitness id;
    id.world_map.resize(static_cast<std::size_t>(x.cov.top.world_count()));
    for (std::size_t i = 0; i < id.world_map.size(); ++i) id.world_map[i] = static_cast<int>(i);
    id.base_map.resize(static_cast<std::size_t>(x.cov.base.level_count()));
    for (int mask = 0; mask < x.cov.base.level_count(); ++mask) {
        id.base_map[static_cast<std::size_t>(mask)].resize(
            x.cov.base.ids[static_cast<std::size_t>(mask)].size());
        for (std::size_t s = 0; s < id.base_map[static_cast<std::size_t>(mask)].size(); ++s)
            id.base_map[static_cast<std::size_t>(mask)][s] = static_cast<int>(s);
    }
    CHECK(check_covering_morphism(x, x, id).ok);

    auto broken = id;
    broken.world_map[static_cast<std::size_t>(x.cov.top.world_index("w1"))] =
        x.cov.top.world_index("w2");  // the square now fails at w1
    auto r = check_covering_morphism(x, x, broken);
    REQUIRE(!r.ok);
    CHECK(r.clause == "square");

    // sigma of a frame morphism is a covering morphism; kappa sends it back
    testgen::Rng rng(35);
    for (int i = 0; i < 200; ++i) {
        auto m = testgen::random_model(rng, 4, 3);
        std::vector<int> cls;
        auto q = bisimulation_quotient(m, cls);
        REQUIRE(check_morphism(m, q, cls).ok);
        auto wit = sigma_morphism(m, q, cls);
        CHECK(check_covering_morphism(sigma(m), sigma(q), wit).ok);
        CHECK(kappa_morphism(wit) == cls);
    }
}
