#include "episim/fixtures.hpp"

#include <cassert>

#include "episim/io.hpp"

namespace episim {

namespace {

using P = ModelProperty;

struct RelSpec {
    std::vector<std::string> group;
    std::vector<std::pair<std::string, std::string>> pairs;
};

GeneralizedEpistemicModel frame_fix(std::vector<std::string> agents,
                                    std::vector<std::string> worlds,
                                    std::vector<RelSpec> rels,
                                    std::vector<std::pair<std::string, std::string>> props = {}) {
    FrameData d;
    d.agents = std::move(agents);
    d.worlds = std::move(worlds);
    d.props.assign(d.worlds.size(), {});
    for (auto& [w, p] : props)
        d.props[static_cast<std::size_t>(roster_index(d.worlds, w))].push_back(p);
    for (auto& r : rels) {
        FrameData::Rel rel;
        for (auto& a : r.group) rel.group = rel.group.with(roster_index(d.agents, a));
        for (auto& [x, y] : r.pairs)
            rel.pairs.emplace_back(roster_index(d.worlds, x), roster_index(d.worlds, y));
        d.relations.push_back(std::move(rel));
    }
    return build_model(d, /*complete=*/true);  // fixtures are written as generators
}

struct SimplexSpec {
    std::string id;
    std::vector<std::string> group;
    std::vector<std::pair<std::string, std::string>> faces;  // agent -> face id
};
struct WorldSpec {
    std::string id;
    std::vector<std::string> color;
    std::string image;
    std::vector<std::string> props;
};

EpistemicCoveringModel cov_fix(std::vector<std::string> agents, std::vector<SimplexSpec> simplices,
                               std::vector<WorldSpec> worlds) {
    EpistemicCoveringModel x;
    x.cov.top.agents = agents;
    x.cov.base = Cset::make(agents);
    for (auto& s : simplices) {
        AgentSet g;
        for (auto& a : s.group) g = g.with(roster_index(agents, a));
        x.cov.base.ids[g.bits].push_back(s.id);
    }
    for (int mask = 1; mask < x.cov.base.level_count(); ++mask)
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members())
            x.cov.base.face[static_cast<std::size_t>(mask)][static_cast<std::size_t>(a)].assign(
                x.cov.base.ids[static_cast<std::size_t>(mask)].size(), -1);
    for (auto& s : simplices) {
        AgentSet g;
        for (auto& a : s.group) g = g.with(roster_index(agents, a));
        int idx = x.cov.base.find(g, s.id);
        for (auto& [agent, target] : s.faces) {
            int a = roster_index(agents, agent);
            int tgt = x.cov.base.find(g.without(a), target);
            assert(tgt >= 0);
            x.cov.base.face[g.bits][static_cast<std::size_t>(a)][static_cast<std::size_t>(idx)] = tgt;
        }
    }
    for (auto& w : worlds) {
        TopCset::World tw;
        tw.id = w.id;
        for (auto& a : w.color) tw.color = tw.color.with(roster_index(agents, a));
        x.cov.top.worlds.push_back(tw);
        x.cov.image.push_back(x.cov.base.find(tw.color, w.image));
        auto props = w.props;
        std::sort(props.begin(), props.end());
        x.labels.push_back(std::move(props));
    }
    assert(validate_cset(x.cov.base).empty());
    assert(validate_covering(x.cov).empty());
    return x;
}

std::vector<Fixture> make_fixtures() {
    std::vector<Fixture> fs;

    {
        Fixture f;
        f.name = "fig3-frame";
        f.description = "seven-world frame: dead world w5, joint-only distinguishability of "
                        "w2/w3 by {b,c}, indistinguishable pair w1/w1', sub-world w0";
        f.model = frame_fix(
            {"a", "b", "c"}, {"w0", "w1", "w1p", "w2", "w3", "w4", "w5"},
            {
                {{"a", "b", "c"}, {{"w2", "w2"}, {"w3", "w3"}}},
                {{"a", "b"}, {{"w1", "w1p"}}},
                {{"a", "c"}, {{"w4", "w4"}}},
                {{"b"}, {{"w0", "w1"}, {"w2", "w3"}}},
                {{"c"}, {{"w2", "w3"}, {"w3", "w4"}}},
                {{}, {{"w1", "w2"}, {"w5", "w5"}}},
            },
            {{"w2", "p2"}});
        f.expected = {{P::TrivialEmptyGroup, false}, {P::NoEmptyWorlds, false},
                      {P::Proper, false},           {P::Maximal, false},
                      {P::Minimal, false},          {P::Pure, false},
                      {P::StandardGroupKnowledge, false}};
        fs.push_back(std::move(f));
    }

    {
        Fixture f;
        f.name = "fig2-covering";
        f.description = "annotated covering equivalent to fig3-frame: 7 vertices, 8 edges, "
                        "2 triangles, 2 (-1)-simplices";
        f.covering = cov_fix(
            {"a", "b", "c"},
            {
                {"bot0", {}, {}},
                {"bot1", {}, {}},
                {"a_w1", {"a"}, {{"a", "bot0"}}},
                {"a_w2", {"a"}, {{"a", "bot0"}}},
                {"a_w3", {"a"}, {{"a", "bot0"}}},
                {"a_w4", {"a"}, {{"a", "bot0"}}},
                {"b_w0", {"b"}, {{"b", "bot0"}}},
                {"b_w2", {"b"}, {{"b", "bot0"}}},
                {"c_w2", {"c"}, {{"c", "bot0"}}},
                {"e_w1", {"a", "b"}, {{"a", "b_w0"}, {"b", "a_w1"}}},
                {"ab_w2", {"a", "b"}, {{"a", "b_w2"}, {"b", "a_w2"}}},
                {"ab_w3", {"a", "b"}, {{"a", "b_w2"}, {"b", "a_w3"}}},
                {"ac_w2", {"a", "c"}, {{"a", "c_w2"}, {"c", "a_w2"}}},
                {"ac_w3", {"a", "c"}, {{"a", "c_w2"}, {"c", "a_w3"}}},
                {"ac_w4", {"a", "c"}, {{"a", "c_w2"}, {"c", "a_w4"}}},
                {"bc_w2", {"b", "c"}, {{"b", "c_w2"}, {"c", "b_w2"}}},
                {"bc_w3", {"b", "c"}, {{"b", "c_w2"}, {"c", "b_w2"}}},
                {"t_w2", {"a", "b", "c"}, {{"a", "bc_w2"}, {"b", "ac_w2"}, {"c", "ab_w2"}}},
                {"t_w3", {"a", "b", "c"}, {{"a", "bc_w3"}, {"b", "ac_w3"}, {"c", "ab_w3"}}},
            },
            {
                {"w0", {"b"}, "b_w0", {}},
                {"w1", {"a", "b"}, "e_w1", {}},
                {"w1p", {"a", "b"}, "e_w1", {}},
                {"w2", {"a", "b", "c"}, "t_w2", {"p2"}},
                {"w3", {"a", "b", "c"}, "t_w3", {}},
                {"w4", {"a", "c"}, "ac_w4", {}},
                {"w5", {}, "bot1", {}},
            });
        f.expected = {{P::TrivialEmptyGroup, false}, {P::NoEmptyWorlds, false},
                      {P::Proper, false},           {P::Maximal, false},
                      {P::Minimal, false},          {P::Pure, false},
                      {P::StandardGroupKnowledge, false}};
        fs.push_back(std::move(f));
    }

    {
        Fixture f;
        f.name = "frame-trivial-empty";
        f.description = "trivial empty-group knowledge, one empty world, not proper";
        f.model = frame_fix({"a", "b"}, {"w0", "w1", "w2"},
                            {{{"a", "b"}, {{"w0", "w1"}}}, {{}, {{"w1", "w2"}}}});
        f.expected = {{P::TrivialEmptyGroup, true}, {P::NoEmptyWorlds, false}, {P::Proper, false}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "frame-no-empty";
        f.description = "non-trivial empty-group knowledge, no empty worlds, not proper";
        f.model = frame_fix({"a", "b"}, {"w0", "w1", "w2"},
                            {{{"a", "b"}, {{"w0", "w1"}}}, {{"a"}, {{"w2", "w2"}}}});
        f.expected = {{P::TrivialEmptyGroup, false}, {P::NoEmptyWorlds, true}, {P::Proper, false}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "frame-proper";
        f.description = "non-trivial empty-group knowledge, one empty world, proper";
        f.model = frame_fix({"a", "b"}, {"w0", "w1", "w2"},
                            {{{"a", "b"}, {{"w0", "w0"}, {"w1", "w1"}}},
                             {{"a"}, {{"w0", "w1"}}},
                             {{}, {{"w2", "w2"}}}});
        f.expected = {{P::TrivialEmptyGroup, false}, {P::NoEmptyWorlds, false}, {P::Proper, true}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "frame-maximal";
        f.description = "maximal: every nonempty subgroup of an alive set has a sub-world";
        f.model = frame_fix({"a", "b"}, {"w0", "w1", "w2"},
                            {{{"a", "b"}, {{"w1", "w1"}}},
                             {{"a"}, {{"w0", "w1"}}},
                             {{"b"}, {{"w1", "w2"}}}});
        f.expected = {{P::Maximal, true}, {P::Minimal, false}, {P::Pure, false}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "frame-minimal";
        f.description = "minimal: no strict sub-worlds";
        f.model = frame_fix({"a", "b", "c"}, {"w0", "w1"},
                            {{{"a", "b"}, {{"w0", "w0"}}},
                             {{"a", "c"}, {{"w1", "w1"}}},
                             {{"a"}, {{"w0", "w1"}}}});
        f.expected = {{P::Minimal, true}, {P::Maximal, false}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "frame-pure";
        f.description = "pure: all agents alive in both worlds";
        f.model = frame_fix({"a", "b", "c"}, {"w0", "w1"},
                            {{{"a", "b", "c"}, {{"w0", "w0"}, {"w1", "w1"}}},
                             {{"b", "c"}, {{"w0", "w1"}}}});
        f.expected = {{P::Pure, true}, {P::Minimal, true}, {P::NoEmptyWorlds, true}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "frame-nonstandard";
        f.description = "non-standard group knowledge: a and b each relate w0,w1 but {a,b} does not";
        f.model = frame_fix({"a", "b"}, {"w0", "w1"},
                            {{{"a", "b"}, {{"w0", "w0"}, {"w1", "w1"}}},
                             {{"a"}, {{"w0", "w1"}}},
                             {{"b"}, {{"w0", "w1"}}}});
        f.expected = {{P::StandardGroupKnowledge, false}, {P::Pure, true}};
        fs.push_back(std::move(f));
    }

    // covering pictographs mirroring the small frames
    {
        Fixture f;
        f.name = "cov-trivial-empty";
        f.description = "one (-1)-simplex in the base, an empty world, not proper";
        f.covering = cov_fix({"a", "b"},
                             {{"bot", {}, {}},
                              {"va", {"a"}, {{"a", "bot"}}},
                              {"vb", {"b"}, {{"b", "bot"}}},
                              {"e", {"a", "b"}, {{"a", "vb"}, {"b", "va"}}}},
                             {{"w0", {"a", "b"}, "e", {}},
                              {"w1", {"a", "b"}, "e", {}},
                              {"w2", {}, "bot", {}}});
        f.expected = {{P::TrivialEmptyGroup, true}, {P::NoEmptyWorlds, false}, {P::Proper, false}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "cov-no-empty";
        f.description = "two (-1)-simplices, no empty worlds, not proper";
        f.covering = cov_fix({"a", "b"},
                             {{"bot0", {}, {}},
                              {"bot1", {}, {}},
                              {"va", {"a"}, {{"a", "bot0"}}},
                              {"vb", {"b"}, {{"b", "bot0"}}},
                              {"e", {"a", "b"}, {{"a", "vb"}, {"b", "va"}}},
                              {"v2", {"a"}, {{"a", "bot1"}}}},
                             {{"w0", {"a", "b"}, "e", {}},
                              {"w1", {"a", "b"}, "e", {}},
                              {"w2", {"a"}, "v2", {}}});
        f.expected = {{P::TrivialEmptyGroup, false}, {P::NoEmptyWorlds, true}, {P::Proper, false}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "cov-proper";
        f.description = "proper, an empty world, non-trivial empty-group knowledge";
        f.covering = cov_fix({"a", "b"},
                             {{"bot0", {}, {}},
                              {"bot1", {}, {}},
                              {"va", {"a"}, {{"a", "bot0"}}},
                              {"vb0", {"b"}, {{"b", "bot0"}}},
                              {"vb1", {"b"}, {{"b", "bot0"}}},
                              {"e0", {"a", "b"}, {{"a", "vb0"}, {"b", "va"}}},
                              {"e1", {"a", "b"}, {{"a", "vb1"}, {"b", "va"}}}},
                             {{"w0", {"a", "b"}, "e0", {}},
                              {"w1", {"a", "b"}, "e1", {}},
                              {"w2", {}, "bot1", {}}});
        f.expected = {{P::TrivialEmptyGroup, false}, {P::NoEmptyWorlds, false}, {P::Proper, true}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "cov-maximal";
        f.description = "maximal: every simplex of dimension >= 0 is annotated";
        f.covering = cov_fix({"a", "b"},
                             {{"bot", {}, {}},
                              {"va", {"a"}, {{"a", "bot"}}},
                              {"vb", {"b"}, {{"b", "bot"}}},
                              {"e", {"a", "b"}, {{"a", "vb"}, {"b", "va"}}}},
                             {{"w0", {"a"}, "va", {}},
                              {"w1", {"a", "b"}, "e", {}},
                              {"w2", {"b"}, "vb", {}}});
        f.expected = {{P::Maximal, true}, {P::Minimal, false}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "cov-minimal";
        f.description = "minimal: only maximal simplices are annotated";
        f.covering = cov_fix({"a", "b", "c"},
                             {{"bot", {}, {}},
                              {"va", {"a"}, {{"a", "bot"}}},
                              {"vb", {"b"}, {{"b", "bot"}}},
                              {"vc", {"c"}, {{"c", "bot"}}},
                              {"e_ab", {"a", "b"}, {{"a", "vb"}, {"b", "va"}}},
                              {"e_ac", {"a", "c"}, {{"a", "vc"}, {"c", "va"}}}},
                             {{"w0", {"a", "b"}, "e_ab", {}}, {"w1", {"a", "c"}, "e_ac", {}}});
        f.expected = {{P::Minimal, true}, {P::Maximal, false}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "cov-pure";
        f.description = "pure: both annotated simplices have top dimension";
        f.covering = cov_fix({"a", "b", "c"},
                             {{"bot", {}, {}},
                              {"va0", {"a"}, {{"a", "bot"}}},
                              {"va1", {"a"}, {{"a", "bot"}}},
                              {"vb", {"b"}, {{"b", "bot"}}},
                              {"vc", {"c"}, {{"c", "bot"}}},
                              {"ab0", {"a", "b"}, {{"a", "vb"}, {"b", "va0"}}},
                              {"ac0", {"a", "c"}, {{"a", "vc"}, {"c", "va0"}}},
                              {"ab1", {"a", "b"}, {{"a", "vb"}, {"b", "va1"}}},
                              {"ac1", {"a", "c"}, {{"a", "vc"}, {"c", "va1"}}},
                              {"bc", {"b", "c"}, {{"b", "vc"}, {"c", "vb"}}},
                              {"t0", {"a", "b", "c"}, {{"a", "bc"}, {"b", "ac0"}, {"c", "ab0"}}},
                              {"t1", {"a", "b", "c"}, {{"a", "bc"}, {"b", "ac1"}, {"c", "ab1"}}}},
                             {{"w0", {"a", "b", "c"}, "t0", {}}, {"w1", {"a", "b", "c"}, "t1", {}}});
        f.expected = {{P::Pure, true}, {P::StandardGroupKnowledge, true}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "cov-nonstandard";
        f.description = "non-standard group knowledge: the base has parallel edges";
        f.covering = cov_fix({"a", "b"},
                             {{"bot", {}, {}},
                              {"va", {"a"}, {{"a", "bot"}}},
                              {"vb", {"b"}, {{"b", "bot"}}},
                              {"e0", {"a", "b"}, {{"a", "vb"}, {"b", "va"}}},
                              {"e1", {"a", "b"}, {{"a", "vb"}, {"b", "va"}}}},
                             {{"w0", {"a", "b"}, "e0", {}}, {"w1", {"a", "b"}, "e1", {}}});
        f.expected = {{P::StandardGroupKnowledge, false}, {P::Pure, true}};
        fs.push_back(std::move(f));
    }

    {
        Fixture f;
        f.name = "sensor-scenario";
        f.description = "three sensors with unit disks, five one-target-per-sensor worlds";
        f.scenario = paper_sensor_scenario();
        f.expected = {{P::Pure, true}};
        fs.push_back(std::move(f));
    }
    {
        Fixture f;
        f.name = "sensor-frame";
        f.description = "epistemic frame built from sensor-scenario";
        f.model = build_sensor_frame(paper_sensor_scenario());
        f.expected = {{P::Pure, true}, {P::Proper, true}, {P::TrivialEmptyGroup, true}};
        fs.push_back(std::move(f));
    }

    return fs;
}

}  // namespace

const std::vector<Fixture>& builtin_fixtures() {
    static const std::vector<Fixture> fs = make_fixtures();
    return fs;
}

const Fixture* find_fixture(std::string_view name) {
    for (const auto& f : builtin_fixtures())
        if (f.name == name) return &f;
    return nullptr;
}

}  // namespace episim
