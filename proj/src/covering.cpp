#include "episim/covering.hpp"

#include <algorithm>
#include <numeric>

namespace episim {

int TopCset::world_index(std::string_view id) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
        if (worlds[i].id == id) return static_cast<int>(i);
    return -1;
}

Cset expand_top(const TopCset& t) {
    Cset x = Cset::make(t.agents);
    // simplices at level V: one per world with V <= color; index = position
    // among such worlds
    std::vector<std::vector<int>> at_level(static_cast<std::size_t>(x.level_count()));
    for (int w = 0; w < t.world_count(); ++w)
        for (int mask = 0; mask < x.level_count(); ++mask)
            if (AgentSet(static_cast<std::uint32_t>(mask)).subset_of(t.worlds[static_cast<std::size_t>(w)].color)) {
                at_level[static_cast<std::size_t>(mask)].push_back(w);
                x.ids[static_cast<std::size_t>(mask)].push_back(
                    t.worlds[static_cast<std::size_t>(w)].id + "/" +
                    group_label(AgentSet(static_cast<std::uint32_t>(mask)), t.agents));
            }
    auto pos = [&](int mask, int w) {
        const auto& lvl = at_level[static_cast<std::size_t>(mask)];
        return static_cast<int>(std::find(lvl.begin(), lvl.end(), w) - lvl.begin());
    };
    for (int mask = 1; mask < x.level_count(); ++mask)
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members()) {
            auto& tbl = x.face[static_cast<std::size_t>(mask)][static_cast<std::size_t>(a)];
            for (int w : at_level[static_cast<std::size_t>(mask)])
                tbl.push_back(pos(mask & ~(1 << a), w));
        }
    return x;
}

std::string describe(const CoveringDefect& d) {
    switch (d.kind) {
        case CoveringDefect::Kind::BadImage:
            return "world " + d.world + " has no valid image simplex of its color";
        case CoveringDefect::Kind::MissingPreimage:
            return "maximal base simplex " + d.simplex + " has no preimage world";
    }
    return "";
}

std::vector<CoveringDefect> validate_covering(const EpistemicCovering& c) {
    std::vector<CoveringDefect> out;
    for (int w = 0; w < c.top.world_count(); ++w) {
        AgentSet col = c.top.worlds[static_cast<std::size_t>(w)].color;
        int img = c.image[static_cast<std::size_t>(w)];
        if (img < 0 || img >= c.base.size(col))
            out.push_back({CoveringDefect::Kind::BadImage, c.top.worlds[static_cast<std::size_t>(w)].id, "", col});
    }
    if (!out.empty()) return out;  // cannot probe faces through bad images

    auto maximal = c.base.maximal_flags();
    std::vector<std::vector<char>> hit(static_cast<std::size_t>(c.base.level_count()));
    for (int mask = 0; mask < c.base.level_count(); ++mask)
        hit[static_cast<std::size_t>(mask)].assign(c.base.ids[static_cast<std::size_t>(mask)].size(), 0);
    for (int w = 0; w < c.top.world_count(); ++w) {
        AgentSet col = c.top.worlds[static_cast<std::size_t>(w)].color;
        hit[col.bits][static_cast<std::size_t>(c.image[static_cast<std::size_t>(w)])] = 1;
    }
    for (int mask = 0; mask < c.base.level_count(); ++mask)
        for (std::size_t s = 0; s < c.base.ids[static_cast<std::size_t>(mask)].size(); ++s)
            if (maximal[static_cast<std::size_t>(mask)][s] && !hit[static_cast<std::size_t>(mask)][s])
                out.push_back({CoveringDefect::Kind::MissingPreimage, "",
                               c.base.ids[static_cast<std::size_t>(mask)][s],
                               AgentSet(static_cast<std::uint32_t>(mask))});
    return out;
}

// --------------------------------------------------------------------------

GeneralizedEpistemicModel kappa(const EpistemicCoveringModel& x) {
    const EpistemicCovering& c = x.cov;
    std::vector<std::string> ids;
    ids.reserve(c.top.worlds.size());
    for (const auto& w : c.top.worlds) ids.push_back(w.id);

    GeneralizedEpistemicModel m;
    m.frame = GeneralizedEpistemicFrame::make(c.top.agents, std::move(ids));
    const int n = c.top.world_count();
    for (int mask = 0; mask < m.frame.group_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        std::vector<int> raw(static_cast<std::size_t>(n), -1);
        for (int w = 0; w < n; ++w)
            if (g.subset_of(c.top.worlds[static_cast<std::size_t>(w)].color))
                raw[static_cast<std::size_t>(w)] = c.world_face(w, g);
        m.frame.rel[static_cast<std::size_t>(mask)] = Per::from_class_ids(std::move(raw));
    }
    m.valuation = x.labels;
    return m;
}

namespace {

// ~_g classes ordered by lexicographically least member id, plus the class
// position of every world (-1 outside the domain). This fixes sigma's base
// simplex order, which is therefore canonical.
struct LevelClasses {
    std::vector<std::vector<int>> classes;
    std::vector<int> pos_of_world;
};

LevelClasses sigma_level(const GeneralizedEpistemicFrame& f, AgentSet g) {
    LevelClasses out;
    auto classes = f.per(g).classes();
    std::vector<std::pair<std::string, std::size_t>> key;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::string least = f.worlds[static_cast<std::size_t>(classes[i].front())];
        for (int w : classes[i])
            least = std::min(least, f.worlds[static_cast<std::size_t>(w)]);
        key.emplace_back(std::move(least), i);
    }
    std::sort(key.begin(), key.end());
    out.pos_of_world.assign(static_cast<std::size_t>(f.world_count()), -1);
    for (std::size_t p = 0; p < key.size(); ++p) {
        out.classes.push_back(classes[key[p].second]);
        for (int w : out.classes.back()) out.pos_of_world[static_cast<std::size_t>(w)] = static_cast<int>(p);
    }
    return out;
}

std::string class_id(const GeneralizedEpistemicFrame& f, AgentSet g, const std::vector<int>& cls) {
    std::string least = f.worlds[static_cast<std::size_t>(cls.front())];
    for (int w : cls) least = std::min(least, f.worlds[static_cast<std::size_t>(w)]);
    return group_label(g, f.agents) + ":" + least;
}

}  // namespace

EpistemicCoveringModel sigma(const GeneralizedEpistemicModel& m) {
    const auto& f = m.frame;
    EpistemicCoveringModel x;
    x.cov.top.agents = f.agents;
    for (int w = 0; w < f.world_count(); ++w)
        x.cov.top.worlds.push_back({f.worlds[static_cast<std::size_t>(w)], alive_set(f, w)});

    x.cov.base = Cset::make(f.agents);
    std::vector<LevelClasses> lvl(static_cast<std::size_t>(f.group_count()));
    for (int mask = 0; mask < f.group_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        lvl[static_cast<std::size_t>(mask)] = sigma_level(f, g);
        for (const auto& cls : lvl[static_cast<std::size_t>(mask)].classes)
            x.cov.base.ids[static_cast<std::size_t>(mask)].push_back(class_id(f, g, cls));
    }
    for (int mask = 1; mask < f.group_count(); ++mask)
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members()) {
            auto& tbl = x.cov.base.face[static_cast<std::size_t>(mask)][static_cast<std::size_t>(a)];
            int sub = mask & ~(1 << a);
            for (const auto& cls : lvl[static_cast<std::size_t>(mask)].classes)
                tbl.push_back(lvl[static_cast<std::size_t>(sub)].pos_of_world[static_cast<std::size_t>(cls.front())]);
        }
    for (int w = 0; w < f.world_count(); ++w) {
        AgentSet live = x.cov.top.worlds[static_cast<std::size_t>(w)].color;
        x.cov.image.push_back(lvl[live.bits].pos_of_world[static_cast<std::size_t>(w)]);
    }
    x.labels = m.valuation;
    return x;
}

EpistemicCoveringModel canonical_form(const EpistemicCoveringModel& x) {
    const EpistemicCovering& c = x.cov;
    const int levels = c.base.level_count();

    // key of a base simplex: sorted ids of the worlds whose image has it as a face
    std::vector<std::vector<std::vector<std::string>>> key(static_cast<std::size_t>(levels));
    for (int mask = 0; mask < levels; ++mask)
        key[static_cast<std::size_t>(mask)].resize(c.base.ids[static_cast<std::size_t>(mask)].size());
    for (int w = 0; w < c.top.world_count(); ++w) {
        AgentSet col = c.top.worlds[static_cast<std::size_t>(w)].color;
        for (std::uint32_t sub = col.bits;; sub = (sub - 1) & col.bits) {
            int s = c.world_face(w, AgentSet(sub));
            key[static_cast<std::size_t>(sub)][static_cast<std::size_t>(s)].push_back(
                c.top.worlds[static_cast<std::size_t>(w)].id);
            if (sub == 0) break;
        }
    }

    EpistemicCoveringModel out;
    out.cov.top = c.top;
    out.cov.base = Cset::make(c.base.agents);
    out.labels = x.labels;

    std::vector<std::vector<int>> perm(static_cast<std::size_t>(levels));  // old -> new
    for (int mask = 0; mask < levels; ++mask) {
        const auto& lvl_ids = c.base.ids[static_cast<std::size_t>(mask)];
        std::vector<int> order(lvl_ids.size());
        std::iota(order.begin(), order.end(), 0);
        for (auto& ks : key[static_cast<std::size_t>(mask)]) {
            std::sort(ks.begin(), ks.end());
            ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const auto& ka = key[static_cast<std::size_t>(mask)][static_cast<std::size_t>(a)];
            const auto& kb = key[static_cast<std::size_t>(mask)][static_cast<std::size_t>(b)];
            if (ka != kb) return ka < kb;
            return lvl_ids[static_cast<std::size_t>(a)] < lvl_ids[static_cast<std::size_t>(b)];
        });
        perm[static_cast<std::size_t>(mask)].assign(lvl_ids.size(), -1);
        for (std::size_t p = 0; p < order.size(); ++p) {
            int old = order[p];
            perm[static_cast<std::size_t>(mask)][static_cast<std::size_t>(old)] = static_cast<int>(p);
            const auto& ks = key[static_cast<std::size_t>(mask)][static_cast<std::size_t>(old)];
            std::string id = group_label(AgentSet(static_cast<std::uint32_t>(mask)), c.base.agents) + ":";
            id += ks.empty() ? "~" + lvl_ids[static_cast<std::size_t>(old)] : ks.front();
            out.cov.base.ids[static_cast<std::size_t>(mask)].push_back(std::move(id));
        }
    }
    for (int mask = 1; mask < levels; ++mask)
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members()) {
            int sub = mask & ~(1 << a);
            const auto& old_tbl = c.base.face[static_cast<std::size_t>(mask)][static_cast<std::size_t>(a)];
            auto& tbl = out.cov.base.face[static_cast<std::size_t>(mask)][static_cast<std::size_t>(a)];
            tbl.assign(old_tbl.size(), -1);
            for (std::size_t old = 0; old < old_tbl.size(); ++old)
                tbl[static_cast<std::size_t>(perm[static_cast<std::size_t>(mask)][old])] =
                    perm[static_cast<std::size_t>(sub)][static_cast<std::size_t>(old_tbl[old])];
        }
    for (int w = 0; w < c.top.world_count(); ++w) {
        AgentSet col = c.top.worlds[static_cast<std::size_t>(w)].color;
        out.cov.image.push_back(perm[col.bits][static_cast<std::size_t>(c.image[static_cast<std::size_t>(w)])]);
    }
    return out;
}

// --------------------------------------------------------------------------

bool satisfies_covering(const EpistemicCoveringModel& x, int world, const Formula& phi) {
    switch (phi.kind()) {
        case Formula::Kind::Atom: {
            const auto& l = x.labels[static_cast<std::size_t>(world)];
            return std::binary_search(l.begin(), l.end(), phi.atom_name());
        }
        case Formula::Kind::Neg:
            return !satisfies_covering(x, world, phi.child());
        case Formula::Kind::And:
            return satisfies_covering(x, world, phi.left()) &&
                   satisfies_covering(x, world, phi.right());
        case Formula::Kind::D: {
            AgentSet g = phi.group();
            AgentSet col = x.cov.top.worlds[static_cast<std::size_t>(world)].color;
            if (!g.subset_of(col)) return true;  // vacuous outside the color
            int target = x.cov.world_face(world, g);
            for (int w2 = 0; w2 < x.cov.top.world_count(); ++w2) {
                AgentSet c2 = x.cov.top.worlds[static_cast<std::size_t>(w2)].color;
                if (!g.subset_of(c2) || x.cov.world_face(w2, g) != target) continue;
                if (!satisfies_covering(x, w2, phi.child())) return false;
            }
            return true;
        }
    }
    return false;
}

static bool cov_explain_rec(const EpistemicCoveringModel& x, int world, const Formula& phi,
                            std::vector<EvalStep>& steps) {
    switch (phi.kind()) {
        case Formula::Kind::Atom:
        case Formula::Kind::Neg:
            if (phi.kind() == Formula::Kind::Neg) return !cov_explain_rec(x, world, phi.child(), steps);
            return satisfies_covering(x, world, phi);
        case Formula::Kind::And: {
            bool l = cov_explain_rec(x, world, phi.left(), steps);
            bool r = cov_explain_rec(x, world, phi.right(), steps);
            return l && r;
        }
        case Formula::Kind::D: {
            AgentSet g = phi.group();
            AgentSet col = x.cov.top.worlds[static_cast<std::size_t>(world)].color;
            std::vector<int> acc;
            if (g.subset_of(col)) {
                int target = x.cov.world_face(world, g);
                std::vector<int> order(static_cast<std::size_t>(x.cov.top.world_count()));
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(), [&](int a, int b) {
                    return x.cov.top.worlds[static_cast<std::size_t>(a)].id <
                           x.cov.top.worlds[static_cast<std::size_t>(b)].id;
                });
                for (int w2 : order) {
                    AgentSet c2 = x.cov.top.worlds[static_cast<std::size_t>(w2)].color;
                    if (g.subset_of(c2) && x.cov.world_face(w2, g) == target) acc.push_back(w2);
                }
            }
            bool verdict = true;
            for (int w2 : acc)
                if (!cov_explain_rec(x, w2, phi.child(), steps)) verdict = false;
            EvalStep st;
            st.formula = print_formula(phi, x.cov.top.agents);
            st.world = x.cov.top.worlds[static_cast<std::size_t>(world)].id;
            for (int w2 : acc) st.accessible.push_back(x.cov.top.worlds[static_cast<std::size_t>(w2)].id);
            st.verdict = verdict;
            steps.push_back(std::move(st));
            return verdict;
        }
    }
    return false;
}

bool satisfies_covering_explain(const EpistemicCoveringModel& x, int world, const Formula& phi,
                                std::vector<EvalStep>& steps) {
    return cov_explain_rec(x, world, phi, steps);
}

// --------------------------------------------------------------------------

CoveringPropertyVerdict check_covering_property(const EpistemicCovering& c, ModelProperty p) {
    CoveringPropertyVerdict v;
    v.prop = p;
    const int n = c.top.world_count();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return c.top.worlds[static_cast<std::size_t>(a)].id < c.top.worlds[static_cast<std::size_t>(b)].id;
    });
    auto wid = [&](int w) { return c.top.worlds[static_cast<std::size_t>(w)].id; };

    switch (p) {
        case ModelProperty::TrivialEmptyGroup: {
            const auto& bot = c.base.ids[0];
            if (bot.size() > 1) {
                v.holds = false;
                auto two = bot;
                std::sort(two.begin(), two.end());
                v.witness = {two[0], two[1]};
            }
            return v;
        }
        case ModelProperty::NoEmptyWorlds: {
            for (int w : order)
                if (c.top.worlds[static_cast<std::size_t>(w)].color.empty()) {
                    v.holds = false;
                    v.witness = {wid(w)};
                    return v;
                }
            return v;
        }
        case ModelProperty::Proper: {
            for (int i : order)
                for (int j : order) {
                    if (i == j) continue;
                    if (c.top.worlds[static_cast<std::size_t>(i)].color ==
                            c.top.worlds[static_cast<std::size_t>(j)].color &&
                        c.image[static_cast<std::size_t>(i)] == c.image[static_cast<std::size_t>(j)]) {
                        v.holds = false;
                        v.witness = {wid(i), wid(j)};
                        return v;
                    }
                }
            return v;
        }
        case ModelProperty::Maximal: {
            // every base simplex of dimension >= 0 must be a world image
            for (int mask = 1; mask < c.base.level_count(); ++mask) {
                std::vector<char> hit(c.base.ids[static_cast<std::size_t>(mask)].size(), 0);
                for (int w = 0; w < n; ++w)
                    if (c.top.worlds[static_cast<std::size_t>(w)].color.bits ==
                        static_cast<std::uint32_t>(mask))
                        hit[static_cast<std::size_t>(c.image[static_cast<std::size_t>(w)])] = 1;
                for (std::size_t s = 0; s < hit.size(); ++s)
                    if (!hit[s]) {
                        v.holds = false;
                        v.witness = {c.base.ids[static_cast<std::size_t>(mask)][s]};
                        return v;
                    }
            }
            return v;
        }
        case ModelProperty::Minimal: {
            auto maximal = c.base.maximal_flags();
            for (int w : order) {
                AgentSet col = c.top.worlds[static_cast<std::size_t>(w)].color;
                if (!maximal[col.bits][static_cast<std::size_t>(c.image[static_cast<std::size_t>(w)])]) {
                    v.holds = false;
                    v.witness = {wid(w),
                                 c.base.ids[col.bits][static_cast<std::size_t>(c.image[static_cast<std::size_t>(w)])]};
                    return v;
                }
            }
            return v;
        }
        case ModelProperty::Pure: {
            AgentSet all = AgentSet::all(static_cast<int>(c.top.agents.size()));
            for (int w : order)
                if (c.top.worlds[static_cast<std::size_t>(w)].color != all) {
                    v.holds = false;
                    v.witness = {wid(w)};
                    return v;
                }
            return v;
        }
        case ModelProperty::StandardGroupKnowledge: {
            ComplexVerdict cv = is_simplicial_complex(c.base);
            if (!cv.holds) {
                v.holds = false;
                v.witness = {c.base.ids[cv.group.bits][static_cast<std::size_t>(cv.s1)],
                             c.base.ids[cv.group.bits][static_cast<std::size_t>(cv.s2)]};
            }
            return v;
        }
    }
    return v;
}

std::string describe(const CoveringPropertyVerdict& v) {
    if (v.holds) return "TRUE";
    std::string out = "FALSE (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
        if (i) out += ',';
        out += v.witness[i];
    }
    out += ')';
    return out;
}

// --------------------------------------------------------------------------

CheckResult check_covering_morphism(const EpistemicCoveringModel& x,
                                    const EpistemicCoveringModel& y,
                                    const CoveringMorphismWitness& wit) {
    CheckResult r;
    const EpistemicCovering& cx = x.cov;
    const EpistemicCovering& cy = y.cov;
    auto fail = [&](const char* clause, std::string detail) {
        r.ok = false;
        r.clause = clause;
        r.detail = std::move(detail);
        return r;
    };

    if (static_cast<int>(wit.world_map.size()) != cx.top.world_count() ||
        static_cast<int>(wit.base_map.size()) != cx.base.level_count())
        return fail("totality", "witness shape mismatch");
    for (int mask = 0; mask < cx.base.level_count(); ++mask) {
        if (wit.base_map[static_cast<std::size_t>(mask)].size() !=
            cx.base.ids[static_cast<std::size_t>(mask)].size())
            return fail("totality", "base map shape mismatch");
        for (int s : wit.base_map[static_cast<std::size_t>(mask)])
            if (s < 0 || s >= cy.base.size(AgentSet(static_cast<std::uint32_t>(mask))))
                return fail("totality", "base map image out of range");
    }
    for (int t : wit.world_map)
        if (t < 0 || t >= cy.top.world_count()) return fail("totality", "world map image out of range");

    for (int w = 0; w < cx.top.world_count(); ++w) {
        AgentSet col = cx.top.worlds[static_cast<std::size_t>(w)].color;
        int t = wit.world_map[static_cast<std::size_t>(w)];
        if (!col.subset_of(cy.top.worlds[static_cast<std::size_t>(t)].color)) {
            r.u = w;
            return fail("color", "image world misses the source color");
        }
    }

    // alpha_B commutes with the face maps
    for (int mask = 1; mask < cx.base.level_count(); ++mask)
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members()) {
            int sub = mask & ~(1 << a);
            AgentSet g(static_cast<std::uint32_t>(mask));
            for (int s = 0; s < cx.base.size(g); ++s) {
                int lhs = cy.base.face1(g, a, wit.base_map[static_cast<std::size_t>(mask)][static_cast<std::size_t>(s)]);
                int rhs = wit.base_map[static_cast<std::size_t>(sub)][static_cast<std::size_t>(cx.base.face1(g, a, s))];
                if (lhs != rhs) {
                    r.group = g;
                    r.u = s;
                    return fail("naturality", "base map does not commute with faces at " +
                                                  cx.base.ids[static_cast<std::size_t>(mask)][static_cast<std::size_t>(s)]);
                }
            }
        }

    // the square f' . alpha_E = alpha_B . f
    for (int w = 0; w < cx.top.world_count(); ++w) {
        AgentSet col = cx.top.worlds[static_cast<std::size_t>(w)].color;
        int t = wit.world_map[static_cast<std::size_t>(w)];
        int lhs = cy.world_face(t, col);
        int rhs = wit.base_map[col.bits][static_cast<std::size_t>(cx.image[static_cast<std::size_t>(w)])];
        if (lhs != rhs) {
            r.u = w;
            return fail("square", "square does not commute at world " +
                                      cx.top.worlds[static_cast<std::size_t>(w)].id);
        }
    }

    // labels: l(s) <= l'(up alpha(s))
    for (int w = 0; w < cx.top.world_count(); ++w) {
        const auto& lx = x.labels[static_cast<std::size_t>(w)];
        const auto& ly = y.labels[static_cast<std::size_t>(wit.world_map[static_cast<std::size_t>(w)])];
        for (const auto& p : lx)
            if (!std::binary_search(ly.begin(), ly.end(), p)) {
                r.u = w;
                return fail("labels", "label " + p + " not preserved at world " +
                                          cx.top.worlds[static_cast<std::size_t>(w)].id);
            }
    }
    return r;
}

CoveringMorphismWitness sigma_morphism(const GeneralizedEpistemicModel& src,
                                       const GeneralizedEpistemicModel& dst,
                                       const std::vector<int>& map) {
    CoveringMorphismWitness wit;
    wit.world_map = map;
    wit.base_map.resize(static_cast<std::size_t>(src.frame.group_count()));
    for (int mask = 0; mask < src.frame.group_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        LevelClasses ls = sigma_level(src.frame, g);
        LevelClasses ld = sigma_level(dst.frame, g);
        for (const auto& cls : ls.classes) {
            int target = ld.pos_of_world[static_cast<std::size_t>(map[static_cast<std::size_t>(cls.front())])];
            wit.base_map[static_cast<std::size_t>(mask)].push_back(target);
        }
    }
    return wit;
}

std::vector<int> kappa_morphism(const CoveringMorphismWitness& wit) { return wit.world_map; }

}  // namespace episim
