#include "episim/frame.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "episim/errors.hpp"

namespace episim {

int GeneralizedEpistemicFrame::world_index(std::string_view id) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
        if (worlds[i] == id) return static_cast<int>(i);
    return -1;
}

int GeneralizedEpistemicFrame::world_index_checked(std::string_view id) const {
    int w = world_index(id);
    if (w < 0) throw UnknownWorldError(std::string(id));
    return w;
}

std::vector<int> GeneralizedEpistemicFrame::worlds_by_id() const {
    std::vector<int> order(worlds.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return worlds[static_cast<std::size_t>(a)] < worlds[static_cast<std::size_t>(b)]; });
    return order;
}

GeneralizedEpistemicFrame GeneralizedEpistemicFrame::make(std::vector<std::string> agents,
                                                          std::vector<std::string> worlds) {
    GeneralizedEpistemicFrame f;
    f.agents = std::move(agents);
    f.worlds = std::move(worlds);
    f.rel.assign(static_cast<std::size_t>(f.group_count()), Per::empty(f.world_count()));
    return f;
}

bool GeneralizedEpistemicModel::has_prop(int w, std::string_view p) const {
    const auto& v = valuation[static_cast<std::size_t>(w)];
    return std::binary_search(v.begin(), v.end(), p);
}

// --------------------------------------------------------------------------

std::string describe(const FrameDefect& d, const GeneralizedEpistemicFrame& f) {
    auto wn = [&](int w) { return f.worlds[static_cast<std::size_t>(w)]; };
    auto gn = [&](AgentSet g) { return group_label(g, f.agents); };
    switch (d.kind) {
        case FrameDefect::Kind::Asymmetric:
            return "relation " + gn(d.g1) + " lists (" + wn(d.w1) + "," + wn(d.w2) +
                   ") without its mirror pair";
        case FrameDefect::Kind::Intransitive:
            return "relation " + gn(d.g1) + " lists (" + wn(d.w1) + "," + wn(d.w2) + ") and (" +
                   wn(d.w2) + "," + wn(d.w3) + ") but not (" + wn(d.w1) + "," + wn(d.w3) + ")";
        case FrameDefect::Kind::Compatibility:
            return "compatibility: " + wn(d.w1) + " ~" + gn(d.g1) + " " + wn(d.w2) +
                   " but not ~" + gn(d.g2);
        case FrameDefect::Kind::UnionClosure:
            return "union closure: " + wn(d.w1) + " is alive for " + gn(d.g1) + " and " +
                   gn(d.g2) + " but not for " + gn(d.g1 | d.g2);
        case FrameDefect::Kind::EmptyGroupReflexivity:
            return "empty-group reflexivity: " + wn(d.w1) + " is not ~{} related to itself";
    }
    return "";
}

std::vector<FrameDefect> validate_frame(const GeneralizedEpistemicFrame& f) {
    std::vector<FrameDefect> out;
    const auto order = f.worlds_by_id();
    const int n = f.world_count();

    // (a) compatibility, checked on covers U -> U \ {a}
    for (int mask = 1; mask < f.group_count(); ++mask) {
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members()) {
            AgentSet g(static_cast<std::uint32_t>(mask));
            AgentSet sub = g.without(a);
            if (f.per(g).contained_in(f.per(sub))) continue;
            bool found = false;
            for (int i = 0; i < n && !found; ++i)
                for (int j = 0; j < n && !found; ++j) {
                    int u = order[static_cast<std::size_t>(i)], v = order[static_cast<std::size_t>(j)];
                    if (f.per(g).related(u, v) && !f.per(sub).related(u, v)) {
                        out.push_back({FrameDefect::Kind::Compatibility, g, sub, u, v, -1});
                        found = true;
                    }
                }
        }
    }

    // (b) union closure plus its nullary instance
    for (int i = 0; i < n; ++i) {
        int w = order[static_cast<std::size_t>(i)];
        std::vector<AgentSet> alive;
        for (int mask = 0; mask < f.group_count(); ++mask)
            if (f.rel[static_cast<std::size_t>(mask)].in_domain(w))
                alive.push_back(AgentSet(static_cast<std::uint32_t>(mask)));
        if (alive.empty()) {
            out.push_back({FrameDefect::Kind::EmptyGroupReflexivity, {}, {}, w, -1, -1});
            continue;
        }
        bool reported = false;
        for (std::size_t x = 0; x < alive.size() && !reported; ++x)
            for (std::size_t y = 0; y < alive.size() && !reported; ++y) {
                AgentSet u = alive[x] | alive[y];
                if (!f.per(u).in_domain(w)) {
                    out.push_back({FrameDefect::Kind::UnionClosure, alive[x], alive[y], w, -1, -1});
                    reported = true;
                }
            }
        if (!f.per(AgentSet{}).in_domain(w))
            out.push_back({FrameDefect::Kind::EmptyGroupReflexivity, {}, {}, w, -1, -1});
    }
    return out;
}

// --------------------------------------------------------------------------

AgentSet alive_set(const GeneralizedEpistemicFrame& f, int w) {
    AgentSet live;
    for (int a = 0; a < f.agent_count(); ++a)
        if (f.per(AgentSet::single(a)).in_domain(w)) live = live.with(a);
    return live;
}

bool is_subworld(const GeneralizedEpistemicFrame& f, int w, int w2) {
    AgentSet lw = alive_set(f, w);
    return lw.subset_of(alive_set(f, w2)) && f.per(lw).related(w, w2);
}

bool satisfies(const GeneralizedEpistemicModel& m, int w, const Formula& phi) {
    switch (phi.kind()) {
        case Formula::Kind::Atom:
            return m.has_prop(w, phi.atom_name());
        case Formula::Kind::Neg:
            return !satisfies(m, w, phi.child());
        case Formula::Kind::And:
            return satisfies(m, w, phi.left()) && satisfies(m, w, phi.right());
        case Formula::Kind::D: {
            const Per& p = m.frame.per(phi.group());
            if (!p.in_domain(w)) return true;  // vacuous at dead worlds
            int c = p.class_of(w);
            for (int v = 0; v < m.frame.world_count(); ++v)
                if (p.class_of(v) == c && !satisfies(m, v, phi.child())) return false;
            return true;
        }
    }
    return false;
}

static bool explain_rec(const GeneralizedEpistemicModel& m, int w, const Formula& phi,
                        std::vector<EvalStep>& steps) {
    switch (phi.kind()) {
        case Formula::Kind::Atom:
            return m.has_prop(w, phi.atom_name());
        case Formula::Kind::Neg:
            return !explain_rec(m, w, phi.child(), steps);
        case Formula::Kind::And: {
            bool l = explain_rec(m, w, phi.left(), steps);
            bool r = explain_rec(m, w, phi.right(), steps);
            return l && r;
        }
        case Formula::Kind::D: {
            const Per& p = m.frame.per(phi.group());
            std::vector<int> acc;
            if (p.in_domain(w)) {
                int c = p.class_of(w);
                for (int v : m.frame.worlds_by_id())
                    if (p.class_of(v) == c) acc.push_back(v);
            }
            bool verdict = true;
            for (int v : acc)
                if (!explain_rec(m, v, phi.child(), steps)) verdict = false;
            EvalStep step;
            step.formula = print_formula(phi, m.frame.agents);
            step.world = m.frame.worlds[static_cast<std::size_t>(w)];
            for (int v : acc) step.accessible.push_back(m.frame.worlds[static_cast<std::size_t>(v)]);
            step.verdict = verdict;
            steps.push_back(std::move(step));
            return verdict;
        }
    }
    return false;
}

bool satisfies_explain(const GeneralizedEpistemicModel& m, int w, const Formula& phi,
                       std::vector<EvalStep>& steps) {
    return explain_rec(m, w, phi, steps);
}

std::vector<std::vector<int>> quotient_classes(const GeneralizedEpistemicFrame& f, AgentSet g) {
    return f.per(g).classes();
}

std::vector<AgentSet> maximal_groups(const GeneralizedEpistemicFrame& f, int u, int v) {
    std::vector<AgentSet> rel;
    for (int mask = 0; mask < f.group_count(); ++mask)
        if (f.rel[static_cast<std::size_t>(mask)].related(u, v))
            rel.push_back(AgentSet(static_cast<std::uint32_t>(mask)));
    std::vector<AgentSet> out;
    for (AgentSet g : rel) {
        bool maximal = true;
        for (AgentSet h : rel)
            if (g.proper_subset_of(h)) { maximal = false; break; }
        if (maximal) out.push_back(g);
    }
    return out;
}

// --------------------------------------------------------------------------

const char* property_name(ModelProperty p) {
    switch (p) {
        case ModelProperty::TrivialEmptyGroup: return "TrivialEmptyGroup";
        case ModelProperty::NoEmptyWorlds: return "NoEmptyWorlds";
        case ModelProperty::Proper: return "Proper";
        case ModelProperty::Maximal: return "Maximal";
        case ModelProperty::Minimal: return "Minimal";
        case ModelProperty::Pure: return "Pure";
        case ModelProperty::StandardGroupKnowledge: return "StandardGroupKnowledge";
    }
    return "";
}

std::optional<ModelProperty> property_from_name(std::string_view s) {
    for (ModelProperty p : kAllProperties)
        if (s == property_name(p)) return p;
    return std::nullopt;
}

PropertyVerdict check_property(const GeneralizedEpistemicFrame& f, ModelProperty p) {
    PropertyVerdict v;
    v.prop = p;
    const auto order = f.worlds_by_id();
    const int n = f.world_count();
    std::vector<AgentSet> live(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) live[static_cast<std::size_t>(w)] = alive_set(f, w);

    auto fail2 = [&](int a, int b) {
        v.holds = false;
        v.w1 = a;
        v.w2 = b;
    };

    switch (p) {
        case ModelProperty::TrivialEmptyGroup: {
            const Per& e = f.per(AgentSet{});
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    int a = order[static_cast<std::size_t>(i)], b = order[static_cast<std::size_t>(j)];
                    if (!e.related(a, b)) { fail2(a, b); return v; }
                }
            return v;
        }
        case ModelProperty::NoEmptyWorlds: {
            for (int i = 0; i < n; ++i) {
                int w = order[static_cast<std::size_t>(i)];
                if (live[static_cast<std::size_t>(w)].empty()) {
                    v.holds = false;
                    v.w1 = w;
                    return v;
                }
            }
            return v;
        }
        case ModelProperty::Proper: {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    int a = order[static_cast<std::size_t>(i)], b = order[static_cast<std::size_t>(j)];
                    if (a == b) continue;
                    if (live[static_cast<std::size_t>(a)] == live[static_cast<std::size_t>(b)] &&
                        f.per(live[static_cast<std::size_t>(a)]).related(a, b)) {
                        fail2(a, b);
                        return v;
                    }
                }
            return v;
        }
        case ModelProperty::Maximal: {
            for (int i = 0; i < n; ++i) {
                int w = order[static_cast<std::size_t>(i)];
                AgentSet lw = live[static_cast<std::size_t>(w)];
                for (int mask = 1; mask < f.group_count(); ++mask) {
                    AgentSet u(static_cast<std::uint32_t>(mask));
                    if (!u.subset_of(lw)) continue;
                    bool found = false;
                    for (int w2 = 0; w2 < n && !found; ++w2)
                        if (live[static_cast<std::size_t>(w2)] == u && f.per(u).related(w2, w)) found = true;
                    if (!found) {
                        v.holds = false;
                        v.w1 = w;
                        v.group = u;
                        v.has_group = true;
                        return v;
                    }
                }
            }
            return v;
        }
        case ModelProperty::Minimal: {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    int a = order[static_cast<std::size_t>(i)], b = order[static_cast<std::size_t>(j)];
                    AgentSet la = live[static_cast<std::size_t>(a)];
                    if (la.proper_subset_of(live[static_cast<std::size_t>(b)]) && f.per(la).related(a, b)) {
                        fail2(a, b);
                        return v;
                    }
                }
            return v;
        }
        case ModelProperty::Pure: {
            for (int i = 0; i < n; ++i) {
                int w = order[static_cast<std::size_t>(i)];
                if (live[static_cast<std::size_t>(w)] != f.all_agents()) {
                    v.holds = false;
                    v.w1 = w;
                    return v;
                }
            }
            return v;
        }
        case ModelProperty::StandardGroupKnowledge: {
            // nonempty groups only; singletons are trivially fine. Bucket the
            // worlds by their tuple of singleton classes: every bucket must
            // lie inside one ~_U class.
            for (int mask = 1; mask < f.group_count(); ++mask) {
                AgentSet u(static_cast<std::uint32_t>(mask));
                if (u.size() < 2) continue;
                std::map<std::vector<int>, std::pair<int, int>> bucket;  // key -> (first world, class)
                for (int i = 0; i < n; ++i) {
                    int w = order[static_cast<std::size_t>(i)];
                    std::vector<int> key;
                    bool dead = false;
                    for (int ag : u.members()) {
                        int c = f.per(AgentSet::single(ag)).class_of(w);
                        if (c < 0) { dead = true; break; }
                        key.push_back(c);
                    }
                    if (dead) continue;
                    int cu = f.per(u).class_of(w);
                    auto [it, fresh] = bucket.try_emplace(std::move(key), std::make_pair(w, cu));
                    if (!fresh && it->second.second != cu) {
                        fail2(it->second.first, w);
                        v.group = u;
                        v.has_group = true;
                        return v;
                    }
                }
            }
            return v;
        }
    }
    return v;
}

std::string describe(const PropertyVerdict& v, const GeneralizedEpistemicFrame& f) {
    if (v.holds) return "TRUE";
    auto wn = [&](int w) { return f.worlds[static_cast<std::size_t>(w)]; };
    std::string out = "FALSE (";
    bool first = true;
    auto add = [&](const std::string& s) {
        if (!first) out += ',';
        first = false;
        out += s;
    };
    if (v.w1 >= 0) add(wn(v.w1));
    if (v.w2 >= 0) add(wn(v.w2));
    if (v.has_group) add(group_label(v.group, f.agents));
    out += ')';
    return out;
}

// --------------------------------------------------------------------------

static CheckResult totality_check(const GeneralizedEpistemicModel& src,
                                  const GeneralizedEpistemicModel& dst,
                                  const std::vector<int>& map) {
    CheckResult r;
    if (static_cast<int>(map.size()) != src.frame.world_count()) {
        r.ok = false;
        r.clause = "totality";
        r.detail = "map must assign every source world";
        return r;
    }
    for (std::size_t i = 0; i < map.size(); ++i)
        if (map[i] < 0 || map[i] >= dst.frame.world_count()) {
            r.ok = false;
            r.clause = "totality";
            r.u = static_cast<int>(i);
            r.detail = "image out of range";
            return r;
        }
    return r;
}

CheckResult check_morphism(const GeneralizedEpistemicModel& src,
                           const GeneralizedEpistemicModel& dst, const std::vector<int>& map) {
    CheckResult r = totality_check(src, dst, map);
    if (!r.ok) return r;
    const auto order = src.frame.worlds_by_id();
    for (int mask = 0; mask < src.frame.group_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        const Per& p = src.frame.per(g);
        const Per& q = dst.frame.per(g);
        for (int i : order)
            for (int j : order)
                if (p.related(i, j) &&
                    !q.related(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)])) {
                    r.ok = false;
                    r.clause = "relation";
                    r.u = i;
                    r.v = j;
                    r.group = g;
                    return r;
                }
    }
    for (int w : order) {
        for (const auto& pr : src.valuation[static_cast<std::size_t>(w)])
            if (!dst.has_prop(map[static_cast<std::size_t>(w)], pr)) {
                r.ok = false;
                r.clause = "valuation";
                r.u = w;
                r.detail = pr;
                return r;
            }
    }
    return r;
}

CheckResult check_functional_bisimulation(const GeneralizedEpistemicModel& src,
                                          const GeneralizedEpistemicModel& dst,
                                          const std::vector<int>& map,
                                          const std::vector<char>* back_at) {
    CheckResult r = totality_check(src, dst, map);
    if (!r.ok) return r;
    const auto order = src.frame.worlds_by_id();

    // (atoms) valuations preserved exactly
    for (int w : order)
        if (src.valuation[static_cast<std::size_t>(w)] !=
            dst.valuation[static_cast<std::size_t>(map[static_cast<std::size_t>(w)])]) {
            r.ok = false;
            r.clause = "atoms";
            r.u = w;
            return r;
        }

    // (forth)
    for (int mask = 0; mask < src.frame.group_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        const Per& p = src.frame.per(g);
        const Per& q = dst.frame.per(g);
        for (int i : order)
            for (int j : order)
                if (p.related(i, j) &&
                    !q.related(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)])) {
                    r.ok = false;
                    r.clause = "forth";
                    r.u = i;
                    r.v = j;
                    r.group = g;
                    return r;
                }
    }

    // (back) — preimages of each target world
    std::vector<std::vector<int>> pre(static_cast<std::size_t>(dst.frame.world_count()));
    for (std::size_t i = 0; i < map.size(); ++i)
        pre[static_cast<std::size_t>(map[i])].push_back(static_cast<int>(i));
    for (int w : order) {
        if (back_at && !(*back_at)[static_cast<std::size_t>(w)]) continue;
        int fw = map[static_cast<std::size_t>(w)];
        for (int mask = 0; mask < src.frame.group_count(); ++mask) {
            AgentSet g(static_cast<std::uint32_t>(mask));
            const Per& q = dst.frame.per(g);
            if (!q.in_domain(fw)) continue;
            for (int v2 = 0; v2 < dst.frame.world_count(); ++v2) {
                if (!q.related(fw, v2)) continue;
                bool found = false;
                for (int w2 : pre[static_cast<std::size_t>(v2)])
                    if (src.frame.per(g).related(w, w2)) { found = true; break; }
                if (!found) {
                    r.ok = false;
                    r.clause = "back";
                    r.u = w;
                    r.v = v2;  // index in the target model
                    r.group = g;
                    return r;
                }
            }
        }
    }
    return r;
}

// --------------------------------------------------------------------------
// depth-bounded modal equivalence by partition refinement over the disjoint
// union of the two models

namespace {

struct Combined {
    const GeneralizedEpistemicModel* a;
    const GeneralizedEpistemicModel* b;  // may be null
    int na, nb;

    int size() const { return na + nb; }
    const GeneralizedEpistemicModel& model_of(int i) const { return i < na ? *a : *b; }
    int local(int i) const { return i < na ? i : i - na; }

    const std::vector<std::string>& props(int i) const {
        return model_of(i).valuation[static_cast<std::size_t>(local(i))];
    }

    // combined indices of the ~_g class of i within its own model
    std::vector<int> neighbors(int i, AgentSet g) const {
        std::vector<int> out;
        const auto& m = model_of(i);
        const Per& p = m.frame.per(g);
        int w = local(i);
        if (!p.in_domain(w)) return out;
        int base = i < na ? 0 : na;
        int c = p.class_of(w);
        for (int v = 0; v < m.frame.world_count(); ++v)
            if (p.class_of(v) == c) out.push_back(base + v);
        return out;
    }
};

// level[d][i] = class of combined world i under depth-d equivalence. The
// refinement step caches, per relation class, the set of reachable previous
// classes, which also gets interned; so each round costs about
// groups * worlds instead of groups * worlds^2.
std::vector<std::vector<int>> refine_levels(const Combined& c, int depth, int group_count) {
    std::vector<std::vector<int>> level;
    const int n = c.size();

    std::vector<int> cur(static_cast<std::size_t>(n));
    {
        std::map<std::vector<std::string>, int> ids;
        for (int i = 0; i < n; ++i) {
            auto [it, fresh] = ids.try_emplace(c.props(i), static_cast<int>(ids.size()));
            cur[static_cast<std::size_t>(i)] = it->second;
        }
    }
    level.push_back(cur);

    for (int d = 1; d <= depth; ++d) {
        // per group: intern the reachable-class set of every relation class
        std::vector<std::vector<int>> reach_id(static_cast<std::size_t>(group_count));
        for (int mask = 0; mask < group_count; ++mask) {
            std::map<std::vector<int>, int> intern;
            auto per_model = [&](const GeneralizedEpistemicModel* m, int base) {
                if (!m) return;
                const Per& p = m->frame.per(AgentSet(static_cast<std::uint32_t>(mask)));
                std::vector<std::vector<int>> sets(static_cast<std::size_t>(p.class_count));
                for (int w = 0; w < m->frame.world_count(); ++w) {
                    int cl = p.class_of(w);
                    if (cl >= 0) sets[static_cast<std::size_t>(cl)].push_back(cur[static_cast<std::size_t>(base + w)]);
                }
                for (auto& s : sets) {
                    std::sort(s.begin(), s.end());
                    s.erase(std::unique(s.begin(), s.end()), s.end());
                    auto [it, fresh] = intern.try_emplace(s, static_cast<int>(intern.size()));
                    reach_id[static_cast<std::size_t>(mask)].push_back(it->second);
                }
            };
            per_model(c.a, 0);
            per_model(c.b, c.na);
        }
        // class offset of the second model's relation classes per group
        std::vector<int> offset(static_cast<std::size_t>(group_count), 0);
        for (int mask = 0; mask < group_count; ++mask)
            offset[static_cast<std::size_t>(mask)] =
                c.a->frame.per(AgentSet(static_cast<std::uint32_t>(mask))).class_count;

        std::map<std::vector<int>, int> ids;
        std::vector<int> next(static_cast<std::size_t>(n));
        std::vector<int> sig(static_cast<std::size_t>(group_count) + 1);
        for (int i = 0; i < n; ++i) {
            sig[0] = cur[static_cast<std::size_t>(i)];
            const auto& m = c.model_of(i);
            int w = c.local(i);
            for (int mask = 0; mask < group_count; ++mask) {
                int cl = m.frame.per(AgentSet(static_cast<std::uint32_t>(mask))).class_of(w);
                if (cl < 0)
                    sig[static_cast<std::size_t>(mask) + 1] = -1;
                else
                    sig[static_cast<std::size_t>(mask) + 1] =
                        reach_id[static_cast<std::size_t>(mask)]
                               [static_cast<std::size_t>(cl + (i < c.na ? 0 : offset[static_cast<std::size_t>(mask)]))];
            }
            auto [it, fresh] = ids.try_emplace(sig, static_cast<int>(ids.size()));
            next[static_cast<std::size_t>(i)] = it->second;
        }
        bool stable = std::equal(cur.begin(), cur.end(), next.begin());
        cur = std::move(next);
        level.push_back(cur);
        if (stable) {
            while (static_cast<int>(level.size()) <= depth) level.push_back(cur);
            break;
        }
    }
    return level;
}

Formula separating_formula(const Combined& c, const std::vector<std::vector<int>>& level, int u,
                           int v, int d, int group_count);

// conjunction separating class-of-u from every class reachable in `others`
Formula separate_from_all(const Combined& c, const std::vector<std::vector<int>>& level, int u,
                          const std::vector<int>& other_reps, int d, int group_count) {
    Formula acc;
    for (int rep : other_reps) {
        Formula s = separating_formula(c, level, u, rep, d, group_count);
        acc = acc.valid() ? Formula::conj(acc, s) : s;
    }
    return acc.valid() ? acc : Formula::truth();
}

Formula separating_formula(const Combined& c, const std::vector<std::vector<int>>& level, int u,
                           int v, int d, int group_count) {
    // least level at which the two worlds part ways
    int dd = 0;
    while (dd <= d && level[static_cast<std::size_t>(dd)][static_cast<std::size_t>(u)] ==
                          level[static_cast<std::size_t>(dd)][static_cast<std::size_t>(v)])
        ++dd;
    if (dd == 0) {
        const auto& pu = c.props(u);
        const auto& pv = c.props(v);
        for (const auto& p : pu)
            if (!std::binary_search(pv.begin(), pv.end(), p)) return Formula::atom(p);
        for (const auto& p : pv)
            if (!std::binary_search(pu.begin(), pu.end(), p))
                return Formula::neg(Formula::atom(p));
        return Formula::truth();  // unreachable on a genuine level-0 split
    }
    const auto& prev = level[static_cast<std::size_t>(dd - 1)];
    for (int mask = 0; mask < group_count; ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        // reachable previous-level classes, with one representative each
        auto reach = [&](int w) {
            std::vector<std::pair<int, int>> out;  // (class, representative)
            for (int j : c.neighbors(w, g)) {
                int cl = prev[static_cast<std::size_t>(j)];
                bool seen = false;
                for (auto& [x, _] : out)
                    if (x == cl) { seen = true; break; }
                if (!seen) out.emplace_back(cl, j);
            }
            return out;
        };
        auto ru = reach(u), rv = reach(v);
        auto classes_only = [](const std::vector<std::pair<int, int>>& r) {
            std::vector<int> out;
            for (auto& [cl, _] : r) out.push_back(cl);
            std::sort(out.begin(), out.end());
            return out;
        };
        if (classes_only(ru) == classes_only(rv)) continue;
        // a class reachable from u but not from v (or the other way round)
        for (auto& [cl, rep] : ru) {
            bool in_v = false;
            for (auto& [cl2, _] : rv)
                if (cl2 == cl) { in_v = true; break; }
            if (!in_v) {
                std::vector<int> reps_v;
                for (auto& [_, r2] : rv) reps_v.push_back(r2);
                Formula chi = separate_from_all(c, level, rep, reps_v, dd - 1, group_count);
                return Formula::hat_knows(g, chi);
            }
        }
        for (auto& [cl, rep] : rv) {
            bool in_u = false;
            for (auto& [cl2, _] : ru)
                if (cl2 == cl) { in_u = true; break; }
            if (!in_u) {
                std::vector<int> reps_u;
                for (auto& [_, r2] : ru) reps_u.push_back(r2);
                Formula chi = separate_from_all(c, level, rep, reps_u, dd - 1, group_count);
                return Formula::neg(Formula::hat_knows(g, chi));
            }
        }
    }
    return Formula::truth();  // unreachable: some group must witness the split
}

}  // namespace

bool modal_equiv_upto(const GeneralizedEpistemicModel& m1, int w1,
                      const GeneralizedEpistemicModel& m2, int w2, int depth) {
    if (m1.frame.agents != m2.frame.agents)
        throw ValidationError("modal equivalence requires identical agent rosters");
    Combined c{&m1, &m2, m1.frame.world_count(), m2.frame.world_count()};
    auto level = refine_levels(c, depth, m1.frame.group_count());
    return level[static_cast<std::size_t>(depth)][static_cast<std::size_t>(w1)] ==
           level[static_cast<std::size_t>(depth)][static_cast<std::size_t>(c.na + w2)];
}

std::optional<Formula> distinguishing_formula(const GeneralizedEpistemicModel& m1, int w1,
                                              const GeneralizedEpistemicModel& m2, int w2,
                                              int depth) {
    if (m1.frame.agents != m2.frame.agents)
        throw ValidationError("modal equivalence requires identical agent rosters");
    Combined c{&m1, &m2, m1.frame.world_count(), m2.frame.world_count()};
    auto level = refine_levels(c, depth, m1.frame.group_count());
    int u = w1, v = c.na + w2;
    if (level[static_cast<std::size_t>(depth)][static_cast<std::size_t>(u)] ==
        level[static_cast<std::size_t>(depth)][static_cast<std::size_t>(v)])
        return std::nullopt;
    return separating_formula(c, level, u, v, depth, m1.frame.group_count());
}

GeneralizedEpistemicModel bisimulation_quotient(const GeneralizedEpistemicModel& m,
                                                std::vector<int>& class_of) {
    Combined c{&m, nullptr, m.frame.world_count(), 0};
    // refine to the fixpoint: n rounds always suffice
    auto level = refine_levels(c, m.frame.world_count() + 1, m.frame.group_count());
    class_of = level.back();

    int k = 0;
    for (int x : class_of) k = std::max(k, x + 1);
    // representative = least world index in the class
    std::vector<int> rep(static_cast<std::size_t>(k), -1);
    for (int w = 0; w < m.frame.world_count(); ++w) {
        int q = class_of[static_cast<std::size_t>(w)];
        if (rep[static_cast<std::size_t>(q)] < 0) rep[static_cast<std::size_t>(q)] = w;
    }

    std::vector<std::string> ids(static_cast<std::size_t>(k));
    for (int q = 0; q < k; ++q) {
        std::string least;
        for (int w = 0; w < m.frame.world_count(); ++w)
            if (class_of[static_cast<std::size_t>(w)] == q) {
                const std::string& nm = m.frame.worlds[static_cast<std::size_t>(w)];
                if (least.empty() || nm < least) least = nm;
            }
        ids[static_cast<std::size_t>(q)] = least;
    }

    auto out = GeneralizedEpistemicFrame::make(m.frame.agents, ids);
    for (int mask = 0; mask < m.frame.group_count(); ++mask) {
        std::vector<std::pair<int, int>> pairs;
        for (const auto& cl : m.frame.rel[static_cast<std::size_t>(mask)].classes()) {
            for (std::size_t i = 0; i + 1 < cl.size(); ++i)
                pairs.emplace_back(class_of[static_cast<std::size_t>(cl[i])],
                                   class_of[static_cast<std::size_t>(cl[i + 1])]);
            pairs.emplace_back(class_of[static_cast<std::size_t>(cl.front())],
                               class_of[static_cast<std::size_t>(cl.front())]);
        }
        out.rel[static_cast<std::size_t>(mask)] = Per::from_pairs(pairs, k);
    }

    GeneralizedEpistemicModel qm;
    qm.frame = std::move(out);
    qm.valuation.resize(static_cast<std::size_t>(k));
    for (int q = 0; q < k; ++q)
        qm.valuation[static_cast<std::size_t>(q)] =
            m.valuation[static_cast<std::size_t>(rep[static_cast<std::size_t>(q)])];
    return qm;
}

// --------------------------------------------------------------------------

std::string History::id(const GeneralizedEpistemicFrame& f) const {
    std::string out = f.worlds[static_cast<std::size_t>(root)];
    for (const auto& s : steps) {
        out += '|';
        out += group_label(s.group, f.agents);
        out += '|';
        out += f.worlds[static_cast<std::size_t>(s.world)];
    }
    return out;
}

Unraveling unravel(const GeneralizedEpistemicModel& m, int depth) {
    const int n = m.frame.world_count();

    // antichain of maximal relating groups per ordered world pair
    std::vector<std::vector<std::vector<AgentSet>>> maxg(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        maxg[static_cast<std::size_t>(u)].resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            maxg[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                maximal_groups(m.frame, u, v);
    }

    std::vector<History> hs;
    struct Edge {
        int parent, child;
        AgentSet group;
    };
    std::vector<Edge> edges;

    for (int w = 0; w < n; ++w) hs.push_back(History{w, {}});
    std::size_t lo = 0;
    for (int len = 0; len < depth; ++len) {
        std::size_t hi = hs.size();
        for (std::size_t h = lo; h < hi; ++h) {
            int last = hs[h].last();
            for (int w2 = 0; w2 < n; ++w2)
                for (AgentSet g : maxg[static_cast<std::size_t>(last)][static_cast<std::size_t>(w2)]) {
                    History child = hs[h];
                    child.steps.push_back({g, w2});
                    edges.push_back({static_cast<int>(h), static_cast<int>(hs.size()), g});
                    hs.push_back(std::move(child));
                }
        }
        lo = hi;
    }

    const int H = static_cast<int>(hs.size());
    std::vector<std::string> ids(static_cast<std::size_t>(H));
    for (int h = 0; h < H; ++h) ids[static_cast<std::size_t>(h)] = hs[static_cast<std::size_t>(h)].id(m.frame);

    auto frame = GeneralizedEpistemicFrame::make(m.frame.agents, std::move(ids));
    for (int mask = 0; mask < m.frame.group_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        const Per& base = m.frame.per(g);
        std::vector<std::pair<int, int>> pairs;
        for (int h = 0; h < H; ++h)
            if (base.in_domain(hs[static_cast<std::size_t>(h)].last())) pairs.emplace_back(h, h);
        for (const Edge& e : edges)
            if (g.subset_of(e.group)) pairs.emplace_back(e.parent, e.child);
        frame.rel[static_cast<std::size_t>(mask)] = Per::from_pairs(pairs, H);
    }

    Unraveling out;
    out.model.frame = std::move(frame);
    out.model.valuation.resize(static_cast<std::size_t>(H));
    for (int h = 0; h < H; ++h)
        out.model.valuation[static_cast<std::size_t>(h)] =
            m.valuation[static_cast<std::size_t>(hs[static_cast<std::size_t>(h)].last())];
    out.histories = std::move(hs);
    return out;
}

}  // namespace episim
