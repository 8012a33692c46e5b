#include "episim/cset.hpp"

#include <algorithm>
#include <map>

namespace episim {

int Cset::total_size() const {
    int k = 0;
    for (const auto& lvl : ids) k += static_cast<int>(lvl.size());
    return k;
}

Cset Cset::make(std::vector<std::string> agents) {
    Cset x;
    x.agents = std::move(agents);
    x.ids.resize(static_cast<std::size_t>(x.level_count()));
    x.face.resize(static_cast<std::size_t>(x.level_count()));
    for (int mask = 0; mask < x.level_count(); ++mask)
        x.face[static_cast<std::size_t>(mask)].resize(x.agents.size());
    return x;
}

int Cset::find(AgentSet g, std::string_view id) const {
    const auto& lvl = ids[g.bits];
    for (std::size_t i = 0; i < lvl.size(); ++i)
        if (lvl[i] == id) return static_cast<int>(i);
    return -1;
}

int Cset::face_to(AgentSet g, int idx, AgentSet sub) const {
    AgentSet cur = g;
    for (int a : AgentSet(g.bits & ~sub.bits).members()) {
        idx = face1(cur, a, idx);
        cur = cur.without(a);
    }
    return idx;
}

std::vector<std::vector<char>> Cset::maximal_flags() const {
    std::vector<std::vector<char>> maximal(static_cast<std::size_t>(level_count()));
    for (int mask = 0; mask < level_count(); ++mask)
        maximal[static_cast<std::size_t>(mask)].assign(ids[static_cast<std::size_t>(mask)].size(), 1);
    for (int mask = 1; mask < level_count(); ++mask)
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members()) {
            int sub = mask & ~(1 << a);
            for (int f : face[static_cast<std::size_t>(mask)][static_cast<std::size_t>(a)])
                maximal[static_cast<std::size_t>(sub)][static_cast<std::size_t>(f)] = 0;
        }
    return maximal;
}

std::string describe(const CsetDefect& d, const Cset& x) {
    return "faces for " + x.agents[static_cast<std::size_t>(d.a)] + " and " +
           x.agents[static_cast<std::size_t>(d.b)] + " do not commute on " +
           group_label(d.group, x.agents) + "-simplex " +
           x.ids[d.group.bits][static_cast<std::size_t>(d.simplex)];
}

std::vector<CsetDefect> validate_cset(const Cset& x) {
    std::vector<CsetDefect> out;
    for (int mask = 0; mask < x.level_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        if (g.size() < 2) continue;
        auto agents = g.members();
        for (std::size_t i = 0; i < agents.size(); ++i)
            for (std::size_t j = i + 1; j < agents.size(); ++j) {
                int a = agents[i], b = agents[j];
                for (int s = 0; s < x.size(g); ++s) {
                    int ab = x.face1(g.without(b), a, x.face1(g, b, s));
                    int ba = x.face1(g.without(a), b, x.face1(g, a, s));
                    if (ab != ba) out.push_back({g, a, b, s});
                }
            }
    }
    return out;
}

ComplexVerdict is_simplicial_complex(const Cset& x) {
    ComplexVerdict v;
    for (int mask = 1; mask < x.level_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        if (g.size() < 2) continue;  // vertices and (-1)-simplices cannot clash
        std::map<std::vector<int>, int> seen;  // vertex tuple -> simplex
        for (int s = 0; s < x.size(g); ++s) {
            std::vector<int> verts;
            for (int a : g.members()) verts.push_back(x.face_to(g, s, AgentSet::single(a)));
            auto [it, fresh] = seen.try_emplace(verts, s);
            if (!fresh) {
                v.holds = false;
                v.group = g;
                v.s1 = it->second;
                v.s2 = s;
                return v;
            }
        }
    }
    return v;
}

}  // namespace episim
