#ifndef EPISIM_CSET_HPP
#define EPISIM_CSET_HPP

#include <string>
#include <vector>

#include "episim/agents.hpp"

namespace episim {

/// Chromatic augmented semi-simplicial set: one simplex list per group of
/// agents (the empty group holds the (-1)-simplices) and, for every agent of
/// a group, a total codimension-1 face map removing that agent. Valid when
/// all face maps commute pairwise; general faces are derived by composition.
struct Cset {
    std::vector<std::string> agents;
    std::vector<std::vector<std::string>> ids;         // [group mask] -> simplex ids
    std::vector<std::vector<std::vector<int>>> face;   // [mask][agent] -> table into mask&~agent

    int agent_count() const { return static_cast<int>(agents.size()); }
    int level_count() const { return 1 << agent_count(); }
    int size(AgentSet g) const { return static_cast<int>(ids[g.bits].size()); }
    int total_size() const;

    static Cset make(std::vector<std::string> agents);

    int find(AgentSet g, std::string_view id) const;  // -1 if absent

    /// Codimension-1 face: remove agent a (a must be in g).
    int face1(AgentSet g, int a, int idx) const { return face[g.bits][static_cast<std::size_t>(a)][static_cast<std::size_t>(idx)]; }

    /// Derived face keeping exactly `sub` (sub must be a subset of g);
    /// composes codim-1 removals, order-independent on valid csets.
    int face_to(AgentSet g, int idx, AgentSet sub) const;

    /// maximal[mask][idx] = simplex is not a face of any higher simplex
    std::vector<std::vector<char>> maximal_flags() const;

    bool operator==(const Cset&) const = default;
};

struct CsetDefect {
    AgentSet group{};  // level of the offending simplex
    int a = -1, b = -1;
    int simplex = -1;  // index at `group`
};
std::string describe(const CsetDefect& d, const Cset& x);

/// Every violated commutation square del_a del_b = del_b del_a, with the
/// simplex it fails on. Empty iff the cset is valid.
std::vector<CsetDefect> validate_cset(const Cset& x);

struct ComplexVerdict {
    bool holds = true;
    AgentSet group{};
    int s1 = -1, s2 = -1;  // two distinct simplices with the same vertex set
};

/// Simplicial-complex test: at every nonempty level, simplices with equal
/// vertex tuples coincide. The (-1) level is exempt.
ComplexVerdict is_simplicial_complex(const Cset& x);

}  // namespace episim

#endif
