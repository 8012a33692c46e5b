#ifndef EPISIM_AGENTS_HPP
#define EPISIM_AGENTS_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace episim {

/// Groups are bitmasks over the agent roster; at most kMaxAgents agents per
/// model so a frame can store one relation per subset.
inline constexpr int kMaxAgents = 12;

/// A set of agents, packed as a bitmask over roster indices.
struct AgentSet {
    std::uint32_t bits = 0;

    constexpr AgentSet() = default;
    constexpr explicit AgentSet(std::uint32_t b) : bits(b) {}

    static constexpr AgentSet single(int a) { return AgentSet(1u << a); }
    static constexpr AgentSet all(int n_agents) {
        return AgentSet(n_agents == 0 ? 0u : (1u << n_agents) - 1u);
    }

    constexpr bool empty() const { return bits == 0; }
    constexpr int size() const { return std::popcount(bits); }
    constexpr bool contains(int a) const { return (bits >> a) & 1u; }
    constexpr bool subset_of(AgentSet o) const { return (bits & ~o.bits) == 0; }
    constexpr bool proper_subset_of(AgentSet o) const { return subset_of(o) && bits != o.bits; }

    constexpr AgentSet operator|(AgentSet o) const { return AgentSet(bits | o.bits); }
    constexpr AgentSet operator&(AgentSet o) const { return AgentSet(bits & o.bits); }
    constexpr AgentSet with(int a) const { return AgentSet(bits | (1u << a)); }
    constexpr AgentSet without(int a) const { return AgentSet(bits & ~(1u << a)); }
    constexpr AgentSet complement(int n_agents) const {
        return AgentSet(~bits & all(n_agents).bits);
    }

    constexpr bool operator==(const AgentSet&) const = default;

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint32_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }
};

/// Display form "{a,b}" against a roster. The empty group prints "{}".
inline std::string group_label(AgentSet g, const std::vector<std::string>& roster) {
    std::string out = "{";
    bool first = true;
    for (int a : g.members()) {
        if (!first) out += ',';
        first = false;
        out += roster[static_cast<std::size_t>(a)];
    }
    out += '}';
    return out;
}

inline int roster_index(const std::vector<std::string>& roster, std::string_view name) {
    for (std::size_t i = 0; i < roster.size(); ++i)
        if (roster[i] == name) return static_cast<int>(i);
    return -1;
}

/// Atom and agent names share the identifier rule from the formula grammar.
/// `__t` (reserved for the true/false encodings) is the only name that may
/// start with an underscore.
bool valid_prop_id(std::string_view s);
bool valid_agent_name(std::string_view s);

}  // namespace episim

#endif
