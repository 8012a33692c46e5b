#ifndef EPISIM_FRAME_HPP
#define EPISIM_FRAME_HPP

#include <optional>
#include <string>
#include <vector>

#include "episim/agents.hpp"
#include "episim/formula.hpp"
#include "episim/per.hpp"

namespace episim {

/// Kripke-style frame with one PER per group of agents, subject to
/// compatibility (subgroups relate at least as much) and closure under
/// union of alive groups. Immutable after validation; all checks below are
/// read-only.
struct GeneralizedEpistemicFrame {
    std::vector<std::string> agents;
    std::vector<std::string> worlds;    // stable ids
    std::vector<Per> rel;               // indexed by group bitmask, size 1 << agents.size()

    int agent_count() const { return static_cast<int>(agents.size()); }
    int world_count() const { return static_cast<int>(worlds.size()); }
    int group_count() const { return 1 << agent_count(); }
    AgentSet all_agents() const { return AgentSet::all(agent_count()); }

    const Per& per(AgentSet g) const { return rel[g.bits]; }
    Per& per(AgentSet g) { return rel[g.bits]; }

    int world_index(std::string_view id) const;      // -1 if unknown
    int world_index_checked(std::string_view id) const;  // throws UnknownWorldError

    /// World indices in lexicographic id order; defect and property witnesses
    /// are reported least-first in this order.
    std::vector<int> worlds_by_id() const;

    static GeneralizedEpistemicFrame make(std::vector<std::string> agents,
                                          std::vector<std::string> worlds);

    bool operator==(const GeneralizedEpistemicFrame&) const = default;
};

struct GeneralizedEpistemicModel {
    GeneralizedEpistemicFrame frame;
    std::vector<std::vector<std::string>> valuation;  // per world, sorted prop ids

    bool has_prop(int w, std::string_view p) const;
    bool operator==(const GeneralizedEpistemicModel&) const = default;
};

// --------------------------------------------------------------------------
// validation

struct FrameDefect {
    enum class Kind {
        Asymmetric,              // pair listed without its mirror (raw input only)
        Intransitive,            // (x,y),(y,z) without (x,z)   (raw input only)
        Compatibility,           // w ~_U w' but not w ~_{U'} w' for U' subset U
        UnionClosure,            // w ~_U w, w ~_{U'} w, not w ~_{U u U'} w
        EmptyGroupReflexivity,   // nullary union closure: w is in no relation at all
    };
    Kind kind;
    AgentSet g1{}, g2{};
    int w1 = -1, w2 = -1, w3 = -1;
};

std::string describe(const FrameDefect& d, const GeneralizedEpistemicFrame& f);

/// Checks compatibility (a), union closure (b) and its nullary instance
/// (every world must carry w ~_empty w). PER laws hold by construction in
/// `Per`; the raw-pair checks live in the loaders via relation_defects.
std::vector<FrameDefect> validate_frame(const GeneralizedEpistemicFrame& f);

// --------------------------------------------------------------------------
// basic queries

/// Maximal group U with w ~_U w; equals the set of alive singletons on a
/// valid frame. Empty for fully isolated worlds.
AgentSet alive_set(const GeneralizedEpistemicFrame& f, int w);

/// w <= w2 : live(w) included in live(w2) and w ~_{live(w)} w2.
bool is_subworld(const GeneralizedEpistemicFrame& f, int w, int w2);

bool satisfies(const GeneralizedEpistemicModel& m, int w, const Formula& phi);

/// One record per D-node evaluation, in evaluation order (no short-circuit).
struct EvalStep {
    std::string formula;
    std::string world;
    std::vector<std::string> accessible;
    bool verdict;
};
bool satisfies_explain(const GeneralizedEpistemicModel& m, int w, const Formula& phi,
                       std::vector<EvalStep>& steps);

/// Equivalence classes of ~_U, sorted internally and ordered by least member
/// index; worlds outside the domain are absent.
std::vector<std::vector<int>> quotient_classes(const GeneralizedEpistemicFrame& f, AgentSet g);

/// Antichain of inclusion-maximal groups relating u and v (empty when no
/// group relates them). Sorted by bitmask.
std::vector<AgentSet> maximal_groups(const GeneralizedEpistemicFrame& f, int u, int v);

// --------------------------------------------------------------------------
// the seven properties

enum class ModelProperty {
    TrivialEmptyGroup,
    NoEmptyWorlds,
    Proper,
    Maximal,
    Minimal,
    Pure,
    StandardGroupKnowledge,
};

inline constexpr ModelProperty kAllProperties[] = {
    ModelProperty::TrivialEmptyGroup, ModelProperty::NoEmptyWorlds,  ModelProperty::Proper,
    ModelProperty::Maximal,           ModelProperty::Minimal,        ModelProperty::Pure,
    ModelProperty::StandardGroupKnowledge,
};

const char* property_name(ModelProperty p);
std::optional<ModelProperty> property_from_name(std::string_view s);

struct PropertyVerdict {
    ModelProperty prop{};
    bool holds = true;
    // failure witness; which fields are set depends on the property
    int w1 = -1, w2 = -1;
    AgentSet group{};
    bool has_group = false;
};

PropertyVerdict check_property(const GeneralizedEpistemicFrame& f, ModelProperty p);
std::string describe(const PropertyVerdict& v, const GeneralizedEpistemicFrame& f);

// --------------------------------------------------------------------------
// morphisms and bisimulations

struct CheckResult {
    bool ok = true;
    std::string clause;  // "totality" | "relation" | "valuation" | "atoms" | "forth" | "back"
    int u = -1, v = -1;  // meaning depends on the clause
    AgentSet group{};
    std::string detail;
};

/// Frame-model morphism: relations preserved forward, valuations grow.
CheckResult check_morphism(const GeneralizedEpistemicModel& src,
                           const GeneralizedEpistemicModel& dst, const std::vector<int>& map);

/// Functional bisimulation: atoms preserved exactly, forth, back. When
/// `back_at` is given, the back clause is only required at flagged source
/// worlds (used for truncated unravelings).
CheckResult check_functional_bisimulation(const GeneralizedEpistemicModel& src,
                                          const GeneralizedEpistemicModel& dst,
                                          const std::vector<int>& map,
                                          const std::vector<char>* back_at = nullptr);

// --------------------------------------------------------------------------
// depth-bounded modal equivalence (back-and-forth game, not enumeration)

bool modal_equiv_upto(const GeneralizedEpistemicModel& m1, int w1,
                      const GeneralizedEpistemicModel& m2, int w2, int depth);

/// A formula of modal depth <= depth separating the two pointed models, when
/// one exists at that depth.
std::optional<Formula> distinguishing_formula(const GeneralizedEpistemicModel& m1, int w1,
                                              const GeneralizedEpistemicModel& m2, int w2,
                                              int depth);

/// Quotient by full modal equivalence; the projection map (written to
/// `class_of`) is a functional bisimulation.
GeneralizedEpistemicModel bisimulation_quotient(const GeneralizedEpistemicModel& m,
                                                std::vector<int>& class_of);

// --------------------------------------------------------------------------
// unraveling

/// History h = (w0, U1, w1, ..., Uk, wk): consecutive worlds related, each
/// U_i inclusion-maximal for its pair.
struct History {
    int root;
    struct Step {
        AgentSet group;
        int world;
    };
    std::vector<Step> steps;

    int last() const { return steps.empty() ? root : steps.back().world; }
    int length() const { return static_cast<int>(steps.size()); }
    std::string id(const GeneralizedEpistemicFrame& f) const;
};

struct Unraveling {
    GeneralizedEpistemicModel model;
    std::vector<History> histories;  // parallel to model.frame.worlds
};

/// Histories of length <= depth rooted at every world; h ->_U h' iff
/// h' = (h,U',w) with U included in U'; ~^u_U is the symmetric-transitive
/// closure of ->_U plus the reflexive pairs {(h,h) | last(h) ~_U last(h)}.
Unraveling unravel(const GeneralizedEpistemicModel& m, int depth);

}  // namespace episim

#endif
