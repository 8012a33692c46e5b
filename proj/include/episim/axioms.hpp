#ifndef EPISIM_AXIOMS_HPP
#define EPISIM_AXIOMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "episim/frame.hpp"

namespace episim {

enum class SchemeName { K, Four, B, Mono, Union, NE, P, Max, Min, Pure, T };

struct SchemeSig {
    int groups;  // group parameters
    int atoms;   // fresh atom parameters
};
SchemeSig scheme_sig(SchemeName s);
const char* scheme_name(SchemeName s);
std::optional<SchemeName> scheme_from_name(std::string_view s);

/// Closed formula for one instance of a scheme. Throws std::invalid_argument
/// on arity mismatch, Mono without U <= U', or Max with the empty group.
Formula instantiate(SchemeName s, const std::vector<AgentSet>& groups,
                    const std::vector<std::string>& atoms, int n_agents);

// --------------------------------------------------------------------------
// exhaustive frame-validity oracle

struct TrialValuation {
    std::vector<std::string> atoms;
    std::vector<std::uint32_t> truth;  // world bitmask per atom
};
struct Countermodel {
    TrialValuation val;
    int world;
};

/// A formula is frame-valid when no valuation of its atoms falsifies it at
/// any world. Exhaustive over all 2^(|atoms| * |worlds|) valuations;
/// instances beyond 3 atoms or 12 worlds raise BudgetError instead of being
/// sampled. The true/false encodings are constant-folded first, so the
/// alive/dead schemes need no atom enumeration.
std::optional<Countermodel> frame_valid(const GeneralizedEpistemicFrame& f, const Formula& phi);

// --------------------------------------------------------------------------

struct SchemeInstance {
    SchemeName scheme;
    std::vector<AgentSet> groups;
    std::vector<std::string> atoms;
};
struct InstanceResult {
    SchemeInstance inst;
    bool valid = true;
    std::optional<Countermodel> counter;
};
std::string describe(const InstanceResult& r, const GeneralizedEpistemicFrame& f);

struct LogicVariant {
    std::string name;
    std::vector<SchemeName> axioms;          // beyond the propositional base
    std::vector<ModelProperty> properties;   // the matching model class
};

/// EC_n plus the property<->axiom rows and the three theorem bundles.
const std::vector<LogicVariant>& variant_registry();
std::optional<LogicVariant> variant_by_name(std::string_view name);

/// Every instantiation of every scheme in the variant (all group parameters,
/// two fresh atoms at most), in deterministic order.
std::vector<InstanceResult> check_soundness(const GeneralizedEpistemicFrame& f,
                                            const LogicVariant& variant);

/// Derived theorem families: dead agents know everything; alive groups know
/// they are alive; T restricted to alive groups.
struct DerivedResult {
    std::string family;
    std::vector<AgentSet> groups;
    bool valid = true;
    std::optional<Countermodel> counter;
};
std::vector<DerivedResult> derived_theorems_check(const GeneralizedEpistemicFrame& f);
std::string describe(const DerivedResult& r, const GeneralizedEpistemicFrame& f);

/// Property profile of a model plus the axiom set suggested by the registry;
/// Pure subsumes NE and Min (reported in `implied`); the two inexpressible
/// properties are listed separately.
struct Classification {
    std::vector<ModelProperty> properties;
    std::vector<SchemeName> axioms;
    std::vector<SchemeName> implied;
    std::vector<ModelProperty> no_axiom;
};
Classification classify_model(const GeneralizedEpistemicFrame& f);

}  // namespace episim

#endif
