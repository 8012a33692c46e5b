#include "episim/axioms.hpp"

#include <algorithm>
#include <stdexcept>

#include "episim/errors.hpp"

namespace episim {

SchemeSig scheme_sig(SchemeName s) {
    switch (s) {
        case SchemeName::K: return {1, 2};
        case SchemeName::Four: return {1, 1};
        case SchemeName::B: return {1, 1};
        case SchemeName::Mono: return {2, 1};
        case SchemeName::Union: return {2, 0};
        case SchemeName::NE: return {0, 0};
        case SchemeName::P: return {1, 1};
        case SchemeName::Max: return {1, 0};
        case SchemeName::Min: return {1, 0};
        case SchemeName::Pure: return {0, 0};
        case SchemeName::T: return {1, 1};
    }
    return {0, 0};
}

const char* scheme_name(SchemeName s) {
    switch (s) {
        case SchemeName::K: return "K";
        case SchemeName::Four: return "4";
        case SchemeName::B: return "B";
        case SchemeName::Mono: return "Mono";
        case SchemeName::Union: return "Union";
        case SchemeName::NE: return "NE";
        case SchemeName::P: return "P";
        case SchemeName::Max: return "Max";
        case SchemeName::Min: return "Min";
        case SchemeName::Pure: return "Pure";
        case SchemeName::T: return "T";
    }
    return "";
}

std::optional<SchemeName> scheme_from_name(std::string_view s) {
    static constexpr SchemeName all[] = {SchemeName::K,     SchemeName::Four, SchemeName::B,
                                         SchemeName::Mono,  SchemeName::Union, SchemeName::NE,
                                         SchemeName::P,     SchemeName::Max,  SchemeName::Min,
                                         SchemeName::Pure,  SchemeName::T};
    for (SchemeName n : all)
        if (s == scheme_name(n)) return n;
    if (s == "Four") return SchemeName::Four;
    return std::nullopt;
}

Formula instantiate(SchemeName s, const std::vector<AgentSet>& groups,
                    const std::vector<std::string>& atoms, int n_agents) {
    SchemeSig sig = scheme_sig(s);
    if (static_cast<int>(groups.size()) != sig.groups ||
        static_cast<int>(atoms.size()) != sig.atoms)
        throw std::invalid_argument(std::string("scheme ") + scheme_name(s) + " takes " +
                                    std::to_string(sig.groups) + " group(s) and " +
                                    std::to_string(sig.atoms) + " atom(s)");
    auto A = [&](int i) { return Formula::atom(atoms[static_cast<std::size_t>(i)]); };
    AgentSet roster = AgentSet::all(n_agents);
    switch (s) {
        case SchemeName::K: {
            AgentSet u = groups[0];
            return Formula::implies(
                Formula::knows(u, Formula::implies(A(0), A(1))),
                Formula::implies(Formula::knows(u, A(0)), Formula::knows(u, A(1))));
        }
        case SchemeName::Four: {
            AgentSet u = groups[0];
            return Formula::implies(Formula::knows(u, A(0)),
                                    Formula::knows(u, Formula::knows(u, A(0))));
        }
        case SchemeName::B: {
            AgentSet u = groups[0];
            return Formula::implies(
                A(0), Formula::knows(u, Formula::neg(Formula::knows(u, Formula::neg(A(0))))));
        }
        case SchemeName::Mono: {
            if (!groups[0].subset_of(groups[1]))
                throw std::invalid_argument("Mono requires U <= U'");
            return Formula::implies(Formula::knows(groups[0], A(0)),
                                    Formula::knows(groups[1], A(0)));
        }
        case SchemeName::Union:
            return Formula::implies(
                Formula::conj(Formula::alive(groups[0]), Formula::alive(groups[1])),
                Formula::alive(groups[0] | groups[1]));
        case SchemeName::NE: {
            Formula acc;
            for (int a = 0; a < n_agents; ++a) {
                Formula al = Formula::alive(AgentSet::single(a));
                acc = acc.valid() ? Formula::disj(acc, al) : al;
            }
            return acc.valid() ? acc : Formula::falsity();
        }
        case SchemeName::P: {
            AgentSet u = groups[0];
            Formula deadc = Formula::dead_group(u.complement(n_agents));
            return Formula::implies(
                Formula::conj(Formula::conj(Formula::alive(u), deadc), A(0)),
                Formula::knows(u, Formula::implies(deadc, A(0))));
        }
        case SchemeName::Max: {
            AgentSet u = groups[0];
            if (u.empty()) throw std::invalid_argument("Max requires a nonempty group");
            Formula deadc = Formula::dead_group(u.complement(n_agents));
            return Formula::implies(
                Formula::alive(u),
                Formula::neg(Formula::knows(u, Formula::neg(deadc))));
        }
        case SchemeName::Min: {
            AgentSet u = groups[0];
            Formula deadc = Formula::dead_group(u.complement(n_agents));
            return Formula::implies(Formula::conj(Formula::alive(u), deadc),
                                    Formula::knows(u, deadc));
        }
        case SchemeName::Pure:
            return Formula::alive(roster);
        case SchemeName::T:
            return Formula::implies(Formula::knows(groups[0], A(0)), A(0));
    }
    throw std::invalid_argument("unknown scheme");
}

// --------------------------------------------------------------------------
// bitmask evaluation engine

namespace {

struct EvalNode {
    enum class Kind { True, False, Atom, Neg, And, D } kind;
    int atom = -1;
    AgentSet group{};
    int a = -1, b = -1;  // children
};

struct Compiled {
    std::vector<EvalNode> nodes;  // root is nodes.back()
    std::vector<std::string> atoms;

    int atom_index(const std::string& name) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] == name) return static_cast<int>(i);
        atoms.push_back(name);
        return static_cast<int>(atoms.size()) - 1;
    }
};

int compile_rec(const Formula& f, Compiled& c) {
    // fold the canonical true/false encodings so the life/death schemes need
    // no atom enumeration
    static const Formula t = Formula::truth();
    static const Formula ff = Formula::falsity();
    if (f == t) {
        c.nodes.push_back({EvalNode::Kind::True});
        return static_cast<int>(c.nodes.size()) - 1;
    }
    if (f == ff) {
        c.nodes.push_back({EvalNode::Kind::False});
        return static_cast<int>(c.nodes.size()) - 1;
    }
    EvalNode n{EvalNode::Kind::True};
    switch (f.kind()) {
        case Formula::Kind::Atom:
            n.kind = EvalNode::Kind::Atom;
            n.atom = c.atom_index(f.atom_name());
            break;
        case Formula::Kind::Neg:
            n.kind = EvalNode::Kind::Neg;
            n.a = compile_rec(f.child(), c);
            break;
        case Formula::Kind::And:
            n.kind = EvalNode::Kind::And;
            n.a = compile_rec(f.left(), c);
            n.b = compile_rec(f.right(), c);
            break;
        case Formula::Kind::D:
            n.kind = EvalNode::Kind::D;
            n.group = f.group();
            n.a = compile_rec(f.child(), c);
            break;
    }
    c.nodes.push_back(n);
    return static_cast<int>(c.nodes.size()) - 1;
}

struct GroupMasks {
    std::vector<std::uint32_t> classes;
    std::uint32_t vacuous = 0;  // worlds outside the domain satisfy D vacuously
};

}  // namespace

std::optional<Countermodel> frame_valid(const GeneralizedEpistemicFrame& f, const Formula& phi) {
    const int n = f.world_count();
    Compiled c;
    int root = compile_rec(phi, c);
    const int k = static_cast<int>(c.atoms.size());
    if (k > 3) throw BudgetError("frame-validity oracle supports at most 3 atoms, got " +
                                 std::to_string(k));
    if (n > 12) throw BudgetError("frame-validity oracle supports at most 12 worlds, got " +
                                  std::to_string(n));

    const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1u);
    std::vector<GroupMasks> gm(static_cast<std::size_t>(f.group_count()));
    for (int mask = 0; mask < f.group_count(); ++mask) {
        const Per& p = f.rel[static_cast<std::size_t>(mask)];
        auto& g = gm[static_cast<std::size_t>(mask)];
        g.classes.assign(static_cast<std::size_t>(p.class_count), 0);
        for (int w = 0; w < n; ++w) {
            int cl = p.class_of(w);
            if (cl < 0)
                g.vacuous |= 1u << w;
            else
                g.classes[static_cast<std::size_t>(cl)] |= 1u << w;
        }
    }

    const auto order = f.worlds_by_id();
    std::vector<std::uint32_t> truth(static_cast<std::size_t>(k), 0);
    std::vector<std::uint32_t> value(c.nodes.size(), 0);

    const std::uint64_t total = k == 0 ? 1 : (1ull << (k * n));
    for (std::uint64_t v = 0; v < total; ++v) {
        for (int i = 0; i < k; ++i)
            truth[static_cast<std::size_t>(i)] =
                static_cast<std::uint32_t>((v >> (i * n)) & full);
        for (std::size_t i = 0; i < c.nodes.size(); ++i) {
            const EvalNode& nd = c.nodes[i];
            switch (nd.kind) {
                case EvalNode::Kind::True: value[i] = full; break;
                case EvalNode::Kind::False: value[i] = 0; break;
                case EvalNode::Kind::Atom: value[i] = truth[static_cast<std::size_t>(nd.atom)]; break;
                case EvalNode::Kind::Neg:
                    value[i] = full & ~value[static_cast<std::size_t>(nd.a)];
                    break;
                case EvalNode::Kind::And:
                    value[i] = value[static_cast<std::size_t>(nd.a)] &
                               value[static_cast<std::size_t>(nd.b)];
                    break;
                case EvalNode::Kind::D: {
                    const GroupMasks& g = gm[nd.group.bits];
                    std::uint32_t arg = value[static_cast<std::size_t>(nd.a)];
                    std::uint32_t res = g.vacuous;
                    for (std::uint32_t cm : g.classes)
                        if ((cm & ~arg) == 0) res |= cm;
                    value[i] = res;
                    break;
                }
            }
        }
        std::uint32_t sat = value[static_cast<std::size_t>(root)];
        if (sat != full) {
            Countermodel cm;
            cm.val.atoms = c.atoms;
            cm.val.truth = truth;
            cm.world = 0;
            for (int w : order)
                if (!((sat >> w) & 1u)) { cm.world = w; break; }
            return cm;
        }
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------

static std::string describe_counter(const Countermodel& cm, const GeneralizedEpistemicFrame& f) {
    std::string out = "world=" + f.worlds[static_cast<std::size_t>(cm.world)];
    for (std::size_t i = 0; i < cm.val.atoms.size(); ++i) {
        out += " val[" + cm.val.atoms[i] + "]={";
        bool first = true;
        for (int w : f.worlds_by_id())
            if ((cm.val.truth[i] >> w) & 1u) {
                if (!first) out += ',';
                first = false;
                out += f.worlds[static_cast<std::size_t>(w)];
            }
        out += '}';
    }
    return out;
}

std::string describe(const InstanceResult& r, const GeneralizedEpistemicFrame& f) {
    std::string out = scheme_name(r.inst.scheme);
    const char* names[] = {"U", "U'"};
    for (std::size_t i = 0; i < r.inst.groups.size(); ++i)
        out += std::string(" ") + names[i] + "=" + group_label(r.inst.groups[i], f.agents);
    out += r.valid ? " PASS" : " FAIL";
    if (!r.valid && r.counter) out += " " + describe_counter(*r.counter, f);
    return out;
}

std::string describe(const DerivedResult& r, const GeneralizedEpistemicFrame& f) {
    std::string out = r.family;
    const char* names[] = {"a", "U"};
    for (std::size_t i = 0; i < r.groups.size(); ++i)
        out += std::string(" ") + names[r.groups.size() == 1 ? 1 : i] + "=" +
               group_label(r.groups[i], f.agents);
    out += r.valid ? " PASS" : " FAIL";
    if (!r.valid && r.counter) out += " " + describe_counter(*r.counter, f);
    return out;
}

const std::vector<LogicVariant>& variant_registry() {
    static const std::vector<LogicVariant> reg = [] {
        using S = SchemeName;
        using P = ModelProperty;
        std::vector<LogicVariant> v;
        std::vector<S> base = {S::K, S::Four, S::B, S::Mono, S::Union};
        auto plus = [&](std::vector<S> extra) {
            std::vector<S> out = base;
            out.insert(out.end(), extra.begin(), extra.end());
            return out;
        };
        v.push_back({"ECn", base, {}});
        v.push_back({"ECn+NE", plus({S::NE}), {P::NoEmptyWorlds}});
        v.push_back({"ECn+P", plus({S::P}), {P::Proper}});
        v.push_back({"ECn+Max", plus({S::Max}), {P::Maximal}});
        v.push_back({"ECn+Min", plus({S::Min}), {P::Minimal}});
        v.push_back({"ECn+Pure", plus({S::Pure}), {P::Pure}});
        v.push_back({"ECn+NE+P+Max", plus({S::NE, S::P, S::Max}),
                     {P::NoEmptyWorlds, P::Proper, P::Maximal}});
        v.push_back({"ECn+NE+P+Min", plus({S::NE, S::P, S::Min}),
                     {P::NoEmptyWorlds, P::Proper, P::Minimal}});
        v.push_back({"ECn+NE+P+Pure", plus({S::NE, S::P, S::Pure}),
                     {P::NoEmptyWorlds, P::Proper, P::Pure}});
        return v;
    }();
    return reg;
}

std::optional<LogicVariant> variant_by_name(std::string_view name) {
    for (const auto& v : variant_registry())
        if (v.name == name) return v;
    return std::nullopt;
}

std::vector<InstanceResult> check_soundness(const GeneralizedEpistemicFrame& f,
                                            const LogicVariant& variant) {
    std::vector<InstanceResult> out;
    const int gc = f.group_count();
    auto run = [&](SchemeName s, std::vector<AgentSet> groups, std::vector<std::string> atoms) {
        InstanceResult r;
        r.inst = {s, groups, atoms};
        Formula phi = instantiate(s, groups, atoms, f.agent_count());
        r.counter = frame_valid(f, phi);
        r.valid = !r.counter.has_value();
        out.push_back(std::move(r));
    };
    for (SchemeName s : variant.axioms) {
        SchemeSig sig = scheme_sig(s);
        std::vector<std::string> atoms;
        if (sig.atoms >= 1) atoms.push_back("p");
        if (sig.atoms >= 2) atoms.push_back("q");
        if (sig.groups == 0) {
            run(s, {}, atoms);
        } else if (sig.groups == 1) {
            for (int m = 0; m < gc; ++m) {
                if (s == SchemeName::Max && m == 0) continue;  // Max is stated for nonempty U
                run(s, {AgentSet(static_cast<std::uint32_t>(m))}, atoms);
            }
        } else {
            for (int m1 = 0; m1 < gc; ++m1)
                for (int m2 = 0; m2 < gc; ++m2) {
                    AgentSet u(static_cast<std::uint32_t>(m1)), v(static_cast<std::uint32_t>(m2));
                    if (s == SchemeName::Mono && !u.subset_of(v)) continue;
                    run(s, {u, v}, atoms);
                }
        }
    }
    return out;
}

std::vector<DerivedResult> derived_theorems_check(const GeneralizedEpistemicFrame& f) {
    std::vector<DerivedResult> out;
    const int gc = f.group_count();
    auto run = [&](std::string family, std::vector<AgentSet> groups, Formula phi) {
        DerivedResult r;
        r.family = std::move(family);
        r.groups = std::move(groups);
        r.counter = frame_valid(f, phi);
        r.valid = !r.counter.has_value();
        out.push_back(std::move(r));
    };
    // dead agents know everything: for a in U, dead_a -> D_U p
    for (int a = 0; a < f.agent_count(); ++a)
        for (int m = 0; m < gc; ++m) {
            AgentSet u(static_cast<std::uint32_t>(m));
            if (!u.contains(a)) continue;
            run("DeadKnowsAll", {AgentSet::single(a), u},
                Formula::implies(Formula::dead_agent(a), Formula::knows(u, Formula::atom("p"))));
        }
    // alive groups know that they are alive
    for (int m = 0; m < gc; ++m) {
        AgentSet u(static_cast<std::uint32_t>(m));
        run("AliveSelfAware", {u},
            Formula::implies(Formula::alive(u), Formula::knows(u, Formula::alive(u))));
    }
    // T restricted to alive groups
    for (int m = 0; m < gc; ++m) {
        AgentSet u(static_cast<std::uint32_t>(m));
        Formula p = Formula::atom("p");
        run("RestrictedT", {u},
            Formula::implies(Formula::alive(u),
                             Formula::implies(Formula::knows(u, p), p)));
    }
    return out;
}

Classification classify_model(const GeneralizedEpistemicFrame& f) {
    Classification c;
    for (ModelProperty p : kAllProperties)
        if (check_property(f, p).holds) c.properties.push_back(p);
    auto has = [&](ModelProperty p) {
        return std::find(c.properties.begin(), c.properties.end(), p) != c.properties.end();
    };
    bool pure = has(ModelProperty::Pure);
    if (has(ModelProperty::Proper)) c.axioms.push_back(SchemeName::P);
    if (has(ModelProperty::Maximal)) c.axioms.push_back(SchemeName::Max);
    if (has(ModelProperty::Minimal)) {
        if (pure)
            c.implied.push_back(SchemeName::Min);
        else
            c.axioms.push_back(SchemeName::Min);
    }
    if (pure) c.axioms.push_back(SchemeName::Pure);
    if (has(ModelProperty::NoEmptyWorlds)) {
        if (pure)
            c.implied.push_back(SchemeName::NE);
        else
            c.axioms.push_back(SchemeName::NE);
    }
    if (has(ModelProperty::TrivialEmptyGroup)) c.no_axiom.push_back(ModelProperty::TrivialEmptyGroup);
    if (has(ModelProperty::StandardGroupKnowledge))
        c.no_axiom.push_back(ModelProperty::StandardGroupKnowledge);
    return c;
}

}  // namespace episim
