#ifndef EPISIM_FORMULA_HPP
#define EPISIM_FORMULA_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "episim/agents.hpp"
#include "episim/errors.hpp"

namespace episim {

/// Formula of the distributed-knowledge language: atoms, negation,
/// conjunction and the group knowledge operator D_U. Everything else
/// (or, ->, true, false, K_a, hatD_U, alive_U, dead_U) is definitional and
/// expanded at construction time. Immutable; subtrees are shared.
class Formula {
public:
    enum class Kind { Atom, Neg, And, D };

    struct Node {
        Kind kind;
        std::string atom;          // Kind::Atom
        AgentSet group;            // Kind::D
        std::shared_ptr<const Node> a, b;  // Neg/D use a; And uses a,b
    };

    Formula() = default;  // empty handle; only produced by default construction

    Kind kind() const { return node_->kind; }
    const std::string& atom_name() const { return node_->atom; }
    AgentSet group() const { return node_->group; }
    Formula child() const { return Formula(node_->a); }
    Formula left() const { return Formula(node_->a); }
    Formula right() const { return Formula(node_->b); }
    bool valid() const { return node_ != nullptr; }

    bool operator==(const Formula& o) const { return equal(node_.get(), o.node_.get()); }

    // primitive constructors
    static Formula atom(std::string name);
    static Formula neg(Formula f);
    static Formula conj(Formula l, Formula r);
    static Formula knows(AgentSet g, Formula f);  // D_U f

    // derived forms, expanded structurally
    static Formula disj(Formula l, Formula r);          // !(!l & !r)
    static Formula implies(Formula l, Formula r);       // !(l & !r)
    static Formula truth();                             // __t | !__t
    static Formula falsity();                           // __t & !__t
    static Formula hat_knows(AgentSet g, Formula f);    // !D_U !f
    static Formula alive(AgentSet g);                   // hatD_U true
    static Formula dead_agent(int a);                   // D_{a} false
    static Formula dead_group(AgentSet g);              // /\_{a in U} dead_a

    /// Name of the atom reserved for the true/false encodings.
    static const std::string& reserved_atom();

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static bool equal(const Node* x, const Node* y);
    std::shared_ptr<const Node> node_;
};

/// Nesting depth of D operators. Atoms are 0.
int modal_depth(const Formula& f);

/// Atom names occurring in f, sorted and de-duplicated.
std::vector<std::string> formula_atoms(const Formula& f);

/// Parse the concrete syntax against an agent roster. Throws ParseError with
/// a byte offset on bad syntax, unknown tokens or unknown agent names.
Formula parse_formula(std::string_view text, const std::vector<std::string>& roster);

/// Print in re-parseable concrete syntax; derived forms appear expanded.
/// parse_formula(print_formula(f, r), r) == f.
std::string print_formula(const Formula& f, const std::vector<std::string>& roster);

}  // namespace episim

#endif
