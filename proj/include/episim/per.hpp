#ifndef EPISIM_PER_HPP
#define EPISIM_PER_HPP

#include <utility>
#include <vector>

namespace episim {

/// Partial equivalence relation on {0..carrier-1}: symmetric and transitive,
/// an equivalence relation on its domain. Stored as a partition of the
/// domain; elements outside the domain carry class -1. Class ids are
/// normalized by first occurrence, so two Pers are equal iff they relate the
/// same pairs.
struct Per {
    int carrier = 0;
    std::vector<int> cls;  // size carrier; -1 outside the domain
    int class_count = 0;

    static Per empty(int n) {
        Per p;
        p.carrier = n;
        p.cls.assign(static_cast<std::size_t>(n), -1);
        return p;
    }

    /// Smallest PER containing the given pairs: symmetric-transitive closure,
    /// which forces reflexive pairs on every touched element.
    static Per from_pairs(const std::vector<std::pair<int, int>>& pairs, int n);

    /// Normalize raw class assignments (-1 = outside domain).
    static Per from_class_ids(std::vector<int> raw);

    bool in_domain(int x) const { return cls[static_cast<std::size_t>(x)] >= 0; }
    bool related(int x, int y) const {
        int cx = cls[static_cast<std::size_t>(x)];
        return cx >= 0 && cx == cls[static_cast<std::size_t>(y)];
    }
    int class_of(int x) const { return cls[static_cast<std::size_t>(x)]; }

    int domain_size() const;
    std::vector<int> domain() const;

    /// Equivalence classes, each sorted, ordered by least member.
    std::vector<std::vector<int>> classes() const;

    /// All related ordered pairs, lexicographically sorted.
    std::vector<std::pair<int, int>> pairs() const;

    /// True iff every pair related here is related in `coarser`
    /// (the compatibility direction: finer groups relate at least as much).
    bool contained_in(const Per& coarser) const;

    bool operator==(const Per&) const = default;
};

/// Defect in a raw pair list that is supposed to be a PER as listed.
struct RelationDefect {
    enum class Kind { Asymmetric, Intransitive };
    Kind kind;
    int x = -1, y = -1, z = -1;  // Asymmetric: (x,y) without (y,x); Intransitive: (x,y),(y,z) without (x,z)
};

/// Check symmetry and transitivity of the pairs as listed (no repair).
std::vector<RelationDefect> relation_defects(const std::vector<std::pair<int, int>>& pairs, int n);

inline Per per_closure(const std::vector<std::pair<int, int>>& pairs, int n) {
    return Per::from_pairs(pairs, n);
}

}  // namespace episim

#endif
