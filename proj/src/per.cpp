#include "episim/per.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace episim {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

Per Per::from_pairs(const std::vector<std::pair<int, int>>& pairs, int n) {
    UnionFind uf(n);
    std::vector<char> touched(static_cast<std::size_t>(n), 0);
    for (auto [x, y] : pairs) {
        touched[static_cast<std::size_t>(x)] = 1;
        touched[static_cast<std::size_t>(y)] = 1;
        uf.unite(x, y);
    }
    std::vector<int> raw(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i)
        if (touched[static_cast<std::size_t>(i)]) raw[static_cast<std::size_t>(i)] = uf.find(i);
    return from_class_ids(std::move(raw));
}

Per Per::from_class_ids(std::vector<int> raw) {
    Per p;
    p.carrier = static_cast<int>(raw.size());
    p.cls.assign(raw.size(), -1);
    std::vector<std::pair<int, int>> seen;  // (raw id, normalized id)
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] < 0) continue;
        int norm = -1;
        for (auto& [r, m] : seen)
            if (r == raw[i]) { norm = m; break; }
        if (norm < 0) {
            norm = p.class_count++;
            seen.emplace_back(raw[i], norm);
        }
        p.cls[i] = norm;
    }
    return p;
}

int Per::domain_size() const {
    int k = 0;
    for (int c : cls) k += (c >= 0);
    return k;
}

std::vector<int> Per::domain() const {
    std::vector<int> out;
    for (int i = 0; i < carrier; ++i)
        if (cls[static_cast<std::size_t>(i)] >= 0) out.push_back(i);
    return out;
}

std::vector<std::vector<int>> Per::classes() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(class_count));
    for (int i = 0; i < carrier; ++i) {
        int c = cls[static_cast<std::size_t>(i)];
        if (c >= 0) out[static_cast<std::size_t>(c)].push_back(i);
    }
    return out;  // class ids follow first occurrence, so members are sorted
}

std::vector<std::pair<int, int>> Per::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& c : classes())
        for (int x : c)
            for (int y : c) out.emplace_back(x, y);
    std::sort(out.begin(), out.end());
    return out;
}

bool Per::contained_in(const Per& coarser) const {
    for (const auto& c : classes()) {
        int rep = coarser.class_of(c.front());
        if (rep < 0) return false;
        for (int x : c)
            if (coarser.class_of(x) != rep) return false;
    }
    return true;
}

std::vector<RelationDefect> relation_defects(const std::vector<std::pair<int, int>>& pairs,
                                             int n) {
    std::vector<RelationDefect> out;
    std::set<std::pair<int, int>> have(pairs.begin(), pairs.end());
    for (auto [x, y] : have)
        if (!have.count({y, x}))
            out.push_back({RelationDefect::Kind::Asymmetric, x, y, -1});
    // successors per element for the transitivity scan
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    for (auto [x, y] : have) succ[static_cast<std::size_t>(x)].push_back(y);
    for (auto [x, y] : have)
        for (int z : succ[static_cast<std::size_t>(y)])
            if (!have.count({x, z})) {
                out.push_back({RelationDefect::Kind::Intransitive, x, y, z});
            }
    return out;
}

}  // namespace episim
