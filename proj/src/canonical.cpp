#include "canonical.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace tripack {

namespace {

using Cell = std::vector<int>;
using Partition = std::vector<Cell>;

uint64_t cell_mask(const Cell& c) {
    uint64_t m = 0;
    for (int v : c) m |= uint64_t(1) << v;
    return m;
}

// Split every cell by its members' neighbour counts against all cells,
// repeating until stable. Subcells replace their parent in signature order,
// which keeps the procedure relabeling-equivariant.
void refine(const Graph& g, Partition& p) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<uint64_t> masks(p.size());
        for (size_t i = 0; i < p.size(); ++i) masks[i] = cell_mask(p[i]);
        Partition next;
        for (const Cell& c : p) {
            if (c.size() == 1) {
                next.push_back(c);
                continue;
            }
            std::map<std::vector<int>, Cell> groups;
            for (int v : c) {
                std::vector<int> sig(p.size());
                for (size_t i = 0; i < p.size(); ++i)
                    sig[i] = std::popcount(g.row(v) & masks[i]);
                groups[sig].push_back(v);
            }
            if (groups.size() > 1) changed = true;
            for (auto& [sig, members] : groups) next.push_back(std::move(members));
        }
        p = std::move(next);
    }
}

// A cell whose members induce a clique or an independent set and share one
// neighbourhood outside the cell contributes the same adjacency bits under
// every internal ordering, so the search never needs to branch inside it.
bool interchangeable(const Graph& g, const Cell& c) {
    if (c.size() <= 1) return true;
    uint64_t m = cell_mask(c);
    uint64_t outside = g.row(c[0]) & ~m;
    bool clique = true, indep = true;
    for (int v : c) {
        if ((g.row(v) & ~m) != outside) return false;
        uint64_t in = g.row(v) & m;
        if (in != (m & ~(uint64_t(1) << v))) clique = false;
        if (in != 0) indep = false;
    }
    return clique || indep;
}

struct Searcher {
    const Graph& g;
    int n;
    std::optional<Graph> best;
    std::vector<int> best_perm;
    std::vector<std::vector<int>> autos;  // automorphisms found en route

    explicit Searcher(const Graph& graph) : g(graph), n(graph.order()) {}

    std::vector<int> leaf_perm(const Partition& p) const {
        std::vector<int> perm(n);
        int next = 0;
        for (const Cell& c : p)
            for (int v : c) perm[v] = next++;
        return perm;
    }

    void visit_leaf(const Partition& p) {
        std::vector<int> perm = leaf_perm(p);
        Graph h = relabel(g, perm);
        if (!best) {
            best = h;
            best_perm = perm;
            return;
        }
        if (h < *best) {
            best = h;
            best_perm = perm;
        } else if (h == *best && perm != best_perm) {
            std::vector<int> inv = inverse_perm(perm);
            std::vector<int> sigma(n);
            for (int u = 0; u < n; ++u) sigma[u] = inv[best_perm[u]];
            autos.push_back(std::move(sigma));
        }
    }

    // Orbits of the prefix-fixing subgroup generated by the automorphisms
    // found so far; candidates sharing an orbit lead to equal subtree minima.
    std::vector<int> orbit_roots(const std::vector<int>& prefix) const {
        std::vector<int> root(n);
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        for (const auto& sigma : autos) {
            bool fixes = true;
            for (int v : prefix)
                if (sigma[v] != v) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int v = 0; v < n; ++v) {
                int a = find(v), b = find(sigma[v]);
                if (a != b) root[std::max(a, b)] = std::min(a, b);
            }
        }
        std::vector<int> out(n);
        for (int v = 0; v < n; ++v) out[v] = find(v);
        return out;
    }

    void search(const Partition& p, std::vector<int>& prefix) {
        int target = -1;
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i].size() > 1 && !interchangeable(g, p[i])) {
                target = (int)i;
                break;
            }
        }
        if (target < 0) {
            visit_leaf(p);
            return;
        }
        std::set<int> tried_roots;
        for (int v : p[target]) {
            std::vector<int> roots = orbit_roots(prefix);
            if (!tried_roots.insert(roots[v]).second) continue;
            Partition q;
            q.reserve(p.size() + 1);
            for (size_t i = 0; i < p.size(); ++i) {
                if ((int)i != target) {
                    q.push_back(p[i]);
                    continue;
                }
                q.push_back({v});
                Cell rest;
                for (int w : p[i])
                    if (w != v) rest.push_back(w);
                q.push_back(std::move(rest));
            }
            refine(g, q);
            prefix.push_back(v);
            search(q, prefix);
            prefix.pop_back();
        }
    }

    Canonical run() {
        Partition p;
        if (n > 0) {
            Cell all(n);
            std::iota(all.begin(), all.end(), 0);
            p.push_back(std::move(all));
            refine(g, p);
        }
        std::vector<int> prefix;
        if (n == 0) {
            return Canonical{Graph(0), {}};
        }
        search(p, prefix);
        return Canonical{*best, best_perm};
    }
};

}  // namespace

std::vector<int> inverse_perm(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = (int)i;
    return inv;
}

Canonical canonical_form(const Graph& g) {
    // The search is fastest on sparse graphs and the inputs here are mostly
    // near-complete, so canonicalize whichever of g and its complement has
    // fewer edges and translate back.
    if (g.edge_count() * 2 > g.pair_count()) {
        Canonical c = canonical_form(g.complement());
        return Canonical{c.graph.complement(), c.perm};
    }
    Searcher s(g);
    return s.run();
}

std::string canonical_g6(const Graph& g) {
    return graph6_encode(canonical_form(g).graph);
}

bool are_isomorphic(const Graph& a, const Graph& b) {
    if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a).graph == canonical_form(b).graph;
}

}  // namespace tripack
