#include "hamilton.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rat.hpp"

namespace tripack {

namespace {

int cycle_defects(const Graph& g, const std::vector<int>& order) {
    int n = (int)order.size();
    int bad = 0;
    for (int i = 0; i < n; ++i) bad += !g.has_edge(order[i], order[(i + 1) % n]);
    return bad;
}

}  // namespace

std::vector<int> hamilton_cycle(const Graph& g) {
    int n = g.order();
    require(n >= 3, "Hamilton cycles need at least 3 vertices");
    require(g.missing_count() <= n - 3, "too many missing edges: " +
                                            std::to_string(g.missing_count()) + " > n-3 = " +
                                            std::to_string(n - 3));

    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    int defects = cycle_defects(g, p);
    while (defects > 0) {
        int i = 0;
        while (g.has_edge(p[i], p[(i + 1) % n])) ++i;
        // Put the broken pair at the wrap-around, then reverse a prefix so
        // that both replacement pairs are edges. One exists because the
        // endpoints' degrees sum to at least n.
        std::rotate(p.begin(), p.begin() + (i + 1) % n, p.end());
        int j = 0;
        while (j < n - 1 &&
               !(g.has_edge(p[n - 1], p[j]) && g.has_edge(p[0], p[(j + 1) % n])))
            ++j;
        require(j < n - 1, "internal error: no rotation repair for a dense graph");
        std::reverse(p.begin(), p.begin() + j + 1);
        int now = cycle_defects(g, p);
        require(now < defects, "internal error: rotation repair failed to make progress");
        defects = now;
    }
    return p;
}

NearHamilton near_hamilton_order(const Graph& g, int a) {
    int n = g.order();
    require(0 <= a && a <= 4, "defect budget must lie in {0..4}");
    require(n >= 2, "near-Hamilton orders need at least 2 vertices");
    require(g.missing_count() <= n - 3 + a,
            "too many missing edges: " + std::to_string(g.missing_count()) + " > n-3+a = " +
                std::to_string(n - 3 + a));

    if (n == 2) return {{0, 1}, g.has_edge(0, 1) ? 1 : 2};

    Graph h = g;
    while (h.missing_count() > n - 3) {
        std::pair<int, int> best{-1, -1};
        int score = -1;
        for (auto [u, v] : h.non_edges()) {
            int s = h.nondegree(u) + h.nondegree(v);
            if (s > score) {
                score = s;
                best = {u, v};
            }
        }
        h.add_edge(best.first, best.second);
    }

    NearHamilton out;
    out.order = hamilton_cycle(h);
    out.defects = cycle_defects(g, out.order);
    require(out.defects <= a, "internal error: phantom edges exceeded the defect budget");
    return out;
}

}  // namespace tripack
