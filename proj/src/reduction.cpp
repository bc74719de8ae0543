#include "reduction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "canonical.hpp"

namespace tripack {

DemandPartition partition_demands(const std::vector<int>& demands, int r, long m) {
    require(r >= 0, "set count r must be nonnegative");
    require(m >= 0, "set size bound m must be nonnegative");
    long total = 0;
    for (size_t i = 0; i < demands.size(); ++i) {
        require(demands[i] >= 0, "demand " + std::to_string(i) + " is negative");
        require(demands[i] <= r, "demand " + std::to_string(i) + " = " +
                                     std::to_string(demands[i]) + " exceeds r = " +
                                     std::to_string(r));
        total += demands[i];
    }
    require(total <= r * m, "total demand " + std::to_string(total) + " exceeds r*m = " +
                                std::to_string(r * m));

    DemandPartition out;
    out.r = r;
    out.m = m;
    out.demands = demands;
    out.sets.assign(r, {});

    std::vector<int> left = demands;
    std::vector<int> order(demands.size());
    std::iota(order.begin(), order.end(), 0);
    for (int j = r - 1; j >= 0; --j) {
        std::stable_sort(order.begin(), order.end(),
                         [&left](int x, int y) { return left[x] > left[y]; });
        std::vector<int>& sj = out.sets[j];
        for (size_t k = 0; k < order.size() && (long)k < m; ++k) {
            if (left[order[k]] < 1) break;
            sj.push_back(order[k]);
            --left[order[k]];
        }
        std::sort(sj.begin(), sj.end());
    }

    std::vector<int> count(demands.size(), 0);
    for (const std::vector<int>& s : out.sets)
        for (int i : s) ++count[i];
    require(count == demands, "internal error: greedy peeling missed a demand");
    return out;
}

std::vector<Graph> split_weighted(const WeightedGraph& wg, int r, long m) {
    const Graph& g = wg.graph;
    require(r >= 1, "split needs r >= 1");
    require((size_t)g.pair_count() == wg.phi.size(), "capacity table size does not match the graph");

    std::vector<int> demands(g.pair_count(), 0);
    for (int v = 0; v < g.order(); ++v)
        for (int u = 0; u < v; ++u) {
            const Rat& f = wg.phi[pair_index(u, v)];
            if (g.has_edge(u, v))
                require(f >= 0 && f <= 1, "capacity out of [0,1] on edge " + std::to_string(u) +
                                              "-" + std::to_string(v));
            else
                require(f == 0, "capacity on non-edge");
            Rat d = (Rat(1) - f) * r;
            require(rat_is_int(d), "weight " + rat_str(f) + " on pair " + std::to_string(u) +
                                       "-" + std::to_string(v) + " is not a multiple of 1/" +
                                       std::to_string(r));
            demands[pair_index(u, v)] = (int)d.get_num().get_si();
        }
    require(wg.missing_weight() <= m,
            "missing weight " + rat_str(wg.missing_weight()) + " exceeds the part budget m = " +
                std::to_string(m));

    DemandPartition parts = partition_demands(demands, r, m);
    std::vector<Graph> out;
    out.reserve(r);
    for (const std::vector<int>& s : parts.sets) {
        Graph gi = Graph::complete(g.order());
        for (int v = 0; v < g.order(); ++v)
            for (int u = 0; u < v; ++u)
                if (std::binary_search(s.begin(), s.end(), pair_index(u, v)))
                    gi.remove_edge(u, v);
        out.push_back(gi);
    }
    return out;
}

namespace {

struct PadContext {
    long target;
    const PackingSolver* solve;
    // canonical complement graph6 -> packing in canonical labels
    std::map<std::string, FractionalPacking> memo;
};

FractionalPacking pad_rec(const Graph& g, PadContext& ctx) {
    Canonical canon = canonical_form(g);
    std::string key = graph6_encode(canon.graph.complement());
    auto it = ctx.memo.find(key);
    if (it == ctx.memo.end()) {
        FractionalPacking cp;
        if (g.missing_count() == ctx.target) {
            cp = (*ctx.solve)(canon.graph);
        } else if (g.is_complete() && g.order() >= 4) {
            cp = symmetric_complete_packing(g.order());
        } else {
            std::vector<Triangle> ts = triangles(canon.graph);
            require(!ts.empty(),
                    "internal error: padding reached a triangle-free graph with missing edges to spare");
            Triangle t = ts.front();
            std::vector<std::pair<Rat, FractionalPacking>> parts;
            for (auto [u, v] : {std::pair{t.a, t.b}, std::pair{t.a, t.c}, std::pair{t.b, t.c}}) {
                Graph child = canon.graph;
                child.remove_edge(u, v);
                parts.emplace_back(rat_of(1, 3), pad_rec(child, ctx));
            }
            FractionalPacking last;
            last.add(t, Rat(1));
            parts.emplace_back(rat_of(1, 3), last);
            cp = combine(parts);
        }
        it = ctx.memo.emplace(key, std::move(cp)).first;
    }

    std::vector<int> inv = inverse_perm(canon.perm);
    FractionalPacking out;
    for (const auto& [t, wt] : it->second.weights)
        out.add(make_triangle(inv[t.a], inv[t.b], inv[t.c]), wt);
    return out;
}

}  // namespace

FractionalPacking pad_to_exact_missing(const Graph& g, long target_missing, const Rat& bound,
                                       const PackingSolver& solve) {
    require(g.edge_count() >= 1, "padding needs a graph with at least one edge");
    require(g.missing_count() <= target_missing,
            "graph already has " + std::to_string(g.missing_count()) +
                " missing edges, beyond the padding target " + std::to_string(target_missing));

    PadContext ctx{target_missing, &solve, {}};
    FractionalPacking w = pad_rec(g, ctx);

    PackingProblem p(g, rat_of(1, 2), bound);
    PackingReport rep = verify_packing(p, w);
    require(rep.pass, "padded packing failed verification: " +
                          (rep.problems.empty() ? "uncovered " + rat_str(rep.uncovered) +
                                                      " exceeds " + rat_str(bound)
                                                : rep.problems.front()));
    return w;
}

}  // namespace tripack
