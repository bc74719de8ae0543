#include "constructor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "canonical.hpp"
#include "hamilton.hpp"
#include "lp.hpp"
#include "reduction.hpp"

namespace tripack {

namespace {

long choose2(long k) { return k < 2 ? 0 : k * (k - 1) / 2; }
long choose3(long k) { return k < 3 ? 0 : k * (k - 1) * (k - 2) / 6; }

// perm[old] = new; also usable as keep[sub] = parent to lift a subgraph
// packing into parent labels.
FractionalPacking relabel_packing(const FractionalPacking& w, const std::vector<int>& perm) {
    FractionalPacking out;
    for (const auto& [t, v] : w.weights)
        out.add(make_triangle(perm[t.a], perm[t.b], perm[t.c]), v);
    return out;
}

std::vector<int> positions_of(int n, const std::vector<int>& keep) {
    std::vector<int> pos(n, -1);
    for (int i = 0; i < (int)keep.size(); ++i) pos[keep[i]] = i;
    return pos;
}

// ---------------------------------------------------------------------------
// Packings constant on the orbits of a set of mutually interchangeable
// vertices. When every vertex of zs is adjacent to everything and the
// capacities are constant on the (u, z) and (z, z') classes, the triangle
// weights may be assumed constant on the Sym(zs) orbits: averaging a packing
// over the permutations of zs preserves feasibility, the cap, and the
// uncovered weight. That shrinks the LP from one variable per triangle to
// one per orbit class:
//   - each triangle inside us                        (orbit size 1)
//   - each edge uv inside us, for the class {uvz}    (orbit size m)
//   - each u, for the class {uzz'}                   (orbit size m(m-1)/2)
//   - one class {zz'z''}                             (orbit size m(m-1)(m-2)/6)

struct OrbitLp {
    std::vector<int> us, zs;
    std::vector<Triangle> uu_tris;
    std::vector<std::pair<int, int>> uu_edges;
    bool has_uzz = false, has_zzz = false;
    LinearProgram lp;
    Rat total;  // total capacity, so uncovered = total + objective value
};

OrbitLp make_orbit_lp(const WeightedGraph& wg, const std::vector<int>& zs_in, const Rat& beta,
                      bool slack_cap_rows, const std::optional<Rat>& exact_uncovered) {
    const Graph& g = wg.graph;
    int n = g.order();
    OrbitLp ol;
    ol.zs = zs_in;
    std::sort(ol.zs.begin(), ol.zs.end());
    std::vector<char> isz(n, 0);
    for (int z : ol.zs) {
        require(z >= 0 && z < n && !isz[z], "interchangeable set out of range or repeated");
        require(g.degree(z) == n - 1, "interchangeable vertex misses an edge");
        isz[z] = 1;
    }
    for (int v = 0; v < n; ++v)
        if (!isz[v]) ol.us.push_back(v);
    int m = (int)ol.zs.size();
    const auto& us = ol.us;
    int q = (int)us.size();

    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            if (!g.has_edge(us[i], us[j])) continue;
            ol.uu_edges.push_back({us[i], us[j]});
            for (int k = j + 1; k < q; ++k)
                if (g.has_edge(us[i], us[k]) && g.has_edge(us[j], us[k]))
                    ol.uu_tris.push_back(make_triangle(us[i], us[j], us[k]));
        }
    ol.has_uzz = m >= 2 && q >= 1;
    ol.has_zzz = m >= 3;

    // class-constant capacity audit
    std::vector<Rat> ucap(q);
    for (int i = 0; i < q; ++i) {
        if (m == 0) break;
        ucap[i] = wg.weight(us[i], ol.zs[0]);
        for (int z : ol.zs)
            require(wg.weight(us[i], z) == ucap[i],
                    "capacities not constant on an interchangeable class");
    }
    Rat zcap;
    if (m >= 2) {
        zcap = wg.weight(ol.zs[0], ol.zs[1]);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                require(wg.weight(ol.zs[i], ol.zs[j]) == zcap,
                        "capacities not constant on an interchangeable class");
    }

    int nt = (int)ol.uu_tris.size(), ne = (int)ol.uu_edges.size();
    int base_uzz = nt + ne;
    int base_zzz = base_uzz + (ol.has_uzz ? q : 0);
    int nv = base_zzz + (ol.has_zzz ? 1 : 0);

    LinearProgram lp = LinearProgram::with_vars(nv);
    for (int i = 0; i < nv; ++i) {
        lp.lower[i] = Rat(0);
        lp.upper[i] = beta;
    }
    std::vector<Rat> orbit(nv, Rat(1));
    for (int i = 0; i < ne; ++i) orbit[nt + i] = Rat(m);
    if (ol.has_uzz)
        for (int i = 0; i < q; ++i) orbit[base_uzz + i] = Rat(choose2(m));
    if (ol.has_zzz) orbit[base_zzz] = Rat(choose3(m));
    for (int i = 0; i < nv; ++i) lp.objective[i] = Rat(-3) * orbit[i];

    std::vector<int> upos = positions_of(n, us);
    struct ClassRow {
        std::vector<Rat> coeffs;
        Rat cap;
    };
    std::vector<ClassRow> class_rows;
    for (int i = 0; i < ne; ++i) {
        ClassRow row{std::vector<Rat>(nv, Rat(0)), wg.weight(ol.uu_edges[i].first, ol.uu_edges[i].second)};
        for (int t = 0; t < nt; ++t) {
            const Triangle& tr = ol.uu_tris[t];
            auto [u, v] = ol.uu_edges[i];
            if ((tr.a == u || tr.b == u || tr.c == u) && (tr.a == v || tr.b == v || tr.c == v))
                row.coeffs[t] = Rat(1);
        }
        if (m >= 1) row.coeffs[nt + i] = Rat(m);
        class_rows.push_back(std::move(row));
    }
    if (m >= 1)
        for (int i = 0; i < q; ++i) {
            ClassRow row{std::vector<Rat>(nv, Rat(0)), ucap[i]};
            for (int e = 0; e < ne; ++e)
                if (ol.uu_edges[e].first == us[i] || ol.uu_edges[e].second == us[i])
                    row.coeffs[nt + e] = Rat(1);
            if (ol.has_uzz) row.coeffs[base_uzz + i] = Rat(m - 1);
            class_rows.push_back(std::move(row));
        }
    if (m >= 2) {
        ClassRow row{std::vector<Rat>(nv, Rat(0)), zcap};
        if (ol.has_uzz)
            for (int i = 0; i < q; ++i) row.coeffs[base_uzz + i] = Rat(1);
        if (ol.has_zzz) row.coeffs[base_zzz] = Rat(m - 2);
        class_rows.push_back(std::move(row));
    }

    for (const auto& row : class_rows) lp.add_row(row.coeffs, Rel::LE, row.cap);
    if (slack_cap_rows) {
        Rat half = rat_of(1, 2);
        for (const auto& row : class_rows) {
            Rat rhs = row.cap - half;
            if (rhs > 0) lp.add_row(row.coeffs, Rel::GE, rhs);
        }
    }
    ol.total = wg.total_weight();
    if (exact_uncovered) {
        std::vector<Rat> cov(nv);
        for (int i = 0; i < nv; ++i) cov[i] = Rat(3) * orbit[i];
        lp.add_row(std::move(cov), Rel::EQ, ol.total - *exact_uncovered);
    }
    ol.lp = std::move(lp);
    return ol;
}

FractionalPacking expand_orbit(const OrbitLp& ol, const std::vector<Rat>& x) {
    FractionalPacking w;
    int m = (int)ol.zs.size(), q = (int)ol.us.size();
    int nt = (int)ol.uu_tris.size(), ne = (int)ol.uu_edges.size();
    for (int t = 0; t < nt; ++t) w.add(ol.uu_tris[t], x[t]);
    for (int e = 0; e < ne; ++e)
        for (int z : ol.zs)
            w.add(make_triangle(ol.uu_edges[e].first, ol.uu_edges[e].second, z), x[nt + e]);
    int base = nt + ne;
    if (ol.has_uzz) {
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = j + 1; k < m; ++k)
                    w.add(make_triangle(ol.us[i], ol.zs[j], ol.zs[k]), x[base + i]);
        base += q;
    }
    if (ol.has_zzz)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int k = j + 1; k < m; ++k)
                    w.add(make_triangle(ol.zs[i], ol.zs[j], ol.zs[k]), x[base]);
    return w;
}

struct OrbitResult {
    bool ok = false;
    Rat uncovered;
    FractionalPacking packing;
};

// Cheapest symmetric packing search: stops at the first one within target.
OrbitResult orbit_packing_within(const WeightedGraph& wg, const std::vector<int>& zs,
                                 const Rat& beta, const Rat& target) {
    OrbitLp ol = make_orbit_lp(wg, zs, beta, false, std::nullopt);
    OrbitResult out;
    if (ol.lp.num_vars == 0) {
        out.uncovered = ol.total;
        out.ok = out.uncovered <= target;
        return out;
    }
    LpSolution sol = solve_lp_bounded(ol.lp, target - ol.total, SolveMode::Auto);
    require(sol.status == LpStatus::Optimal, "internal error: packing program not optimal");
    out.uncovered = ol.total + sol.objective_value;
    out.ok = out.uncovered <= target;
    if (!out.ok) return out;
    out.packing = expand_orbit(ol, sol.primal);
    PackingReport rep = verify_packing(PackingProblem(wg, beta, target), out.packing);
    require(rep.pass && rep.uncovered == out.uncovered,
            "internal error: expanded class packing failed verification");
    return out;
}

// Symmetric packing with uncovered weight pinned exactly and per-edge slack
// at most 1/2. Fails loudly when no such packing exists.
FractionalPacking orbit_packing_exact_slack(const WeightedGraph& wg, const std::vector<int>& zs,
                                            const Rat& beta, const Rat& unc) {
    OrbitLp ol = make_orbit_lp(wg, zs, beta, true, unc);
    require(ol.lp.num_vars > 0, "no triangles to pin the uncovered weight with");
    // The pinning row makes the objective constant on the feasible set, so
    // this is a pure feasibility question: stop at the first feasible point.
    Rat pinned = unc - ol.total;
    LpSolution sol = solve_lp_bounded(ol.lp, pinned, SolveMode::Auto);
    require(sol.status == LpStatus::Optimal,
            "no symmetric packing with uncovered weight exactly " + rat_str(unc) +
                " and slack at most 1/2 on every edge");
    FractionalPacking w = expand_orbit(ol, sol.primal);
    PackingReport rep = verify_packing(PackingProblem(wg, beta, unc), w);
    require(rep.pass && rep.uncovered == unc,
            "internal error: pinned-slack packing failed verification");
    return w;
}

// ---------------------------------------------------------------------------
// Recursion driver: memo of solved subproblems keyed by isomorphism class,
// plus a depth rule keeping the tree small. The top call always runs the
// full case machinery; deeper nodes above kRecurseMax vertices are closed
// directly by a (symmetry-reduced) LP, which succeeds because every
// subproblem the cases emit stays within the uncovered-weight budget the
// cases themselves certify. Results are exact either way; the rule only
// decides which certified search runs.
constexpr int kRecurseMax = 15;

std::mutex memo_mu;
std::map<std::pair<std::string, int>, FractionalPacking> memo;
constexpr size_t kMemoCap = 20000;

struct BuildCtx {
    std::vector<std::string>* trace = nullptr;
    int depth = 0;
};

void trace_line(BuildCtx& ctx, const Graph& g, int a, const std::string& what) {
    if (!ctx.trace) return;
    std::ostringstream os;
    os << "depth=" << ctx.depth << " n=" << g.order() << " missing=" << g.missing_count()
       << " a=" << a << " " << what;
    ctx.trace->push_back(os.str());
}

FractionalPacking build(const Graph& g, int a, BuildCtx& ctx);

FractionalPacking recurse(const Graph& child, int a, BuildCtx& ctx) {
    ++ctx.depth;
    FractionalPacking w = build(child, a, ctx);
    --ctx.depth;
    return w;
}

FractionalPacking lp_discharge(const Graph& g, int a, BuildCtx& ctx) {
    trace_line(ctx, g, a, "lp");
    std::vector<int> zs;
    for (int v = 0; v < g.order(); ++v)
        if (g.nondegree(v) == 0) zs.push_back(v);
    if (zs.size() >= 2) {
        OrbitResult r = orbit_packing_within(WeightedGraph(g), zs, rat_of(1, 2), Rat(a));
        require(r.ok, "no packing with uncovered weight at most " + std::to_string(a) +
                          " found for a subproblem on " + std::to_string(g.order()) + " vertices");
        return r.packing;
    }
    BoundedPacking bp = find_packing_within(PackingProblem(g, rat_of(1, 2), Rat(a)));
    require(bp.ok, "no packing with uncovered weight at most " + std::to_string(a) +
                       " found for a subproblem on " + std::to_string(g.order()) + " vertices");
    return bp.packing;
}

FractionalPacking case_vertex_fan(const CaseContext& cc, BuildCtx& ctx);
FractionalPacking case_vertex_average(const CaseContext& cc, BuildCtx& ctx);
FractionalPacking case_symmetric_family(const CaseContext& cc, BuildCtx& ctx);
FractionalPacking case_filled_pair(const CaseContext& cc, BuildCtx& ctx);

FractionalPacking build_exact(const Graph& g, int a, BuildCtx& ctx) {
    int n = g.order();
    require(g.missing_count() == (long)n - 4 + a,
            "internal error: case dispatch needs exactly n-4+a missing pairs");
    CaseContext cc = make_context(g, a);
    PackCase pc = dispatch_case(cc);
    trace_line(ctx, g, a, std::string("case=") + pack_case_name(pc));
    FractionalPacking w;
    switch (pc) {
        case PackCase::VertexFan: w = case_vertex_fan(cc, ctx); break;
        case PackCase::VertexAverage: w = case_vertex_average(cc, ctx); break;
        case PackCase::SymmetricFamily: w = case_symmetric_family(cc, ctx); break;
        case PackCase::FilledPair: w = case_filled_pair(cc, ctx); break;
    }
    PackingReport rep = verify_packing(PackingProblem(g, rat_of(1, 2), Rat(a)), w);
    require(rep.pass, "internal error: constructed packing failed verification: " +
                          (rep.problems.empty() ? std::string("uncovered weight too large")
                                                : rep.problems.front()));
    return w;
}

FractionalPacking build(const Graph& g, int a, BuildCtx& ctx) {
    int n = g.order();
    long miss = g.missing_count();
    require(miss <= (long)n - 4 + a, "internal error: subproblem exceeds its missing-pair budget");
    if (g.is_complete()) {
        trace_line(ctx, g, a, "complete");
        return symmetric_complete_packing(n);
    }
    Canonical canon = canonical_form(g);
    std::pair<std::string, int> key{graph6_encode(canon.graph), a};
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        auto it = memo.find(key);
        if (it != memo.end()) {
            trace_line(ctx, g, a, "memo");
            return relabel_packing(it->second, inverse_perm(canon.perm));
        }
    }
    FractionalPacking w;
    if (n <= 13) {
        trace_line(ctx, g, a, "lp-base");
        BoundedPacking bp = find_packing_within(PackingProblem(g, rat_of(1, 2), Rat(a)));
        require(bp.ok, "no packing with uncovered weight at most " + std::to_string(a) +
                           " exists for this " + std::to_string(n) + "-vertex graph");
        w = bp.packing;
    } else if (ctx.depth > 0 && n > kRecurseMax) {
        w = lp_discharge(g, a, ctx);
    } else if (miss < (long)n - 4 + a) {
        if (n <= kRecurseMax) {
            trace_line(ctx, g, a, "pad");
            w = pad_to_exact_missing(g, n - 4 + a, Rat(a),
                                     [&](const Graph& gg) { return build(gg, a, ctx); });
        } else {
            w = lp_discharge(g, a, ctx);
        }
    } else {
        w = build_exact(g, a, ctx);
    }
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        if (memo.size() >= kMemoCap) memo.clear();
        memo.emplace(std::move(key), relabel_packing(w, canon.perm));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Fan construction: a vertex u misses more than (n+a)/3 pairs, so its
// neighbourhood is dense enough for a near-Hamilton order. Fan triangles
// (u, x_i, x_i+1) take weight 1/2 on the real consecutive pairs; the rest of
// the graph, with those cycle edges halved, splits into two integer graphs
// handled recursively.

FractionalPacking case_vertex_fan(const CaseContext& cc, BuildCtx& ctx) {
    const Graph& g = cc.g;
    int n = g.order(), a = cc.a;
    int u = cc.fan_vertex;
    require(u >= 0, "internal error: fan case without a fan vertex");
    int dbar = g.nondegree(u), d = n - 1 - dbar;
    Rat half = rat_of(1, 2);
    std::vector<int> keep = labels_without(n, u);

    if (d == 2 && a == 1) {
        // all missing pairs sit at u, so the two neighbours are adjacent:
        // one fan triangle, xy halved, and the two halves are decomposed
        int x = -1, y = -1;
        for (int v = 0; v < n; ++v)
            if (v != u && g.has_edge(u, v)) (x < 0 ? x : y) = v;
        require(y >= 0 && g.has_edge(x, y), "internal error: fan neighbours not adjacent");
        FractionalPacking fan;
        fan.add(make_triangle(u, x, y), half);
        std::vector<int> pos = positions_of(n, keep);
        WeightedGraph hw(induced(g, keep));
        hw.set_weight(pos[x], pos[y], half);
        std::vector<Graph> parts = split_weighted(hw, 2, (long)n - 5);
        std::vector<std::pair<Rat, FractionalPacking>> acc{{Rat(1), std::move(fan)}};
        for (const Graph& part : parts)
            acc.push_back({half, relabel_packing(recurse(part, 0, ctx), keep)});
        return combine(acc);
    }
    if (d <= 2) {
        // almost every missing pair sits at u; dropping u costs d <= 2 <= a
        require(a >= 2, "internal error: low-degree fan vertex with slack below 2");
        Graph h = induced(g, keep);
        require(h.missing_count() == (long)a + d - 3,
                "internal error: residual graph misses the expected pairs");
        return relabel_packing(recurse(h, 0, ctx), keep);
    }

    std::vector<int> nb;
    for (int v = 0; v < n; ++v)
        if (v != u && g.has_edge(u, v)) nb.push_back(v);
    Graph h = induced(g, nb);
    require(h.missing_count() <= (long)d - 3 + a,
            "internal error: fan neighbourhood too sparse for a near-Hamilton order");
    NearHamilton nh = near_hamilton_order(h, a);
    int alpha = nh.defects;
    require(alpha <= a, "internal error: near-Hamilton order with too many defects");

    FractionalPacking fan;
    std::vector<std::pair<int, int>> cyc;  // real cycle edges, parent labels
    for (int i = 0; i < d; ++i) {
        int hi = nh.order[i], hj = nh.order[(i + 1) % d];
        if (!h.has_edge(hi, hj)) continue;
        fan.add(make_triangle(u, nb[hi], nb[hj]), half);
        cyc.push_back({nb[hi], nb[hj]});
    }
    require((int)cyc.size() == d - alpha, "internal error: cycle defect count mismatch");

    std::vector<int> pos = positions_of(n, keep);
    WeightedGraph hw(induced(g, keep));
    for (auto [p, q] : cyc) hw.set_weight(pos[p], pos[q], half);
    long m2 = (long)(n - 1) - 4 + (a - alpha);
    require(hw.missing_weight() <= Rat(m2),
            "internal error: halved remainder exceeds the recursion budget");
    std::vector<Graph> parts = split_weighted(hw, 2, m2);
    std::vector<std::pair<Rat, FractionalPacking>> acc{{Rat(1), std::move(fan)}};
    for (const Graph& part : parts)
        acc.push_back({half, relabel_packing(recurse(part, a - alpha, ctx), keep)});
    return combine(acc);
}

// ---------------------------------------------------------------------------
// Vertex-average construction: at most 3 vertices are clear of every missing
// pair. Delete each busy vertex in turn; the clear vertices are paired off
// through two edge-disjoint matchings M1, M2 so that deleting u also deletes
// its M1-partner, and deleting an M2-partnered u instead cuts the partner's
// M1 edge. Every edge of g then survives in exactly |U|-2 of the children,
// so averaging the child packings with weight 1/(|U|-2) is feasible.

FractionalPacking case_vertex_average(const CaseContext& cc, BuildCtx& ctx) {
    const Graph& g = cc.g;
    int n = g.order(), a = cc.a;
    const std::vector<int>& zs = cc.zs;
    const std::vector<int>& us = cc.us;
    int m = (int)zs.size(), q = (int)us.size();
    require(m <= 3, "internal error: vertex-average case needs at most 3 clear vertices");
    require(q >= 5, "internal error: too few busy vertices to average over");

    std::vector<int> K, L;
    for (int u : us) {
        int db = g.nondegree(u);
        if (db >= 3)
            K.push_back(u);
        else if (db == 2)
            L.push_back(u);
    }
    int k = (int)K.size(), l = (int)L.size();
    if (m > 0)
        require(2 * k + l >= m + 3,
                "internal error: not enough busy vertices to pair the clear ones");

    std::vector<int> p1(n, -1), p2(n, -1);  // partner of each clear vertex
    if (m > 0) {
        std::vector<int> P1, P2;
        if (k >= m) {
            if (m == 1) {
                P1 = {K[0]};
                P2 = {k >= 2 ? K[1] : L[0]};
            } else {
                P1.assign(K.begin(), K.begin() + m);
                P2 = P1;
            }
        } else {
            P1 = K;
            P2 = K;
            require(l >= 2 * (m - k), "internal error: pairing pool exhausted");
            for (int i = 0; i < m - k; ++i) P1.push_back(L[i]);
            for (int i = 0; i < m - k; ++i) P2.push_back(L[m - k + i]);
        }
        for (int i = 0; i < m; ++i) {
            p1[zs[i]] = P1[i];
            p2[zs[i]] = P2[(i + 1) % m];
        }
        for (int z : zs)
            require(p1[z] != p2[z], "internal error: pairing matchings collide");
    }

    std::vector<int> d1(n, 0), d2(n, 0);
    for (int z : zs) {
        d1[p1[z]] += 1;
        d2[p2[z]] += 1;
    }
    for (int u : us)
        require(d1[u] <= 1 && d2[u] <= 1, "internal error: pairing is not a matching");

    long rsum = 0;
    std::vector<int> r(n, 0);
    for (int u : us) {
        int ru = std::min((long)a, (long)g.nondegree(u) - 1 - d1[u] - d2[u]);
        require(ru >= 0, "internal error: negative slack share at a vertex");
        r[u] = ru;
        rsum += ru;
    }
    require(rsum >= 2L * a, "internal error: slack shares fall short of 2a");

    std::vector<long> appearances(g.pair_count(), 0);
    std::vector<std::pair<Rat, FractionalPacking>> acc;
    Rat coeff = rat_of(1, q - 2);
    for (int u : us) {
        int zdrop = -1, zcut = -1;
        for (int z : zs) {
            if (p1[z] == u) zdrop = z;
            if (p2[z] == u) zcut = z;
        }
        Graph gu = g;
        if (zcut >= 0) gu.remove_edge(zcut, p1[zcut]);
        std::vector<int> keep;
        for (int v = 0; v < n; ++v)
            if (v != u && v != zdrop) keep.push_back(v);
        Graph h = induced(gu, keep);
        for (auto [x, y] : h.edges()) ++appearances[pair_index(keep[x], keep[y])];
        long expected = (long)n - 4 + a - g.nondegree(u) + d2[u];
        require(h.missing_count() == expected, "internal error: child misses the expected pairs");
        require(expected <= (long)h.order() - 4 + (a - r[u]),
                "internal error: child exceeds its missing-pair budget");
        acc.push_back({coeff, relabel_packing(recurse(h, a - r[u], ctx), keep)});
    }
    for (auto [x, y] : g.edges())
        require(appearances[pair_index(x, y)] == q - 2,
                "internal error: child subgraphs do not balance an edge");
    return combine(acc);
}

// ---------------------------------------------------------------------------
// Shared pieces of the two symmetric-family constructions.

// Slack profile of a family member in parent labels: reads the per-edge
// slack of w0 (a packing of g minus z0), scales it by 1/(a+1), and checks it
// is constant on the interchangeable classes.
SymmetricProfile profile_from_member(const CaseContext& cc, const Graph& h,
                                     const std::vector<int>& keep,
                                     const FractionalPacking& w0h, int scale_den) {
    const Graph& g = cc.g;
    int n = g.order();
    std::vector<char> isz(n, 0);
    for (int z : cc.zs) isz[z] = 1;
    int m = (int)cc.zs.size();
    Rat s = rat_of(1, scale_den);
    Rat half = rat_of(1, 2);

    std::vector<Rat> cov = edge_coverage(h.order(), w0h);
    SymmetricProfile pr;
    pr.alpha.assign(n, Rat(0));
    pr.beta.assign(g.pair_count(), Rat(0));
    std::vector<char> alpha_seen(n, 0);
    bool gamma_seen = false;
    for (auto [x, y] : h.edges()) {
        Rat phi = (Rat(1) - cov[pair_index(x, y)]) * s;
        require(phi <= half, "internal error: member slack exceeds 1/2 on an edge");
        int gx = keep[x], gy = keep[y];
        bool zx = isz[gx], zy = isz[gy];
        if (zx && zy) {
            if (gamma_seen)
                require(pr.gamma == phi, "internal error: slack not constant on the clear pairs");
            pr.gamma = phi;
            gamma_seen = true;
        } else if (zx || zy) {
            int u = zx ? gy : gx;
            if (alpha_seen[u])
                require(pr.alpha[u] == phi,
                        "internal error: slack not constant on a clear-vertex star");
            pr.alpha[u] = phi;
            alpha_seen[u] = 1;
        } else {
            pr.beta[pair_index(gx, gy)] = phi;
        }
    }
    pr.alpha_total = Rat(0);
    for (int u : cc.us) pr.alpha_total += pr.alpha[u];
    pr.alpha_total *= Rat(m - 1);
    pr.beta_total = Rat(0);
    for (auto [x, y] : g.edges())
        if (!isz[x] && !isz[y]) pr.beta_total += pr.beta[pair_index(x, y)];
    return pr;
}

// Member for z: the representative with z0 and z transposed (the clear
// vertices are interchangeable, so the swap is an automorphism of g).
FractionalPacking member_for(const FractionalPacking& w0, int n, int z0, int z) {
    if (z == z0) return w0;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::swap(perm[z0], perm[z]);
    return relabel_packing(w0, perm);
}

Rat phi_of_profile(const SymmetricProfile& pr, const std::vector<char>& isz, int x, int y) {
    bool zx = isz[x], zy = isz[y];
    if (zx && zy) return pr.gamma;
    if (zx) return pr.alpha[y];
    if (zy) return pr.alpha[x];
    return pr.beta[pair_index(x, y)];
}

// Accumulates the residual of one family member: for every edge of g away
// from z, residual = 1 - coverage - profile slack. Checks nonnegativity and
// returns the member's residual total.
Rat accumulate_member_residual(const Graph& g, int z, const FractionalPacking& wz,
                               const SymmetricProfile& pr, const std::vector<char>& isz,
                               std::vector<Rat>& residual) {
    int n = g.order();
    std::vector<Rat> cov = edge_coverage(n, wz);
    Rat total(0);
    for (auto [x, y] : g.edges()) {
        if (x == z || y == z) continue;
        Rat res = Rat(1) - cov[pair_index(x, y)] - phi_of_profile(pr, isz, x, y);
        require(res >= 0, "internal error: member residual negative on an edge");
        residual[pair_index(x, y)] += res;
        total += res;
    }
    return total;
}

// Greedy slack shares: sigma(u) <= r(u), assigned by ascending label until
// the target total is reached. forced2 vertices take 2 up front.
std::vector<int> assign_sigma(const std::vector<int>& us, const std::vector<int>& r, int n,
                              long target, const std::vector<char>& forced2) {
    std::vector<int> sigma(n, 0);
    long rem = target;
    for (int u : us)
        if (forced2[u]) {
            require(r[u] >= 2, "internal error: forced slack share exceeds the allowance");
            sigma[u] = 2;
            rem -= 2;
        }
    require(rem >= 0, "internal error: forced slack shares exceed the target");
    for (int u : us) {
        if (rem == 0) break;
        int extra = (int)std::min<long>(r[u] - sigma[u], rem);
        sigma[u] += extra;
        rem -= extra;
    }
    require(rem == 0, "internal error: slack shares fall short of their target");
    return sigma;
}

// Routed child: g minus u with capacities reduced by the budget nu routed
// into u, packed symmetrically within a - sigma(u).
FractionalPacking routed_child(const CaseContext& cc, int u, const std::vector<Rat>& nu_from,
                               const Rat& nu_pool, int budget, BuildCtx& ctx,
                               std::vector<Rat>& residual, Rat& residual_total) {
    const Graph& g = cc.g;
    int n = g.order();
    int m = (int)cc.zs.size();
    std::vector<int> keep = labels_without(n, u);
    std::vector<int> pos = positions_of(n, keep);
    WeightedGraph hw(induced(g, keep));
    for (int j = 0; j < (int)cc.us.size(); ++j) {
        int v = cc.us[j];
        if (v == u || nu_from[j] == 0) continue;
        Rat w = Rat(1) - nu_from[j] / m;
        for (int z : cc.zs) hw.set_weight(pos[v], pos[z], w);
    }
    if (nu_pool != 0) {
        Rat w = Rat(1) - nu_pool / choose2(m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) hw.set_weight(pos[cc.zs[i]], pos[cc.zs[j]], w);
    }
    require(hw.missing_weight() <= Rat((long)n - 1 - 4 + budget),
            "internal error: routed child exceeds its missing-weight budget");
    std::vector<int> hz;
    for (int z : cc.zs) hz.push_back(pos[z]);
    OrbitResult res = orbit_packing_within(hw, hz, rat_of(1, 2), Rat(budget));
    require(res.ok, "internal error: routed child misses its uncovered budget");
    // child residual: capacity minus coverage, lifted to parent labels
    std::vector<Rat> cov = edge_coverage(hw.graph.order(), res.packing);
    for (auto [x, y] : hw.graph.edges()) {
        Rat r = hw.weight(x, y) - cov[pair_index(x, y)];
        require(r >= 0, "internal error: routed child overcovers an edge");
        residual[pair_index(keep[x], keep[y])] += r;
        residual_total += r;
    }
    return relabel_packing(res.packing, keep);
}

void audit_accounting(const Graph& g, const FractionalPacking& w, const std::vector<Rat>& residual,
                      const Rat& residual_total, long denom, int a) {
    std::vector<Rat> cov = edge_coverage(g.order(), w);
    Rat d(denom);
    for (auto [x, y] : g.edges())
        require(cov[pair_index(x, y)] + residual[pair_index(x, y)] / d == 1,
                "internal error: coverage accounting fails at an edge");
    require(residual_total / d <= Rat(a),
            "internal error: residual total exceeds the uncovered budget");
}

// ---------------------------------------------------------------------------
// Symmetric-family construction for a <= 3. One representative packing of
// g minus z0 with uncovered weight exactly a+1 yields, via the z0 <-> z
// swaps, a family whose slack profile is shared. With few clear vertices the
// members are complemented by routed children of every busy vertex; with
// many clear vertices the profile itself closes the family (the us side is
// then too small to route through).

FractionalPacking case_symmetric_family(const CaseContext& cc, BuildCtx& ctx) {
    const Graph& g = cc.g;
    int n = g.order(), a = cc.a;
    const std::vector<int>& zs = cc.zs;
    const std::vector<int>& us = cc.us;
    int m = (int)zs.size(), q = (int)us.size();
    require(m >= 4 && a <= 3, "internal error: symmetric family needs m >= 4 and a <= 3");
    std::vector<char> isz(n, 0);
    for (int z : zs) isz[z] = 1;

    SymmetricFamily fam = make_symmetric_family(cc);
    const SymmetricProfile& pr = fam.profile;

    std::vector<Rat> betasum(n, Rat(0));
    for (auto [x, y] : g.edges()) {
        if (isz[x] || isz[y]) continue;
        betasum[x] += pr.beta[pair_index(x, y)];
        betasum[y] += pr.beta[pair_index(x, y)];
    }
    for (int u : us)
        require(betasum[u] <= 1, "internal error: member slack too concentrated at a vertex");

    std::vector<Rat> residual(g.pair_count(), Rat(0));
    Rat residual_total(0);
    std::vector<std::pair<Rat, FractionalPacking>> acc;

    std::vector<FractionalPacking> members;
    for (int z : zs) {
        members.push_back(member_for(fam.omega0, n, fam.z0, z));
        Rat member_res = accumulate_member_residual(g, z, members.back(), pr, isz, residual);
        require(member_res == Rat(a), "internal error: member residual total is not a");
        residual_total += member_res;
    }

    if (m <= n - 8) {
        // routed branch
        std::vector<int> r(n, 0);
        long rsum = 0;
        for (int u : us) {
            r[u] = std::min(a, g.nondegree(u) - 1);
            rsum += r[u];
        }
        require(rsum >= 2L * a, "internal error: slack shares fall short of 2a");
        std::vector<int> sigma =
            assign_sigma(us, r, n, 2L * a, std::vector<char>(n, 0));

        AuxMatchingInstance inst;
        for (int u : us) {
            inst.tau_u0.push_back(Rat(m) * betasum[u]);
            inst.tau_u1.push_back(Rat(g.nondegree(u) - 1 - sigma[u]));
        }
        inst.tau_pool = Rat(m) / 2 * pr.alpha_total;
        Rat cap_total(0);
        for (const Rat& t : inst.tau_u1) cap_total += t;
        require(cap_total == Rat((long)n + m - 8), "internal error: receiver budgets do not sum to n+m-8");
        AuxMatching numat = solve_aux_matching(inst);

        for (int i = 0; i < q; ++i)
            acc.push_back({rat_of(1, n - 2),
                           routed_child(cc, us[i], numat.nu[i], numat.nu_pool[i], a - sigma[us[i]],
                                        ctx, residual, residual_total)});

        FractionalPacking extra;
        for (auto [x, y] : g.edges()) {
            if (isz[x] || isz[y]) continue;
            const Rat& b = pr.beta[pair_index(x, y)];
            if (b == 0) continue;
            for (int z : zs) extra.add(make_triangle(x, y, z), b);
        }
        for (int u : us) {
            if (pr.alpha[u] == 0) continue;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    extra.add(make_triangle(u, zs[i], zs[j]), pr.alpha[u]);
        }
        if (pr.gamma != 0)
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    for (int k = j + 1; k < m; ++k)
                        extra.add(make_triangle(zs[i], zs[j], zs[k]), pr.gamma);
        for (const FractionalPacking& wm : members) acc.push_back({rat_of(1, n - 2), wm});
        acc.push_back({rat_of(1, n - 2), std::move(extra)});
        FractionalPacking w = combine(acc);
        audit_accounting(g, w, residual, residual_total, n - 2, a);
        return w;
    }

    // compact branch: |U| <= 7, the members and the profile close on their own
    FractionalPacking extra;
    for (auto [x, y] : g.edges()) {
        if (isz[x] || isz[y]) continue;
        const Rat& b = pr.beta[pair_index(x, y)];
        if (b == 0) continue;
        for (int z : zs) extra.add(make_triangle(x, y, z), b);
    }
    for (int u : us) {
        Rat val = (Rat(1) + Rat(m - 1) * pr.alpha[u] - betasum[u]) / (m - 1);
        require(val >= 0, "internal error: negative filler weight on a clear pair");
        if (val == 0) continue;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) extra.add(make_triangle(u, zs[i], zs[j]), val);
    }
    {
        Rat val = (Rat(2) + Rat(m - 2) * pr.gamma - Rat((long)n - m) / (m - 1) -
                   pr.alpha_total / (m - 1) + Rat(2) * pr.beta_total / (m - 1)) /
                  (m - 2);
        require(val >= 0, "internal error: negative filler weight on the clear triple");
        if (val != 0)
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    for (int k = j + 1; k < m; ++k)
                        extra.add(make_triangle(zs[i], zs[j], zs[k]), val);
    }
    for (const FractionalPacking& wm : members) acc.push_back({rat_of(1, m), wm});
    acc.push_back({rat_of(1, m), std::move(extra)});
    FractionalPacking w = combine(acc);
    audit_accounting(g, w, residual, residual_total, m, a);
    return w;
}

// ---------------------------------------------------------------------------
// Filled-pair construction for a = 4. Filling one missing pair xy brings the
// z-deleted subgraphs back inside the budget; the triangles through xy are
// then dropped and their weight reappears as the slack profile on the x and
// y stars. Depending on how much profile weight the fill produced, either
// the members close on their own or they are complemented by routed
// children with part of that weight written off directly.

FractionalPacking case_filled_pair(const CaseContext& cc, BuildCtx& ctx) {
    const Graph& g = cc.g;
    int n = g.order(), a = cc.a;
    const std::vector<int>& zs = cc.zs;
    const std::vector<int>& us = cc.us;
    int m = (int)zs.size(), q = (int)us.size();
    require(a == 4 && m >= 4, "internal error: filled-pair case needs a = 4 and m >= 4");
    std::vector<char> isz(n, 0);
    for (int z : zs) isz[z] = 1;

    int x = -1, y = -1;
    for (int i = 0; i < n && x < 0; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j)) {
                x = i;
                y = j;
                break;
            }
    require(x >= 0, "internal error: filled-pair case on a complete graph");

    int z0 = zs[0];
    Graph gfill = g;
    gfill.add_edge(x, y);
    std::vector<int> keep0 = labels_without(n, z0);
    std::vector<int> pos0 = positions_of(n, keep0);
    Graph h0 = induced(gfill, keep0);
    std::vector<int> hz0;
    for (int i = 1; i < m; ++i) hz0.push_back(pos0[zs[i]]);
    OrbitResult rep0 = orbit_packing_within(WeightedGraph(h0), hz0, rat_of(1, 2), Rat(4));
    require(rep0.ok, "internal error: no member packing within uncovered 4 after the fill");
    FractionalPacking w0 = relabel_packing(rep0.packing, keep0);  // packing of gfill minus z0

    // profile carried by the dropped xy triangles
    SymmetricProfile pr;
    pr.gamma = Rat(0);
    pr.alpha.assign(n, Rat(0));
    pr.beta.assign(g.pair_count(), Rat(0));
    bool alpha_seen = false;
    for (int i = 1; i < m; ++i) {
        Rat v = w0.weight(make_triangle(zs[i], x, y));
        if (alpha_seen)
            require(pr.alpha[x] == v, "internal error: fill weight not constant over the clear set");
        pr.alpha[x] = pr.alpha[y] = v;
        alpha_seen = true;
    }
    for (int u : us) {
        if (u == x || u == y) continue;
        Rat v = w0.weight(make_triangle(u, x, y));
        if (v == 0) continue;
        require(g.has_edge(u, x) && g.has_edge(u, y),
                "internal error: fill triangle on a missing pair");
        pr.beta[pair_index(u, x)] = v;
        pr.beta[pair_index(u, y)] = v;
    }
    pr.alpha_total = Rat(m - 1) * (pr.alpha[x] + pr.alpha[y]);
    pr.beta_total = Rat(0);
    std::vector<Rat> betasum(n, Rat(0));
    for (auto [p, qv] : g.edges()) {
        if (isz[p] || isz[qv]) continue;
        const Rat& b = pr.beta[pair_index(p, qv)];
        pr.beta_total += b;
        betasum[p] += b;
        betasum[qv] += b;
    }
    require(pr.alpha_total + pr.beta_total <= 2,
            "internal error: fill pair absorbs more than its capacity");
    for (int u : us)
        require(betasum[u] <= 1, "internal error: fill slack too concentrated at a vertex");

    // members: w0 with z0 <-> z swapped, xy triangles dropped
    std::vector<Rat> residual(g.pair_count(), Rat(0));
    Rat residual_total(0);
    std::vector<FractionalPacking> members;
    for (int z : zs) {
        FractionalPacking full = member_for(w0, n, z0, z);
        FractionalPacking wz;
        for (const auto& [t, v] : full.weights) {
            bool hasx = t.a == x || t.b == x || t.c == x;
            bool hasy = t.a == y || t.b == y || t.c == y;
            if (hasx && hasy) continue;
            wz.add(t, v);
        }
        Rat member_res = accumulate_member_residual(g, z, wz, pr, isz, residual);
        require(member_res <= Rat(a), "internal error: member residual total exceeds a");
        residual_total += member_res;
        members.push_back(std::move(wz));
    }

    std::vector<std::pair<Rat, FractionalPacking>> acc;
    if (Rat(3L * m) >= Rat((long)n + 4) - Rat(3) * pr.beta_total) {
        // compact branch
        FractionalPacking extra;
        for (auto [p, qv] : g.edges()) {
            if (isz[p] || isz[qv]) continue;
            const Rat& b = pr.beta[pair_index(p, qv)];
            if (b == 0) continue;
            for (int z : zs) extra.add(make_triangle(p, qv, z), b);
        }
        for (int u : us) {
            Rat val = (Rat(1) + Rat(m - 1) * pr.alpha[u] - betasum[u]) / (m - 1);
            require(val >= 0, "internal error: negative filler weight on a clear pair");
            if (val == 0) continue;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) extra.add(make_triangle(u, zs[i], zs[j]), val);
        }
        {
            Rat val = (Rat(2) - Rat((long)n - m) / (m - 1) - pr.alpha_total / (m - 1) +
                       Rat(2) * pr.beta_total / (m - 1)) /
                      (m - 2);
            require(val >= 0, "internal error: negative filler weight on the clear triple");
            if (val != 0)
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j)
                        for (int k = j + 1; k < m; ++k)
                            extra.add(make_triangle(zs[i], zs[j], zs[k]), val);
        }
        for (const FractionalPacking& wm : members) acc.push_back({rat_of(1, m), wm});
        acc.push_back({rat_of(1, m), std::move(extra)});
        FractionalPacking w = combine(acc);
        audit_accounting(g, w, residual, residual_total, m, a);
        return w;
    }

    // routed branch with a write-off of part of the fill weight
    Rat rho(0);
    if (3L * m > (long)n - 8 && pr.beta_total > 0) {
        Rat mb = Rat(m) * pr.beta_total;
        rho = std::min(Rat(6), mb);
    }
    Rat f = pr.beta_total > 0 ? Rat(1) - rho / (Rat(m) * pr.beta_total) : Rat(1);

    std::vector<int> r(n, 0);
    long rsum = 0;
    for (int u : us) {
        r[u] = std::min(4, g.nondegree(u) - 1);
        rsum += r[u];
    }
    require(rsum >= 8, "internal error: slack shares fall short of 2a");
    if (3L * m >= (long)n - 7)
        require(rsum >= 14, "internal error: slack shares fall short of 2a+6");

    long target = 8 + rat_ceil(rho).get_si();
    std::vector<char> forced2(n, 0);
    if (rho == 6) {
        int count = 0;
        for (int u : us)
            if (3 * g.nondegree(u) >= n + a - 6) {
                forced2[u] = 1;
                ++count;
            }
        require(count <= 7, "internal error: too many high-nondegree vertices for the write-off");
    }
    std::vector<int> sigma = assign_sigma(us, r, n, target, forced2);

    AuxMatchingInstance inst;
    for (int u : us) {
        inst.tau_u0.push_back(Rat(m) * f * betasum[u]);
        inst.tau_u1.push_back(Rat(g.nondegree(u) - 1 - sigma[u]));
    }
    inst.tau_pool = Rat(m) / 2 * pr.alpha_total;
    AuxMatching numat = solve_aux_matching(inst);

    for (int i = 0; i < q; ++i)
        acc.push_back({rat_of(1, n - 2),
                       routed_child(cc, us[i], numat.nu[i], numat.nu_pool[i], a - sigma[us[i]],
                                    ctx, residual, residual_total)});

    FractionalPacking extra;
    for (auto [p, qv] : g.edges()) {
        if (isz[p] || isz[qv]) continue;
        Rat b = f * pr.beta[pair_index(p, qv)];
        if (b == 0) continue;
        for (int z : zs) extra.add(make_triangle(p, qv, z), b);
    }
    for (int u : us) {
        if (pr.alpha[u] == 0) continue;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) extra.add(make_triangle(u, zs[i], zs[j]), pr.alpha[u]);
    }
    // written-off fill weight: charged straight to the residual
    if (rho > 0)
        for (auto [p, qv] : g.edges()) {
            if (isz[p] || isz[qv]) continue;
            const Rat& b = pr.beta[pair_index(p, qv)];
            if (b == 0) continue;
            Rat writeoff = rho * b / pr.beta_total;
            residual[pair_index(p, qv)] += writeoff;
            residual_total += writeoff;
        }

    for (const FractionalPacking& wm : members) acc.push_back({rat_of(1, n - 2), wm});
    acc.push_back({rat_of(1, n - 2), std::move(extra)});
    FractionalPacking w = combine(acc);
    audit_accounting(g, w, residual, residual_total, n - 2, a);
    return w;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* pack_case_name(PackCase c) {
    switch (c) {
        case PackCase::VertexFan: return "vertex-fan";
        case PackCase::VertexAverage: return "vertex-average";
        case PackCase::SymmetricFamily: return "symmetric-family";
        case PackCase::FilledPair: return "filled-pair";
    }
    return "?";
}

CaseContext make_context(const Graph& g, int a) {
    int n = g.order();
    require(a >= 0 && a <= 4, "slack a must be between 0 and 4");
    require(g.missing_count() == (long)n - 4 + a,
            "case dispatch needs exactly n-4+a missing pairs");
    CaseContext cc;
    cc.g = g;
    cc.a = a;
    for (int v = 0; v < n; ++v)
        (g.nondegree(v) > 0 ? cc.us : cc.zs).push_back(v);
    int best = -1;
    for (int v = 0; v < n; ++v)
        if (best < 0 || g.nondegree(v) > g.nondegree(best)) best = v;
    if (best >= 0 && 3L * g.nondegree(best) > (long)n + a) cc.fan_vertex = best;
    return cc;
}

PackCase dispatch_case(const CaseContext& cc) {
    if (cc.fan_vertex >= 0) return PackCase::VertexFan;
    if ((int)cc.zs.size() <= 3) return PackCase::VertexAverage;
    if (cc.a < 4) return PackCase::SymmetricFamily;
    return PackCase::FilledPair;
}

SymmetricFamily make_symmetric_family(const CaseContext& cc) {
    const Graph& g = cc.g;
    int n = g.order(), a = cc.a;
    require(a >= 0 && a <= 3, "family members need slack a <= 3");
    require((int)cc.zs.size() >= 2, "family needs at least 2 interchangeable vertices");
    SymmetricFamily fam;
    fam.z0 = cc.zs[0];
    std::vector<int> keep = labels_without(n, fam.z0);
    std::vector<int> pos = positions_of(n, keep);
    Graph h = induced(g, keep);
    std::vector<int> hz;
    for (size_t i = 1; i < cc.zs.size(); ++i) hz.push_back(pos[cc.zs[i]]);
    WeightedGraph hw(h);

    FractionalPacking w0h;
    if (a == 0) {
        // the profile is forced to equal the slack itself, so the member must
        // keep every edge's slack at 1/2 or below while leaving exactly 1
        w0h = orbit_packing_exact_slack(hw, hz, rat_of(1, 2), Rat(1));
    } else {
        OrbitResult res = orbit_packing_within(hw, hz, rat_of(1, 2), Rat(a + 1));
        require(res.ok, "internal error: no family member within uncovered a+1");
        if (res.uncovered < Rat(a + 1)) {
            // scale down so the uncovered weight is exactly a+1; slack can
            // only grow toward 1, and 1/(a+1) <= 1/2 keeps the profile legal
            Rat W = hw.total_weight();
            Rat t = (W - Rat(a + 1)) / (W - res.uncovered);
            FractionalPacking scaled;
            for (const auto& [tri, v] : res.packing.weights) scaled.add(tri, v * t);
            w0h = std::move(scaled);
        } else {
            w0h = std::move(res.packing);
        }
        PackingReport rep = verify_packing(PackingProblem(hw, rat_of(1, 2), Rat(a + 1)), w0h);
        require(rep.pass && rep.uncovered == Rat(a + 1),
                "internal error: scaled member failed verification");
    }
    fam.profile = profile_from_member(cc, h, keep, w0h, a + 1);
    require(Rat(choose2((long)cc.zs.size() - 1)) * fam.profile.gamma + fam.profile.alpha_total +
                    fam.profile.beta_total ==
                1,
            "internal error: slack profile does not close");
    fam.omega0 = relabel_packing(w0h, keep);
    return fam;
}

FractionalPacking symmetrize_over(const FractionalPacking& w, const std::vector<int>& zs) {
    int m = (int)zs.size();
    require(m >= 1, "empty interchangeable set");
    std::map<int, int> zindex;
    for (int i = 0; i < m; ++i) zindex.emplace(zs[i], i);
    require((int)zindex.size() == m, "repeated vertex in the interchangeable set");

    std::map<std::pair<std::vector<int>, int>, Rat> classes;
    for (const auto& [t, v] : w.weights) {
        std::vector<int> others;
        int j = 0;
        for (int vert : {t.a, t.b, t.c})
            if (zindex.count(vert))
                ++j;
            else
                others.push_back(vert);
        classes[{std::move(others), j}] += v;
    }
    long cm[4] = {1, m, choose2(m), choose3(m)};
    FractionalPacking out;
    for (const auto& [key, tot] : classes) {
        const auto& [others, j] = key;
        require(cm[j] > 0, "triangle uses more interchangeable vertices than available");
        Rat val = tot / cm[j];
        if (j == 0) {
            out.add(make_triangle(others[0], others[1], others[2]), val);
        } else if (j == 1) {
            for (int i = 0; i < m; ++i)
                out.add(make_triangle(others[0], others[1], zs[i]), val);
        } else if (j == 2) {
            for (int i = 0; i < m; ++i)
                for (int k = i + 1; k < m; ++k)
                    out.add(make_triangle(others[0], zs[i], zs[k]), val);
        } else {
            for (int i = 0; i < m; ++i)
                for (int k = i + 1; k < m; ++k)
                    for (int l = k + 1; l < m; ++l)
                        out.add(make_triangle(zs[i], zs[k], zs[l]), val);
        }
    }
    return out;
}

AuxMatching solve_aux_matching(const AuxMatchingInstance& inst) {
    int q = (int)inst.tau_u0.size();
    require((int)inst.tau_u1.size() == q, "budget lists differ in length");
    require(q >= 2, "routing needs at least two participants");
    Rat supply = inst.tau_pool, cap(0);
    require(inst.tau_pool >= 0, "negative pooled budget");
    for (int i = 0; i < q; ++i) {
        require(inst.tau_u0[i] >= 0 && inst.tau_u1[i] >= 0, "negative budget");
        supply += inst.tau_u0[i];
        cap += inst.tau_u1[i];
    }
    require(supply <= cap, "no routing: supplies total " + rat_str(supply) +
                               " but receivers only absorb " + rat_str(cap));
    for (int i = 0; i < q; ++i)
        require(inst.tau_u0[i] <= cap - inst.tau_u1[i],
                "no routing: one supply exceeds the capacity of the other receivers");

    // variables: x[i][j] for i != j, then the pooled edges y[j]
    auto var = [q](int i, int j) { return i * (q - 1) + (j > i ? j - 1 : j); };
    int base = q * (q - 1);
    LinearProgram lp = LinearProgram::with_vars(base + q);
    for (int i = 0; i < base + q; ++i) lp.lower[i] = Rat(0);
    for (int i = 0; i < q; ++i) {
        std::vector<Rat> row(base + q, Rat(0));
        for (int j = 0; j < q; ++j)
            if (j != i) row[var(i, j)] = Rat(1);
        lp.add_row(std::move(row), Rel::EQ, inst.tau_u0[i]);
    }
    {
        std::vector<Rat> row(base + q, Rat(0));
        for (int j = 0; j < q; ++j) row[base + j] = Rat(1);
        lp.add_row(std::move(row), Rel::EQ, inst.tau_pool);
    }
    for (int j = 0; j < q; ++j) {
        std::vector<Rat> row(base + q, Rat(0));
        for (int i = 0; i < q; ++i)
            if (i != j) row[var(i, j)] = Rat(1);
        row[base + j] = Rat(1);
        lp.add_row(std::move(row), Rel::LE, inst.tau_u1[j]);
    }
    LpSolution sol = solve_lp(lp, SolveMode::Auto);
    require(sol.status == LpStatus::Optimal, "internal error: routing program not optimal");

    AuxMatching out;
    out.nu.assign(q, std::vector<Rat>(q, Rat(0)));
    out.nu_pool.assign(q, Rat(0));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (i != j) out.nu[j][i] = sol.primal[var(i, j)];
    for (int j = 0; j < q; ++j) out.nu_pool[j] = sol.primal[base + j];
    return out;
}

namespace {

FractionalPacking construct_impl(const Graph& g, int a, std::vector<std::string>* trace) {
    int n = g.order();
    require(n >= 7, "the construction needs at least 7 vertices, got " + std::to_string(n));
    if (n <= 10) {
        require(a == 0, "orders 7..10 are only supported with a = 0, got a = " + std::to_string(a));
        require(g.missing_count() <= (long)n - 4,
                "too many missing pairs: n-4 = " + std::to_string(n - 4) + " allowed, got " +
                    std::to_string(g.missing_count()));
    } else {
        require(a >= 0 && a <= 4, "slack a must be between 0 and 4, got " + std::to_string(a));
        require(g.missing_count() <= (long)n - 4 + a,
                "too many missing pairs: n-4+a = " + std::to_string(n - 4 + a) + " allowed, got " +
                    std::to_string(g.missing_count()));
    }
    BuildCtx ctx{trace, 0};
    FractionalPacking w = build(g, a, ctx);
    PackingReport rep = verify_packing(PackingProblem(g, rat_of(1, 2), Rat(a)), w);
    require(rep.pass, "internal error: final packing failed verification");
    return w;
}

}  // namespace

FractionalPacking construct_packing(const Graph& g, int a) { return construct_impl(g, a, nullptr); }

ConstructResult construct_packing_traced(const Graph& g, int a) {
    ConstructResult out;
    out.packing = construct_impl(g, a, &out.trace);
    return out;
}

FractionalPacking corollary_exact_packing(const WeightedGraph& wk) {
    const Graph& g = wk.graph;
    int n = g.order();
    require(n >= 7, "needs at least 7 vertices, got " + std::to_string(n));
    require(g.is_complete(), "capacities must be given on a complete graph");
    require(wk.total_weight() >= Rat(g.pair_count()) - (n - 4),
            "total capacity below the threshold C(n,2)-(n-4)");
    Int r(1);
    for (auto [x, y] : g.edges())
        mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), wk.weight(x, y).get_den().get_mpz_t());
    require(r <= 1000000,
            "capacity denominators need a common multiple above 10^6; refusing to enumerate");
    long rl = r.get_si();
    std::vector<Graph> parts = split_weighted(wk, (int)rl, (long)n - 4);
    std::vector<std::pair<Rat, FractionalPacking>> acc;
    Rat coeff = rat_of(1, rl);
    BuildCtx ctx{nullptr, 0};
    for (const Graph& part : parts) acc.push_back({coeff, build(part, 0, ctx)});
    FractionalPacking w = combine(acc);
    std::vector<Rat> cov = edge_coverage(n, w);
    for (auto [x, y] : g.edges())
        require(cov[pair_index(x, y)] == wk.weight(x, y),
                "internal error: combined coverage misses an edge target");
    return w;
}

}  // namespace tripack
