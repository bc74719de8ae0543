#include "degseq.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "canonical.hpp"

namespace tripack {

namespace {

long seq_sum(const std::vector<int>& d) {
    return std::accumulate(d.begin(), d.end(), 0L);
}

// Number of leading entries that are at least 2. Everything after them is a
// leaf or an isolated vertex.
int core_size(const std::vector<int>& d) {
    int i = 0;
    while (i < (int)d.size() && d[i] >= 2) ++i;
    return i;
}

char rule_for(const std::vector<int>& d) {
    int n = (int)d.size();
    if (n == 0) return 0;
    if (seq_sum(d) > (long)n * (n - 1) / 2) return 'b';
    if (d[n - 1] <= 1) return 'c';
    return 'd';
}

std::vector<int> complement_seq(const std::vector<int>& d) {
    int n = (int)d.size();
    std::vector<int> out(n);
    for (int j = 0; j < n; ++j) out[j] = n - 1 - d[n - 1 - j];
    return out;
}

// Sequences d' of length i with d'_j <= d_j, non-increasing, total drop at
// most `budget`, and graphical.
std::vector<std::vector<int>> leaf_batch_preds(const std::vector<int>& d) {
    int i = core_size(d);
    long budget = 0;
    for (int j = i; j < (int)d.size(); ++j) budget += d[j];
    std::vector<std::vector<int>> out;
    std::vector<int> cur(i);
    auto rec = [&](auto&& self, int pos, long dropped) -> void {
        if (pos == i) {
            if (is_graphical(cur)) out.push_back(cur);
            return;
        }
        int hi = std::min(d[pos], pos > 0 ? cur[pos - 1] : d[pos]);
        for (int v = hi; v >= 0; --v) {
            long drop = dropped + (d[pos] - v);
            if (drop > budget) break;
            cur[pos] = v;
            self(self, pos + 1, drop);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Sequences d' of length n-1 with d'_j one of {t_j - 1, t_j} where t is the
// tail (d_2..d_n), non-increasing, total drop exactly d_1, and graphical.
// Comparing against the tail rather than (d_1..d_{n-1}) is what removal of a
// maximum-degree vertex actually does to the sorted sequence.
std::vector<std::vector<int>> vertex_add_preds(const std::vector<int>& d) {
    int n = (int)d.size();
    int k = n - 1;
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    auto rec = [&](auto&& self, int pos, int dropped) -> void {
        if (dropped > d[0] || dropped + (k - pos) < d[0]) return;
        if (pos == k) {
            if (dropped == d[0] && is_graphical(cur)) out.push_back(cur);
            return;
        }
        int t = d[pos + 1];
        for (int v : {t, t - 1}) {
            if (v < 0) continue;
            if (pos > 0 && v > cur[pos - 1]) continue;
            cur[pos] = v;
            self(self, pos + 1, dropped + (t - v));
        }
    };
    rec(rec, 0, 0);
    return out;
}

using FamilySet = std::set<std::string>;

void insert_graph(FamilySet& fam, const Graph& g) {
    fam.insert(canonical_g6(g));
}

// Attach new low-degree vertices to g so the degree sequence becomes d:
// some vertices gain pendant leaves, `pairs` disjoint new edges are added,
// and the rest of the new vertices stay isolated.
void expand_leaf_batch(const Graph& gp, const std::vector<int>& d,
                       FamilySet& fam) {
    int i = core_size(d);
    int n = (int)d.size();
    require(gp.order() == i, "leaf batch expansion size mismatch");
    long head_sum = 0;
    for (int j = 0; j < i; ++j) head_sum += d[j];
    long tail_sum = 0;
    for (int j = i; j < n; ++j) tail_sum += d[j];
    long attach = head_sum - gp.edge_count() * 2;
    long rem = tail_sum - attach;
    if (attach < 0 || rem < 0 || rem % 2 != 0) return;
    long pairs = rem / 2;

    // Assign each core vertex a target degree from the head multiset, at or
    // above its current degree; the gaps become pendant leaf counts.
    std::multiset<int> targets(d.begin(), d.begin() + i);
    std::vector<int> leaves(i, 0);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == i) {
            Graph g(n);
            for (auto [a, b] : gp.edges()) g.add_edge(a, b);
            int next = i;
            for (int u = 0; u < i; ++u)
                for (int t = 0; t < leaves[u]; ++t) g.add_edge(u, next++);
            for (long p = 0; p < pairs; ++p, next += 2)
                g.add_edge(next, next + 1);
            require(g.degree_sequence() == d, "leaf batch expansion degree mismatch");
            insert_graph(fam, g);
            return;
        }
        int deg = gp.degree(v);
        int prev = -1;
        for (auto it = targets.lower_bound(deg); it != targets.end();) {
            int t = *it;
            if (t == prev) {
                ++it;
                continue;
            }
            prev = t;
            it = targets.erase(it);
            leaves[v] = t - deg;
            self(self, v + 1);
            it = targets.insert(t);
            ++it;
        }
    };
    rec(rec, 0);
}

// Add one vertex adjacent to exactly d_1 old vertices so the degree sequence
// becomes d. Per old degree class the number of incremented vertices is
// forced; only the choice of which vertices inside a class remains.
void expand_vertex_add(const Graph& gp, const std::vector<int>& d,
                       FamilySet& fam) {
    int n = (int)d.size();
    require(gp.order() == n - 1, "vertex add expansion size mismatch");
    std::map<int, std::vector<int>> classes;  // degree -> vertices
    for (int v = 0; v < n - 1; ++v) classes[gp.degree(v)].push_back(v);
    std::map<int, int> want;  // degree value -> multiplicity in (d_2..d_n)
    for (int j = 1; j < n; ++j) ++want[d[j]];

    int maxdeg = classes.empty() ? 0 : classes.rbegin()->first;
    std::vector<int> take;  // per class in ascending degree order
    std::vector<int> degs;
    int carried = 0;
    for (int c = 0; c <= maxdeg + 1; ++c) {
        int k = classes.count(c) ? (int)classes[c].size() : 0;
        int f = want.count(c) ? want[c] : 0;
        int x = k - f + carried;
        if (x < 0 || x > k) return;
        if (k > 0) {
            degs.push_back(c);
            take.push_back(x);
        } else if (x != 0) {
            return;
        }
        carried = x;
    }
    if (carried != 0) return;
    long total = std::accumulate(take.begin(), take.end(), 0L);
    if (total != d[0]) return;

    std::vector<int> chosen;
    auto rec = [&](auto&& self, size_t ci) -> void {
        if (ci == degs.size()) {
            Graph g(n);
            for (auto [a, b] : gp.edges()) g.add_edge(a, b);
            for (int v : chosen) g.add_edge(v, n - 1);
            require(g.degree_sequence() == d, "vertex add expansion degree mismatch");
            insert_graph(fam, g);
            return;
        }
        const std::vector<int>& members = classes[degs[ci]];
        int x = take[ci];
        std::vector<int> idx(x);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            for (int t : idx) chosen.push_back(members[t]);
            self(self, ci + 1);
            chosen.resize(chosen.size() - x);
            int j = x - 1;
            while (j >= 0 && idx[j] == (int)members.size() - x + j) --j;
            if (j < 0) break;
            ++idx[j];
            for (int t = j + 1; t < x; ++t) idx[t] = idx[t - 1] + 1;
        }
    };
    rec(rec, 0);
}

}  // namespace

std::vector<std::vector<int>> sink_sequences(int N, long M) {
    require(N >= 0 && M >= 0 && M <= (long)N * (N - 1) / 2,
            "edge count out of range");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(N);
    long target = 2 * M;
    auto rec = [&](auto&& self, int pos, long sum) -> void {
        if (pos == N) {
            if (sum == target && is_graphical(cur)) out.push_back(cur);
            return;
        }
        int hi = pos > 0 ? cur[pos - 1] : N - 1;
        for (int v = hi; v >= 0; --v) {
            long s = sum + v;
            if (s > target) continue;
            if (s + (long)(N - 1 - pos) * v < target) break;
            cur[pos] = v;
            self(self, pos + 1, s);
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

DegSeqDag build_dag(const std::vector<std::vector<int>>& sinks) {
    // First pass: discover all sequences and their in-neighbour lists.
    std::map<std::vector<int>, std::vector<std::pair<std::vector<int>, char>>>
        preds;
    std::vector<std::vector<int>> stack(sinks.begin(), sinks.end());
    std::set<std::vector<int>> seen(sinks.begin(), sinks.end());
    while (!stack.empty()) {
        std::vector<int> d = stack.back();
        stack.pop_back();
        char rule = rule_for(d);
        std::vector<std::vector<int>> in;
        if (rule == 'b') {
            in.push_back(complement_seq(d));
        } else if (rule == 'c') {
            in = leaf_batch_preds(d);
        } else if (rule == 'd') {
            in = vertex_add_preds(d);
        }
        auto& lst = preds[d];
        for (auto& p : in) {
            lst.emplace_back(p, rule);
            if (seen.insert(p).second) stack.push_back(p);
        }
    }

    // Second pass: deterministic topological order. Among ready nodes the
    // shortest sequence goes first, ties broken lexicographically.
    std::map<std::vector<int>, int> pending;
    std::map<std::vector<int>, std::vector<std::vector<int>>> succs;
    for (auto& [d, lst] : preds) {
        pending[d] = (int)lst.size();
        for (auto& [p, rule] : lst) succs[p].push_back(d);
    }
    auto cmp = [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a > b;
    };
    std::priority_queue<std::vector<int>, std::vector<std::vector<int>>,
                        decltype(cmp)>
        ready(cmp);
    for (auto& [d, cnt] : pending)
        if (cnt == 0) ready.push(d);

    DegSeqDag dag;
    std::map<std::vector<int>, int> id;
    while (!ready.empty()) {
        std::vector<int> d = ready.top();
        ready.pop();
        int me = (int)dag.nodes.size();
        id[d] = me;
        DegSeqNode node;
        node.seq = d;
        for (auto& [p, rule] : preds[d])
            node.in_edges.push_back(DegSeqEdge{id.at(p), rule});
        dag.nodes.push_back(std::move(node));
        for (auto& s : succs[d])
            if (--pending[s] == 0) ready.push(s);
    }
    require(dag.nodes.size() == preds.size(), "degree sequence digraph has a cycle");

    std::set<std::vector<int>> sinkset(sinks.begin(), sinks.end());
    for (int i = 0; i < (int)dag.nodes.size(); ++i)
        if (sinkset.count(dag.nodes[i].seq)) dag.sinks.push_back(i);
    return dag;
}

std::map<std::vector<int>, std::vector<std::string>> expand_families(
    const DegSeqDag& dag) {
    std::vector<FamilySet> fams(dag.nodes.size());
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
        const DegSeqNode& node = dag.nodes[i];
        if (node.seq.empty()) {
            fams[i].insert(graph6_encode(Graph(0)));
            continue;
        }
        for (const DegSeqEdge& e : node.in_edges) {
            for (const std::string& s : fams[e.pred]) {
                Graph gp = graph6_decode(s);
                if (e.rule == 'b') {
                    insert_graph(fams[i], gp.complement());
                } else if (e.rule == 'c') {
                    expand_leaf_batch(gp, node.seq, fams[i]);
                } else {
                    expand_vertex_add(gp, node.seq, fams[i]);
                }
            }
        }
    }
    std::map<std::vector<int>, std::vector<std::string>> out;
    for (int i : dag.sinks)
        out[dag.nodes[i].seq] =
            std::vector<std::string>(fams[i].begin(), fams[i].end());
    return out;
}

std::vector<Graph> enumerate_graphs(int N, long M) {
    auto fams = expand_families(build_dag(sink_sequences(N, M)));
    std::set<std::string> all;
    for (auto& [seq, fam] : fams) all.insert(fam.begin(), fam.end());
    std::vector<Graph> out;
    out.reserve(all.size());
    for (const std::string& s : all) out.push_back(graph6_decode(s));
    return out;
}

}  // namespace tripack
