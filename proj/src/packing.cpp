#include "packing.hpp"

#include <json.hpp>

#include "canonical.hpp"
#include "lp.hpp"

namespace tripack {

namespace {

std::string pair_name(int u, int v) {
    return std::to_string(u) + "-" + std::to_string(v);
}

std::string triangle_name(const Triangle& t) {
    return std::to_string(t.a) + "-" + std::to_string(t.b) + "-" + std::to_string(t.c);
}

void validate_problem(const PackingProblem& p) {
    const Graph& g = p.wg.graph;
    require((size_t)g.pair_count() == p.wg.phi.size(),
            "capacity table size does not match the graph");
    for (int v = 0; v < g.order(); ++v)
        for (int u = 0; u < v; ++u) {
            const Rat& f = p.wg.phi[pair_index(u, v)];
            if (g.has_edge(u, v))
                require(f >= 0 && f <= 1, "capacity out of [0,1] on edge " + pair_name(u, v));
            else
                require(f == 0, "capacity on non-edge " + pair_name(u, v));
        }
    require(p.beta >= rat_of(1, 3) && p.beta <= 1, "triangle cap must lie in [1/3, 1]");
}

}  // namespace

WeightedGraph::WeightedGraph(const Graph& g, const Rat& value) : graph(g) {
    phi.assign(g.pair_count(), Rat(0));
    for (auto [u, v] : g.edges()) phi[pair_index(u, v)] = value;
}

void WeightedGraph::set_weight(int u, int v, const Rat& value) {
    require(graph.has_edge(u, v), "no edge " + pair_name(u, v) + " to weight");
    require(value >= 0 && value <= 1, "edge weight out of [0,1]");
    phi[pair_index(u, v)] = value;
}

Rat WeightedGraph::total_weight() const {
    Rat s(0);
    for (auto [u, v] : graph.edges()) s += phi[pair_index(u, v)];
    return s;
}

Rat WeightedGraph::missing_weight() const {
    return Rat(graph.pair_count()) - total_weight();
}

void FractionalPacking::add(const Triangle& t, const Rat& w) {
    if (w == 0) return;
    auto [it, fresh] = weights.try_emplace(t, w);
    if (!fresh) {
        it->second += w;
        if (it->second == 0) weights.erase(it);
    }
}

Rat FractionalPacking::weight(const Triangle& t) const {
    auto it = weights.find(t);
    return it == weights.end() ? Rat(0) : it->second;
}

std::vector<Rat> edge_coverage(int n, const FractionalPacking& w) {
    std::vector<Rat> cov((size_t)n * (n - 1) / 2, Rat(0));
    for (const auto& [t, wt] : w.weights) {
        if (!(0 <= t.a && t.a < t.b && t.b < t.c && t.c < n)) continue;
        cov[pair_index(t.a, t.b)] += wt;
        cov[pair_index(t.a, t.c)] += wt;
        cov[pair_index(t.b, t.c)] += wt;
    }
    return cov;
}

PackingReport verify_packing(const PackingProblem& p, const FractionalPacking& w) {
    validate_problem(p);
    const Graph& g = p.wg.graph;
    int n = g.order();

    PackingReport rep;
    rep.feasible = true;
    rep.uncovered = Rat(0);
    rep.max_weight = Rat(0);
    std::vector<Rat> cov(g.pair_count(), Rat(0));

    for (const auto& [t, wt] : w.weights) {
        if (!(0 <= t.a && t.a < t.b && t.b < t.c && t.c < n)) {
            rep.problems.push_back("not a vertex triple of the graph: " + triangle_name(t));
            rep.feasible = false;
            continue;
        }
        if (!g.has_edge(t.a, t.b) || !g.has_edge(t.a, t.c) || !g.has_edge(t.b, t.c)) {
            rep.problems.push_back("not a triangle of the graph: " + triangle_name(t));
            rep.feasible = false;
            continue;
        }
        if (wt < 0) {
            rep.problems.push_back("negative weight on " + triangle_name(t));
            rep.feasible = false;
        }
        if (wt > p.beta) {
            rep.problems.push_back("weight " + rat_str(wt) + " on " + triangle_name(t) +
                                   " exceeds the cap " + rat_str(p.beta));
            rep.feasible = false;
        }
        if (wt > rep.max_weight) rep.max_weight = wt;
        cov[pair_index(t.a, t.b)] += wt;
        cov[pair_index(t.a, t.c)] += wt;
        cov[pair_index(t.b, t.c)] += wt;
    }

    for (auto [u, v] : g.edges()) {
        const Rat& f = p.wg.phi[pair_index(u, v)];
        const Rat& c = cov[pair_index(u, v)];
        if (c > f) {
            rep.problems.push_back("edge " + pair_name(u, v) + " carries " + rat_str(c) +
                                   " over its capacity " + rat_str(f));
            rep.feasible = false;
        }
        rep.uncovered += f - c;
    }

    rep.meets_target = rep.uncovered <= p.target_uncovered;
    rep.pass = rep.feasible && rep.meets_target;
    return rep;
}

namespace {

// One variable per triangle in [0, beta]; one row per edge that lies in a
// triangle. Covering an edge by weight x removes 3x from the uncovered
// total, so minimizing -3 sum(x) minimizes the uncovered weight.
LinearProgram packing_lp(const PackingProblem& p, const std::vector<Triangle>& tris) {
    const Graph& g = p.wg.graph;
    std::vector<int> row_of(g.pair_count(), -1);
    int num_rows = 0;
    for (const Triangle& t : tris)
        for (int e : {pair_index(t.a, t.b), pair_index(t.a, t.c), pair_index(t.b, t.c)})
            if (row_of[e] < 0) row_of[e] = num_rows++;

    LinearProgram lp = LinearProgram::with_vars((int)tris.size());
    for (int i = 0; i < lp.num_vars; ++i) {
        lp.objective[i] = Rat(-3);
        lp.lower[i] = Rat(0);
        lp.upper[i] = p.beta;
    }
    std::vector<std::vector<Rat>> coeffs(num_rows, std::vector<Rat>(lp.num_vars, Rat(0)));
    for (int i = 0; i < (int)tris.size(); ++i) {
        const Triangle& t = tris[i];
        for (int e : {pair_index(t.a, t.b), pair_index(t.a, t.c), pair_index(t.b, t.c)})
            coeffs[row_of[e]][i] = 1;
    }
    std::vector<Rat> rhs(num_rows);
    for (int v = 0; v < g.order(); ++v)
        for (int u = 0; u < v; ++u)
            if (row_of[pair_index(u, v)] >= 0) rhs[row_of[pair_index(u, v)]] = p.wg.phi[pair_index(u, v)];
    for (int r = 0; r < num_rows; ++r) lp.add_row(std::move(coeffs[r]), Rel::LE, rhs[r]);
    return lp;
}

}  // namespace

std::pair<Rat, FractionalPacking> min_uncovered(const PackingProblem& p) {
    validate_problem(p);
    const Graph& g = p.wg.graph;
    Rat total = p.wg.total_weight();
    std::vector<Triangle> tris = triangles(g);
    if (tris.empty()) return {total, FractionalPacking{}};

    LinearProgram lp = packing_lp(p, tris);
    LpSolution sol = solve_lp(lp, SolveMode::Auto);
    require(sol.status == LpStatus::Optimal,
            "internal error: the packing program is feasible and bounded by construction");

    Rat best = total + sol.objective_value;
    FractionalPacking w;
    for (int i = 0; i < lp.num_vars; ++i) w.add(tris[i], sol.primal[i]);

    PackingProblem check = p;
    check.target_uncovered = best;
    PackingReport rep = verify_packing(check, w);
    require(rep.pass && rep.uncovered == best,
            "internal error: optimal packing failed exact re-verification");
    return {best, w};
}

BoundedPacking find_packing_within(const PackingProblem& p) {
    validate_problem(p);
    const Graph& g = p.wg.graph;
    Rat total = p.wg.total_weight();
    std::vector<Triangle> tris = triangles(g);

    BoundedPacking out;
    if (tris.empty()) {
        out.ok = total <= p.target_uncovered;
        out.uncovered = total;
        return out;
    }

    LinearProgram lp = packing_lp(p, tris);
    LpSolution sol = solve_lp_bounded(lp, p.target_uncovered - total, SolveMode::Auto);
    require(sol.status == LpStatus::Optimal,
            "internal error: the packing program is feasible and bounded by construction");

    out.uncovered = total + sol.objective_value;
    out.ok = out.uncovered <= p.target_uncovered;
    if (!out.ok) return out;
    for (int i = 0; i < lp.num_vars; ++i) out.packing.add(tris[i], sol.primal[i]);

    PackingReport rep = verify_packing(p, out.packing);
    require(rep.pass && rep.uncovered == out.uncovered,
            "internal error: bounded packing failed exact re-verification");
    return out;
}

FractionalPacking symmetric_complete_packing(int n, const Rat& beta) {
    require(n >= 3, "symmetric packing needs at least 3 vertices");
    Rat w = rat_of(1, n - 2);
    require(w <= beta,
            "1/(n-2) exceeds the triangle cap " + rat_str(beta) + " at n = " + std::to_string(n));
    FractionalPacking out;
    for (const Triangle& t : triangles(Graph::complete(n))) out.add(t, w);
    return out;
}

FractionalPacking combine(const std::vector<std::pair<Rat, FractionalPacking>>& parts) {
    FractionalPacking out;
    for (const auto& [coef, pk] : parts) {
        require(coef >= 0, "combination coefficients must be nonnegative");
        if (coef == 0) continue;
        for (const auto& [t, wt] : pk.weights) out.add(t, coef * wt);
    }
    return out;
}

PackingCertificate make_certificate(const Graph& g, const Rat& beta,
                                    const FractionalPacking& w, std::string note) {
    PackingProblem p(g, beta, Rat(0));
    PackingReport rep = verify_packing(p, w);
    require(rep.feasible, "refusing to certify an infeasible packing");

    Canonical canon = canonical_form(g);
    PackingCertificate c;
    c.graph6 = graph6_encode(canon.graph);
    c.beta = beta;
    c.uncovered = rep.uncovered;
    c.note = std::move(note);
    for (const auto& [t, wt] : w.weights)
        c.packing.add(make_triangle(canon.perm[t.a], canon.perm[t.b], canon.perm[t.c]), wt);
    return c;
}

std::string certificate_to_json(const PackingCertificate& c) {
    nlohmann::ordered_json j;
    j["graph"] = c.graph6;
    j["beta"] = rat_str(c.beta);
    j["uncovered"] = rat_str(c.uncovered);
    auto tris = nlohmann::ordered_json::array();
    for (const auto& [t, wt] : c.packing.weights)
        tris.push_back({t.a, t.b, t.c, rat_str(wt)});
    j["triangles"] = std::move(tris);
    if (!c.note.empty()) j["note"] = c.note;
    return j.dump();
}

PackingCertificate certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("certificate is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "certificate must be a JSON object");
    for (const char* key : {"graph", "beta", "uncovered", "triangles"})
        require(j.contains(key), std::string("certificate lacks \"") + key + "\"");
    require(j["graph"].is_string(), "\"graph\" must be a graph6 string");
    require(j["beta"].is_string() && j["uncovered"].is_string(),
            "\"beta\" and \"uncovered\" must be rational strings");
    require(j["triangles"].is_array(), "\"triangles\" must be an array");

    PackingCertificate c;
    c.graph6 = j["graph"].get<std::string>();
    c.beta = rat_parse(j["beta"].get<std::string>());
    c.uncovered = rat_parse(j["uncovered"].get<std::string>());
    for (const auto& entry : j["triangles"]) {
        require(entry.is_array() && entry.size() == 4 && entry[0].is_number_integer() &&
                    entry[1].is_number_integer() && entry[2].is_number_integer() &&
                    entry[3].is_string(),
                "triangle entries must be [i, j, k, \"p/q\"]");
        int a = entry[0].get<int>(), b = entry[1].get<int>(), v = entry[2].get<int>();
        for (int x : {a, b, v})
            require(0 <= x && x < kMaxVertices, "triangle vertex out of range");
        c.packing.add(make_triangle(a, b, v), rat_parse(entry[3].get<std::string>()));
    }
    if (j.contains("note")) {
        require(j["note"].is_string(), "\"note\" must be a string");
        c.note = j["note"].get<std::string>();
    }
    return c;
}

PackingReport verify_certificate(const PackingCertificate& c) {
    Graph g = graph6_decode(c.graph6);
    PackingProblem p(g, c.beta, c.uncovered);
    PackingReport rep = verify_packing(p, c.packing);
    if (rep.uncovered != c.uncovered)
        rep.problems.push_back("uncovered weight is " + rat_str(rep.uncovered) +
                               " but the certificate claims " + rat_str(c.uncovered));
    rep.pass = rep.feasible && rep.uncovered == c.uncovered;
    return rep;
}

}  // namespace tripack
