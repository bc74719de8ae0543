#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "rat.hpp"

namespace tripack {

// Graph with a rational capacity phi(e) in [0,1] on every edge and phi = 0 on
// non-edges, stored densely by pair_index.
struct WeightedGraph {
    Graph graph;
    std::vector<Rat> phi;

    WeightedGraph() = default;
    explicit WeightedGraph(const Graph& g) : WeightedGraph(g, Rat(1)) {}
    WeightedGraph(const Graph& g, const Rat& value);

    const Rat& weight(int u, int v) const { return phi[pair_index(u, v)]; }
    void set_weight(int u, int v, const Rat& value);
    Rat total_weight() const;
    // Sum over all vertex pairs of 1 - phi(e); at least the non-edge count.
    Rat missing_weight() const;
};

// Triangle packing instance: capacities phi, a per-triangle cap beta, and the
// uncovered weight the caller wants to stay below.
struct PackingProblem {
    WeightedGraph wg;
    Rat beta = rat_of(1, 2);
    Rat target_uncovered = Rat(0);

    PackingProblem() = default;
    explicit PackingProblem(const Graph& g) : wg(g) {}
    PackingProblem(const Graph& g, Rat beta_, Rat target)
        : wg(g), beta(std::move(beta_)), target_uncovered(std::move(target)) {}
    PackingProblem(WeightedGraph wg_, Rat beta_, Rat target)
        : wg(std::move(wg_)), beta(std::move(beta_)), target_uncovered(std::move(target)) {}
};

// Sparse triangle weights. Entries that cancel to zero are dropped, so the
// support is exactly the set of stored triangles.
struct FractionalPacking {
    std::map<Triangle, Rat> weights;

    void add(const Triangle& t, const Rat& w);
    Rat weight(const Triangle& t) const;
    bool empty() const { return weights.empty(); }
};

// Per-edge coverage sums indexed by pair_index. Vertices outside [0, n) or
// weight on a pair that is not an edge of g is reported by the caller;
// here every triple of distinct vertices below n is accumulated.
std::vector<Rat> edge_coverage(int n, const FractionalPacking& w);

struct PackingReport {
    bool feasible = false;      // support valid, weights >= 0, capacities and cap respected
    bool meets_target = false;  // uncovered <= target
    bool pass = false;          // feasible && meets_target
    Rat uncovered;
    Rat max_weight;
    std::vector<std::string> problems;
};

// Exact feasibility and uncovered-weight audit of w against p.
PackingReport verify_packing(const PackingProblem& p, const FractionalPacking& w);

// Exact minimum of sum_e (phi(e) - omega(e)) over packings with omega(T) in
// [0, beta], together with an optimal packing. Pure LP; the witness is
// re-verified before returning.
std::pair<Rat, FractionalPacking> min_uncovered(const PackingProblem& p);

struct BoundedPacking {
    bool ok = false;   // some packing meets p.target_uncovered
    Rat uncovered;     // achieved value when ok, else the exact minimum
    FractionalPacking packing;  // meaningful only when ok
};

// Cheaper than min_uncovered when any packing within the target will do: the
// search stops at the first certified hit. The witness is re-verified against
// the problem before returning.
BoundedPacking find_packing_within(const PackingProblem& p);

// omega(T) = 1/(n-2) on every triangle of K_n: a triangle decomposition.
// Needs 1/(n-2) <= beta, so n >= 4 at the default cap 1/2.
FractionalPacking symmetric_complete_packing(int n, const Rat& beta = rat_of(1, 2));

// Triangle-wise linear combination with nonnegative coefficients. Makes no
// feasibility claim of its own.
FractionalPacking combine(const std::vector<std::pair<Rat, FractionalPacking>>& parts);

// Self-contained claim "this packing of this graph has uncovered weight
// exactly `uncovered` under cap `beta`", with unit capacities.
struct PackingCertificate {
    std::string graph6;
    Rat beta;
    Rat uncovered;
    FractionalPacking packing;
    std::string note;  // optional provenance, empty = absent
};

// Builds a certificate from a verified packing of (g, phi = 1). The graph is
// stored in canonical form and the triangles are relabelled to match.
PackingCertificate make_certificate(const Graph& g, const Rat& beta,
                                    const FractionalPacking& w, std::string note = "");

// One-line JSON document; see certificate_from_json for the schema.
std::string certificate_to_json(const PackingCertificate& c);

// Parses {"graph": g6, "beta": "p/q", "uncovered": "p/q",
// "triangles": [[i,j,k,"p/q"],...]} plus an optional "note". Duplicate
// triangle entries accumulate. Malformed documents throw Error.
PackingCertificate certificate_from_json(const std::string& text);

// Re-verifies the certificate from scratch: feasibility at cap beta with unit
// capacities, and uncovered weight exactly equal to the claim.
PackingReport verify_certificate(const PackingCertificate& c);

}  // namespace tripack
