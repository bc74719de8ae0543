#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "packing.hpp"
#include "rat.hpp"

namespace tripack {

// The four construction mechanisms, tried in this order:
//   VertexFan        some u has nondegree > (n+a)/3: fan triangles around u
//                    on a near-Hamilton order of its neighbourhood, then halve
//                    the rest and recurse on the two halves.
//   VertexAverage    at most 3 vertices are clear of every missing pair:
//                    average packings of vertex-deleted subgraphs, pairing the
//                    clear vertices off through two edge-disjoint matchings.
//   SymmetricFamily  slack is spread with a budget-routing step between
//                    symmetric packings of the vertex-deleted subgraphs.
//   FilledPair       like SymmetricFamily with a = 4, after filling one
//                    missing pair so the deleted-vertex subproblems stay
//                    within budget.
enum class PackCase { VertexFan, VertexAverage, SymmetricFamily, FilledPair };

const char* pack_case_name(PackCase c);

// Vertex split driving the dispatch: us = vertices on at least one missing
// pair, zs = the rest (adjacent to everything, so mutually interchangeable).
struct CaseContext {
    Graph g;
    int a = 0;
    std::vector<int> us;
    std::vector<int> zs;
    int fan_vertex = -1;  // witness for VertexFan, -1 when none exists
};

// Requires missing(g) == n-4+a exactly (the dispatch thresholds assume it).
CaseContext make_context(const Graph& g, int a);

PackCase dispatch_case(const CaseContext& ctx);

// Verified packing of g with uncovered weight at most a at cap 1/2.
// Accepts n >= 11 with 0 <= a <= 4 and at most n-4+a missing edges, or
// 7 <= n <= 10 with a = 0 and at most n-4 missing edges. The result is
// exactly re-verified against those bounds before it is returned.
FractionalPacking construct_packing(const Graph& g, int a);

struct ConstructResult {
    FractionalPacking packing;
    std::vector<std::string> trace;  // one line per recursion node, visit order
};

ConstructResult construct_packing_traced(const Graph& g, int a);

// Per-class slack profile of a packing family member, scaled so the classes
// sum to one: gamma on pairs inside zs, alpha[u] on pairs (u, z), beta on
// pairs inside us (indexed by pair_index, zero elsewhere).
struct SymmetricProfile {
    Rat gamma;
    std::vector<Rat> alpha;  // by vertex label of the parent graph
    std::vector<Rat> beta;   // by pair_index of the parent graph
    Rat alpha_total;         // (|zs|-1) * sum of alpha
    Rat beta_total;          // sum of beta
};

// One representative of the family used by SymmetricFamily: a packing of
// g minus zs[0] (kept in g's labels) with uncovered weight exactly a+1,
// constant on the orbits of zs \ {zs[0]}, plus its scaled slack profile.
// Deleting any other z in zs gives an isomorphic subgraph, so the member for
// z is the representative with zs[0] and z swapped.
struct SymmetricFamily {
    int z0 = -1;
    FractionalPacking omega0;
    SymmetricProfile profile;
};

SymmetricFamily make_symmetric_family(const CaseContext& ctx);

// Average of w over all permutations of zs, computed per orbit class rather
// than by enumerating the permutations.
FractionalPacking symmetrize_over(const FractionalPacking& w, const std::vector<int>& zs);

// Budget routing on the bipartite gadget behind SymmetricFamily/FilledPair:
// supply i must ship exactly tau_u0[i] to receivers j != i, the pooled
// supply ships exactly tau_pool anywhere, and receiver j absorbs at most
// tau_u1[j] in total.
struct AuxMatchingInstance {
    std::vector<Rat> tau_u0, tau_u1;  // parallel, one entry per participant
    Rat tau_pool;
};

struct AuxMatching {
    std::vector<std::vector<Rat>> nu;  // nu[j][i]: mass shipped from i to j
    std::vector<Rat> nu_pool;          // nu_pool[j]: pooled mass shipped to j
};

// Exact LP feasibility; when no routing exists the error names the violated
// counting bound.
AuxMatching solve_aux_matching(const AuxMatchingInstance& inst);

// Packing of the complete graph K_n (n >= 7) whose coverage equals the given
// capacities edge for edge, provided the total capacity is at least
// C(n,2) - (n-4). Capacities must be rational with a common denominator small
// enough to enumerate (at most 10^6).
FractionalPacking corollary_exact_packing(const WeightedGraph& wk);

}  // namespace tripack
