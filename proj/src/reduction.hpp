#pragma once

#include <functional>
#include <vector>

#include "graph.hpp"
#include "packing.hpp"
#include "rat.hpp"

namespace tripack {

// Membership lists assigning each index i to exactly demands[i] of the r
// sets, every set no larger than m.
struct DemandPartition {
    int r = 0;
    long m = 0;
    std::vector<int> demands;
    std::vector<std::vector<int>> sets;  // sets[j] holds indices, |sets[j]| <= m
};

// Greedy peeling: sort demands descending, serve the top m positive entries,
// decrement, repeat r times. Needs every demand in {0..r} and total <= r*m.
DemandPartition partition_demands(const std::vector<int>& demands, int r, long m);

// Splits (G, phi) with phi*r integral on every edge and missing weight <= m
// into r graphs, each with at most m non-edges, such that every vertex pair
// is a non-edge of exactly (1 - phi)*r of them (phi = 0 on non-edges of G).
// Averaging packings of the parts with coefficient 1/r yields a packing of
// (G, phi) whose uncovered weight is the mean of the parts' uncovered weights.
std::vector<Graph> split_weighted(const WeightedGraph& wg, int r, long m);

// Produces a packing for any graph with exactly the missing-edge count the
// padding recursion was aimed at; its outputs must meet the caller's
// uncovered bound at cap 1/2.
using PackingSolver = std::function<FractionalPacking(const Graph&)>;

// Extends `solve` from graphs with exactly target_missing missing edges to
// graphs with fewer: repeatedly delete one edge of a fixed triangle, average
// the three child packings, and assign the remaining 1/3 to the triangle.
// The result is verified against (uncovered <= bound, cap 1/2) before it is
// returned. Isomorphic subproblems are solved once.
FractionalPacking pad_to_exact_missing(const Graph& g, long target_missing, const Rat& bound,
                                       const PackingSolver& solve);

}  // namespace tripack
