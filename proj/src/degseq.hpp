#pragma once

#include <map>
#include <string>
#include <vector>

#include "graph.hpp"

namespace tripack {

struct DegSeqEdge {
    int pred;   // node id of the in-neighbour
    char rule;  // 'b' complement, 'c' leaf batch, 'd' vertex add
};

struct DegSeqNode {
    std::vector<int> seq;  // non-increasing
    std::vector<DegSeqEdge> in_edges;
};

struct DegSeqDag {
    std::vector<DegSeqNode> nodes;  // topologically ordered: preds come first
    std::vector<int> sinks;
};

// Non-increasing graphical sequences of length N summing to 2M.
std::vector<std::vector<int>> sink_sequences(int N, long M);

// Closure of the sinks under the in-neighbour rules, down to the empty
// sequence. Node order is a topological sort with (length, lexicographic)
// tie-breaking, so runs are reproducible.
DegSeqDag build_dag(const std::vector<std::vector<int>>& sinks);

// All isomorphism classes per sink sequence, as sorted canonical graph6.
std::map<std::vector<int>, std::vector<std::string>> expand_families(
    const DegSeqDag& dag);

// Every isomorphism class of N-vertex M-edge graphs exactly once, sorted by
// canonical graph6 string.
std::vector<Graph> enumerate_graphs(int N, long M);

}  // namespace tripack
