#pragma once

#include <string>
#include <vector>

#include "graph.hpp"

namespace tripack {

struct Canonical {
    Graph graph;            // the canonical representative
    std::vector<int> perm;  // perm[old] = new; relabel(input, perm) == graph
};

// Isomorphism-invariant representative: two graphs map to equal outputs
// exactly when they are isomorphic.
Canonical canonical_form(const Graph& g);

std::string canonical_g6(const Graph& g);

bool are_isomorphic(const Graph& a, const Graph& b);

std::vector<int> inverse_perm(const std::vector<int>& perm);

}  // namespace tripack
