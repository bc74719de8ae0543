#pragma once

#include <utility>
#include <vector>

#include "graph.hpp"

namespace tripack {

// Hamilton cycle of a dense graph: with at most n-3 missing edges, any two
// non-adjacent vertices have degree sum >= n, so rotation repairs always
// terminate. Returns the cyclic vertex order.
std::vector<int> hamilton_cycle(const Graph& g);

// Cyclic order in which all but `defects` consecutive pairs are edges, with
// defects <= a. Needs at most n-3+a missing edges, 0 <= a <= 4. Extra missing
// edges beyond n-3 are bridged by phantom edges between the non-adjacent
// pairs with the largest combined non-degree. Two adjacent vertices count as
// a cycle of length two with one missing leg.
struct NearHamilton {
    std::vector<int> order;
    int defects = 0;
};
NearHamilton near_hamilton_order(const Graph& g, int a);

}  // namespace tripack
