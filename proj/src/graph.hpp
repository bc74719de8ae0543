#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rat.hpp"

namespace tripack {

constexpr int kMaxVertices = 64;

// Simple undirected graph on at most 64 vertices, one adjacency word per
// vertex. Vertices are 0-based everywhere in the library; the CLI layer
// translates any 1-based user input.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n);
    static Graph complete(int n);

    int order() const { return n_; }
    bool has_edge(int u, int v) const {
        return (rows_[u] >> v) & 1u;
    }
    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    uint64_t row(int u) const { return rows_[u]; }

    int degree(int u) const;
    int nondegree(int u) const { return n_ - 1 - degree(u); }
    long pair_count() const { return (long)n_ * (n_ - 1) / 2; }
    long edge_count() const;
    long missing_count() const { return pair_count() - edge_count(); }
    bool is_complete() const { return missing_count() == 0; }

    Graph complement() const;
    std::vector<std::pair<int, int>> edges() const;
    std::vector<std::pair<int, int>> non_edges() const;
    std::vector<int> degree_sequence() const;  // non-increasing

    bool operator==(const Graph&) const = default;
    auto operator<=>(const Graph&) const = default;

  private:
    int n_ = 0;
    std::vector<uint64_t> rows_;
    void check_pair(int u, int v) const;
};

struct Triangle {
    int a, b, c;  // a < b < c
    auto operator<=>(const Triangle&) const = default;
};

Triangle make_triangle(int x, int y, int z);
std::vector<Triangle> triangles(const Graph& g);

// Column-major upper-triangle index of the pair {u,v}: the order the
// graph6 payload uses ((0,1),(0,2),(1,2),(0,3),...).
inline int pair_index(int u, int v) {
    if (u > v) std::swap(u, v);
    return v * (v - 1) / 2 + u;
}

// Erdos-Gallai test. d must be non-increasing with non-negative entries.
bool is_graphical(const std::vector<int>& d);

std::string graph6_encode(const Graph& g);
Graph graph6_decode(const std::string& s);

// Subgraph induced by the listed old labels; new vertex i is keep[i].
Graph induced(const Graph& g, const std::vector<int>& keep);

// All labels except v, in order.
std::vector<int> labels_without(int n, int v);

Graph relabel(const Graph& g, const std::vector<int>& perm);  // perm[old] = new

}  // namespace tripack
