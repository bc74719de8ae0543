#include <map>
#include <set>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "degseq.hpp"
#include "doctest.h"
#include "graph.hpp"
#include "test_util.hpp"

using namespace tripack;

namespace {

// Isomorph-free census by edge count, brute-forced over all labeled graphs.
std::map<long, std::set<std::string>> brute_census(int n) {
    std::map<long, std::set<std::string>> out;
    int pairs = n * (n - 1) / 2;
    for (uint64_t mask = 0; mask < (uint64_t(1) << pairs); ++mask) {
        Graph g = testutil::graph_from_mask(n, mask);
        out[g.edge_count()].insert(canonical_g6(g));
    }
    return out;
}

}  // namespace

TEST_CASE("sink sequences") {
    CHECK(sink_sequences(4, 6) ==
          std::vector<std::vector<int>>{{3, 3, 3, 3}});
    CHECK(sink_sequences(4, 5) ==
          std::vector<std::vector<int>>{{3, 3, 2, 2}});
    CHECK(sink_sequences(3, 3) == std::vector<std::vector<int>>{{2, 2, 2}});
    CHECK(sink_sequences(3, 0) == std::vector<std::vector<int>>{{0, 0, 0}});
    CHECK(sink_sequences(0, 0) == std::vector<std::vector<int>>{{}});
    for (auto& d : sink_sequences(9, 17)) {
        CHECK(is_graphical(d));
        long s = 0;
        for (int x : d) s += x;
        CHECK(s == 34);
    }
}

TEST_CASE("degree sequence digraph structure") {
    // (2,2,2) complements to (0,0,0), which strips to the empty sequence.
    DegSeqDag dag = build_dag({{2, 2, 2}});
    REQUIRE(dag.nodes.size() == 3);
    CHECK(dag.nodes[0].seq.empty());
    CHECK(dag.nodes[0].in_edges.empty());
    CHECK(dag.nodes[1].seq == std::vector<int>{0, 0, 0});
    REQUIRE(dag.nodes[1].in_edges.size() == 1);
    CHECK(dag.nodes[1].in_edges[0].pred == 0);
    CHECK(dag.nodes[1].in_edges[0].rule == 'c');
    CHECK(dag.nodes[2].seq == std::vector<int>{2, 2, 2});
    REQUIRE(dag.nodes[2].in_edges.size() == 1);
    CHECK(dag.nodes[2].in_edges[0].pred == 1);
    CHECK(dag.nodes[2].in_edges[0].rule == 'b');
    CHECK(dag.sinks == std::vector<int>{2});

    CHECK(build_dag({{}}).nodes.size() == 1);

    for (auto [N, M] : std::vector<std::pair<int, long>>{{7, 18}, {5, 8}, {8, 20}}) {
        DegSeqDag d = build_dag(sink_sequences(N, M));
        int sources = 0;
        for (size_t i = 0; i < d.nodes.size(); ++i) {
            const DegSeqNode& node = d.nodes[i];
            if (node.in_edges.empty()) {
                ++sources;
                CHECK(node.seq.empty());
            }
            CHECK(is_graphical(node.seq));
            for (const DegSeqEdge& e : node.in_edges) {
                CHECK(e.pred < (int)i);  // topological
                CHECK(e.rule == node.in_edges[0].rule);
            }
        }
        CHECK(sources == 1);
    }
}

TEST_CASE("family expansion small examples") {
    auto fams = expand_families(build_dag(sink_sequences(4, 6)));
    REQUIRE(fams.size() == 1);
    auto& k4 = fams.begin()->second;
    REQUIRE(k4.size() == 1);
    CHECK(graph6_decode(k4[0]) == canonical_form(Graph::complete(4)).graph);

    // 5 vertices, 8 edges: complements are two disjoint edges or a 2-edge path.
    size_t total = 0;
    for (auto& [seq, fam] : expand_families(build_dag(sink_sequences(5, 8)))) {
        for (auto& s : fam) {
            Graph g = graph6_decode(s);
            CHECK(g.order() == 5);
            CHECK(g.edge_count() == 8);
            CHECK(g.degree_sequence() == seq);
        }
        total += fam.size();
    }
    CHECK(total == 2);

    // 3-edge graphs up to isomorphism: triangle, 3-path, star, path plus
    // disjoint edge, perfect matching on six vertices.
    CHECK(enumerate_graphs(7, 18).size() == 5);
}

TEST_CASE("enumeration matches brute-force census up to six vertices") {
    for (int n = 2; n <= 6; ++n) {
        auto census = brute_census(n);
        for (long m = 0; m <= n * (n - 1) / 2; ++m) {
            auto got = enumerate_graphs(n, m);
            std::set<std::string> got_set;
            for (const Graph& g : got) {
                CHECK(g.order() == n);
                CHECK(g.edge_count() == m);
                got_set.insert(graph6_encode(g));
            }
            CHECK(got_set.size() == got.size());  // pairwise non-isomorphic
            CHECK(got_set == census[m]);
        }
    }
}

TEST_CASE("dense enumeration agrees with its complement side") {
    auto dense = enumerate_graphs(11, 48);
    auto sparse = enumerate_graphs(11, 7);
    CHECK(dense.size() == sparse.size());
    std::set<std::string> flipped;
    for (const Graph& g : dense) flipped.insert(canonical_g6(g.complement()));
    std::set<std::string> sparse_set;
    for (const Graph& g : sparse) sparse_set.insert(graph6_encode(g));
    CHECK(flipped == sparse_set);
}
