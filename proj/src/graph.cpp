#include "graph.hpp"

#include <algorithm>
#include <bit>

namespace tripack {

Graph::Graph(int n) : n_(n), rows_(n, 0) {
    require(n >= 0 && n <= kMaxVertices,
            "graph order out of range: " + std::to_string(n));
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) g.add_edge(u, v);
    return g;
}

void Graph::check_pair(int u, int v) const {
    require(u >= 0 && u < n_ && v >= 0 && v < n_ && u != v,
            "bad vertex pair (" + std::to_string(u) + "," + std::to_string(v) +
                ") in graph of order " + std::to_string(n_));
}

void Graph::add_edge(int u, int v) {
    check_pair(u, v);
    rows_[u] |= uint64_t(1) << v;
    rows_[v] |= uint64_t(1) << u;
}

void Graph::remove_edge(int u, int v) {
    check_pair(u, v);
    rows_[u] &= ~(uint64_t(1) << v);
    rows_[v] &= ~(uint64_t(1) << u);
}

int Graph::degree(int u) const { return std::popcount(rows_[u]); }

long Graph::edge_count() const {
    long twice = 0;
    for (int u = 0; u < n_; ++u) twice += degree(u);
    return twice / 2;
}

Graph Graph::complement() const {
    Graph g(n_);
    uint64_t all = (n_ == 64) ? ~uint64_t(0) : ((uint64_t(1) << n_) - 1);
    for (int u = 0; u < n_; ++u)
        g.rows_[u] = all & ~rows_[u] & ~(uint64_t(1) << u);
    return g;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
}

std::vector<std::pair<int, int>> Graph::non_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (!has_edge(u, v)) out.emplace_back(u, v);
    return out;
}

std::vector<int> Graph::degree_sequence() const {
    std::vector<int> d(n_);
    for (int u = 0; u < n_; ++u) d[u] = degree(u);
    std::sort(d.rbegin(), d.rend());
    return d;
}

Triangle make_triangle(int x, int y, int z) {
    int a = std::min({x, y, z});
    int c = std::max({x, y, z});
    int b = x + y + z - a - c;
    require(a < b && b < c, "triangle vertices not distinct");
    return Triangle{a, b, c};
}

std::vector<Triangle> triangles(const Graph& g) {
    std::vector<Triangle> out;
    int n = g.order();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (!g.has_edge(a, b)) continue;
            uint64_t common = g.row(a) & g.row(b);
            common >>= b + 1;
            int c = b + 1;
            while (common) {
                int step = std::countr_zero(common);
                c += step;
                out.push_back(Triangle{a, b, c});
                common >>= step + 1;
                c += 1;
            }
        }
    }
    return out;
}

bool is_graphical(const std::vector<int>& d) {
    int n = (int)d.size();
    long sum = 0;
    for (int i = 0; i < n; ++i) {
        require(d[i] >= 0, "degree sequence has a negative entry");
        require(i == 0 || d[i] <= d[i - 1], "degree sequence not non-increasing");
        sum += d[i];
    }
    if (n > 0 && d[0] >= n) return false;
    if (sum % 2 != 0) return false;
    long left = 0;
    for (int k = 1; k <= n; ++k) {
        left += d[k - 1];
        long right = (long)k * (k - 1);
        for (int i = k; i < n; ++i) right += std::min(d[i], k);
        if (left > right) return false;
    }
    return true;
}

namespace {

void append_header(std::string& out, int n) {
    if (n <= 62) {
        out.push_back(char(n + 63));
    } else {
        out.push_back('~');
        out.push_back(char(((n >> 12) & 63) + 63));
        out.push_back(char(((n >> 6) & 63) + 63));
        out.push_back(char((n & 63) + 63));
    }
}

}  // namespace

std::string graph6_encode(const Graph& g) {
    int n = g.order();
    std::string out;
    append_header(out, n);
    int acc = 0, nbits = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            acc = (acc << 1) | (g.has_edge(u, v) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(char(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(char((acc << (6 - nbits)) + 63));
    return out;
}

Graph graph6_decode(const std::string& s) {
    auto bad = [&](size_t off, const std::string& why) {
        fail("graph6 parse error at byte " + std::to_string(off) + ": " + why);
    };
    if (s.empty()) bad(0, "empty string");
    size_t pos = 0;
    auto next6 = [&](const char* what) -> int {
        if (pos >= s.size()) bad(pos, std::string("truncated ") + what);
        unsigned char c = (unsigned char)s[pos];
        if (c < 63 || c > 126) bad(pos, std::string("byte out of range in ") + what);
        ++pos;
        return c - 63;
    };
    int n;
    if ((unsigned char)s[0] == '~') {
        ++pos;
        if (pos + 3 > s.size()) bad(s.size(), "truncated long-form header");
        long big = 0;
        for (int i = 0; i < 3; ++i) big = (big << 6) | next6("header");
        if (big > kMaxVertices)
            bad(1, "graph order " + std::to_string(big) + " exceeds 64");
        n = (int)big;
    } else {
        n = next6("header");
    }
    Graph g(n);
    long nbits = (long)n * (n - 1) / 2;
    size_t need = pos + (size_t)((nbits + 5) / 6);
    if (s.size() < need) bad(s.size(), "truncated adjacency payload");
    if (s.size() > need) bad(need, "trailing bytes after adjacency payload");
    int acc = 0, have = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            if (have == 0) {
                acc = next6("payload");
                have = 6;
            }
            if ((acc >> (have - 1)) & 1) g.add_edge(u, v);
            --have;
        }
    }
    return g;
}

Graph induced(const Graph& g, const std::vector<int>& keep) {
    int k = (int)keep.size();
    Graph h(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (g.has_edge(keep[i], keep[j])) h.add_edge(i, j);
    return h;
}

std::vector<int> labels_without(int n, int v) {
    std::vector<int> out;
    out.reserve(n - 1);
    for (int u = 0; u < n; ++u)
        if (u != v) out.push_back(u);
    return out;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    int n = g.order();
    require((int)perm.size() == n, "relabel permutation has wrong length");
    Graph h(n);
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    return h;
}

}  // namespace tripack
