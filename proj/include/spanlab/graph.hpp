#ifndef SPANLAB_GRAPH_HPP
#define SPANLAB_GRAPH_HPP

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "spanlab/common.hpp"

namespace spanlab {

struct Edge {
    Vertex u = 0, v = 0;
    Weight w = 0;
};

inline u64 edge_key(Vertex a, Vertex b)
{
    if (a > b)
        std::swap(a, b);
    return ((u64)a << 32) | b;
}

struct Arc {
    Vertex to;
    Weight w;
    std::uint32_t edge; // index into the owning graph's edge list
};

// Undirected weighted graph, immutable after construction, adjacency in CSR.
class Graph {
public:
    Graph() = default;

    Graph(std::uint32_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
    {
        require(n_ <= kMaxVertices, "graph: vertex count exceeds 2^20");
        std::unordered_set<u64> seen;
        seen.reserve(edges_.size() * 2);
        for (const Edge& e : edges_) {
            require(e.u < n_ && e.v < n_, "graph: edge endpoint out of range");
            require(e.u != e.v, "graph: self-loop");
            require(e.w <= kMaxEdgeWeight, "graph: edge weight exceeds 2^40");
            require(seen.insert(edge_key(e.u, e.v)).second, "graph: duplicate undirected edge");
        }
        build_adjacency();
    }

    std::uint32_t n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::uint32_t i) const { return edges_[i]; }

    struct ArcRange {
        const Arc* first;
        const Arc* last;
        const Arc* begin() const { return first; }
        const Arc* end() const { return last; }
        std::size_t size() const { return (std::size_t)(last - first); }
    };

    ArcRange adj(Vertex v) const { return {arcs_.data() + off_[v], arcs_.data() + off_[v + 1]}; }

    std::uint32_t degree(Vertex v) const { return off_[v + 1] - off_[v]; }

    // arcs per vertex are sorted by target id
    const Arc* find_arc(Vertex u, Vertex v) const
    {
        auto range = adj(u);
        auto it = std::lower_bound(range.begin(), range.end(), v,
                                   [](const Arc& a, Vertex t) { return a.to < t; });
        if (it != range.end() && it->to == v)
            return it;
        return nullptr;
    }

    bool has_edge(Vertex u, Vertex v) const { return find_arc(u, v) != nullptr; }

private:
    void build_adjacency()
    {
        off_.assign(n_ + 1, 0);
        for (const Edge& e : edges_) {
            ++off_[e.u + 1];
            ++off_[e.v + 1];
        }
        for (std::uint32_t i = 0; i < n_; ++i)
            off_[i + 1] += off_[i];
        arcs_.resize(edges_.size() * 2);
        std::vector<std::uint32_t> cur(off_.begin(), off_.end() - 1);
        for (std::uint32_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            arcs_[cur[e.u]++] = Arc{e.v, e.w, i};
            arcs_[cur[e.v]++] = Arc{e.u, e.w, i};
        }
        for (std::uint32_t v = 0; v < n_; ++v)
            std::sort(arcs_.begin() + off_[v], arcs_.begin() + off_[v + 1],
                      [](const Arc& a, const Arc& b) { return a.to < b.to; });
    }

    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> off_{0};
    std::vector<Arc> arcs_;
};

//--------------------------- pairs & paths ---------------------------

struct VPair {
    Vertex u = 0, v = 0;

    friend bool operator==(const VPair& a, const VPair& b) { return a.u == b.u && a.v == b.v; }
};

using PairSet = std::vector<VPair>;

inline void validate_pairs(std::uint32_t n, const PairSet& pairs, bool allow_duplicates = false)
{
    std::unordered_set<u64> seen;
    for (const VPair& p : pairs) {
        require(p.u < n && p.v < n, "pairs: vertex id out of range");
        require(p.u != p.v, "pairs: pair with identical endpoints");
        if (!allow_duplicates)
            require(seen.insert(edge_key(p.u, p.v) ^ ((u64)(p.u > p.v) << 63)).second,
                    "pairs: duplicate pair (pass allow_duplicates to accept)");
    }
}

// A walk given by its vertex sequence; weight is the sum of traversed edge
// weights. A single-vertex sequence is the empty path at that vertex.
struct Path {
    std::vector<Vertex> vertices;
    Weight weight = 0;

    std::size_t hops() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    Vertex front() const { return vertices.front(); }
    Vertex back() const { return vertices.back(); }

    Path reversed() const
    {
        Path p = *this;
        std::reverse(p.vertices.begin(), p.vertices.end());
        return p;
    }
};

// true iff consecutive vertices are joined by graph edges and weight matches their sum
inline bool path_valid_in(const Graph& g, const Path& p)
{
    if (p.vertices.empty())
        return false;
    Weight total = 0;
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        const Arc* a = g.find_arc(p.vertices[i], p.vertices[i + 1]);
        if (!a)
            return false;
        total = sat_add(total, a->w);
    }
    return total == p.weight;
}

inline void append_path(Path& dst, const Path& src)
{
    check(!src.vertices.empty(), "append_path: empty source");
    if (dst.vertices.empty()) {
        dst = src;
        return;
    }
    check(dst.vertices.back() == src.vertices.front(), "append_path: junction mismatch");
    dst.vertices.insert(dst.vertices.end(), src.vertices.begin() + 1, src.vertices.end());
    dst.weight = sat_add(dst.weight, src.weight);
}

//--------------------------- text formats ---------------------------
//
// graph <n> <m>          pairs <count>
// <u> <v> <w>   x m      <u> <v>   x count
//
// '#' starts a comment line in both formats.

namespace detail {

inline std::string next_data_line(std::istream& in)
{
    std::string line;
    while (std::getline(in, line)) {
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#')
            continue;
        return line;
    }
    return {};
}

template <typename T>
T parse_field(std::istringstream& ss, const char* field)
{
    long long v;
    if (!(ss >> v) || v < 0)
        throw InputError(std::string("malformed field: ") + field);
    return (T)v;
}

} // namespace detail

inline void write_graph(std::ostream& out, const Graph& g)
{
    out << "graph " << g.n() << " " << g.m() << "\n";
    for (const Edge& e : g.edges())
        out << e.u << " " << e.v << " " << e.w << "\n";
}

inline Graph read_graph(std::istream& in)
{
    std::istringstream head(detail::next_data_line(in));
    std::string tag;
    head >> tag;
    require(tag == "graph", "graph file: missing 'graph' header");
    auto n = detail::parse_field<std::uint32_t>(head, "graph n");
    auto m = detail::parse_field<std::size_t>(head, "graph m");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::istringstream ss(detail::next_data_line(in));
        Edge e;
        e.u = detail::parse_field<Vertex>(ss, "edge u");
        e.v = detail::parse_field<Vertex>(ss, "edge v");
        long long w;
        require(bool(ss >> w) && w >= 0, "malformed field: edge w");
        e.w = (Weight)w;
        edges.push_back(e);
    }
    return Graph(n, std::move(edges));
}

inline void write_pairs(std::ostream& out, const PairSet& pairs)
{
    out << "pairs " << pairs.size() << "\n";
    for (const VPair& p : pairs)
        out << p.u << " " << p.v << "\n";
}

inline PairSet read_pairs(std::istream& in)
{
    std::istringstream head(detail::next_data_line(in));
    std::string tag;
    head >> tag;
    require(tag == "pairs", "pairs file: missing 'pairs' header");
    auto count = detail::parse_field<std::size_t>(head, "pairs count");
    PairSet pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream ss(detail::next_data_line(in));
        VPair p;
        p.u = detail::parse_field<Vertex>(ss, "pair u");
        p.v = detail::parse_field<Vertex>(ss, "pair v");
        pairs.push_back(p);
    }
    return pairs;
}

} // namespace spanlab

#endif
