#ifndef SPANLAB_SHORTEST_PATHS_HPP
#define SPANLAB_SHORTEST_PATHS_HPP

#include <queue>
#include <tuple>

#include "spanlab/graph.hpp"

namespace spanlab {

// Single- or multi-source shortest path tree/forest with canonical parents.
// parent[v] == kNoVertex at roots and unreachable vertices; root[v] is the
// canonically nearest root (== source for single-source trees).
struct DistanceTree {
    std::vector<Weight> dist;
    std::vector<Vertex> parent;
    std::vector<Vertex> root;

    bool reachable(Vertex v) const { return dist[v] != kInf; }
};

namespace detail {

// Generalized Dijkstra over labels (dist, root); the settle order
// (dist, root, id) makes parents canonical: each vertex takes the minimum-id
// optimal predecessor, ties across roots resolved by root id first.
inline DistanceTree labeled_dijkstra(const Graph& g, const std::vector<Vertex>& sources)
{
    const std::uint32_t n = g.n();
    DistanceTree t;
    t.dist.assign(n, kInf);
    t.parent.assign(n, kNoVertex);
    t.root.assign(n, kNoVertex);
    std::vector<bool> settled(n, false);

    using Item = std::tuple<Weight, Vertex, Vertex>; // (dist, root, vertex)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (Vertex s : sources) {
        require(s < n, "source vertex out of range");
        if (t.dist[s] != 0 || t.root[s] > s) {
            t.dist[s] = 0;
            t.root[s] = s;
            pq.emplace(0, s, s);
        }
    }
    while (!pq.empty()) {
        auto [d, r, v] = pq.top();
        pq.pop();
        if (settled[v] || d != t.dist[v] || r != t.root[v])
            continue;
        settled[v] = true;
        if (r != v) { // non-root: pick canonical parent among settled optimal predecessors
            Vertex best = kNoVertex;
            for (const Arc& a : g.adj(v))
                if (settled[a.to] && t.root[a.to] == r && sat_add(t.dist[a.to], a.w) == d) {
                    best = a.to;
                    break; // arcs sorted by id
                }
            check(best != kNoVertex, "canonical parent not found");
            t.parent[v] = best;
        }
        for (const Arc& a : g.adj(v)) {
            if (settled[a.to])
                continue;
            Weight nd = sat_add(d, a.w);
            if (nd < t.dist[a.to] || (nd == t.dist[a.to] && r < t.root[a.to])) {
                t.dist[a.to] = nd;
                t.root[a.to] = r;
                pq.emplace(nd, r, a.to);
            }
        }
    }
    return t;
}

} // namespace detail

inline DistanceTree dijkstra(const Graph& g, Vertex s)
{
    require(s < g.n(), "dijkstra: source out of range");
    return detail::labeled_dijkstra(g, {s});
}

// Nearest-root forest: dist[v] = min over roots of d_G(v, root), ties broken
// by (distance, root id, predecessor id). Parent edges form a forest.
inline DistanceTree multi_source_forest(const Graph& g, const std::vector<Vertex>& roots)
{
    require(!roots.empty(), "multi_source_forest: empty root set");
    return detail::labeled_dijkstra(g, roots);
}

// Root-to-v path read off the parent pointers. Empty path when v is a root.
inline Path canonical_path(const DistanceTree& t, Vertex v)
{
    require(v < t.dist.size(), "canonical_path: vertex out of range");
    require(t.dist[v] != kInf, "canonical_path: vertex unreachable");
    Path p;
    p.weight = t.dist[v];
    for (Vertex x = v; x != kNoVertex; x = t.parent[x])
        p.vertices.push_back(x);
    std::reverse(p.vertices.begin(), p.vertices.end());
    return p;
}

//--------------------------- hop-limited distances ---------------------------

struct SimpleArc {
    Vertex to;
    Weight w;
};

using AdjList = std::vector<std::vector<SimpleArc>>; // symmetric

inline AdjList graph_adjacency(const Graph& g)
{
    AdjList adj(g.n());
    for (Vertex v = 0; v < g.n(); ++v)
        for (const Arc& a : g.adj(v))
            adj[v].push_back({a.to, a.w});
    return adj;
}

// d^{(h)}[v] for h = 0..beta, stored per Bellman-Ford round until the values
// stabilize (they cannot change after that, so later rounds are implied).
struct HopTable {
    Vertex source = 0;
    u64 beta = 0;
    std::vector<std::vector<Weight>> round_dist; // round_dist[h][v], h <= stored_rounds
    std::vector<std::vector<Vertex>> round_pred; // minimal-id predecessor when round h improved v

    u64 stored_rounds() const { return round_dist.size() - 1; }

    Weight dist_at(Vertex v, u64 h) const
    {
        if (h > beta)
            h = beta;
        if (h > stored_rounds())
            h = stored_rounds();
        return round_dist[h][v];
    }

    Weight final_dist(Vertex v) const { return round_dist.back()[v]; }

    // smallest h with d^{(h)}[v] == final value (kInf stays unreachable)
    u64 hops_to_final(Vertex v) const
    {
        Weight target = final_dist(v);
        u64 lo = 0, hi = stored_rounds();
        while (lo < hi) {
            u64 mid = (lo + hi) / 2;
            if (round_dist[mid][v] == target)
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }
};

inline HopTable hop_limited(const AdjList& adj, Vertex s, u64 beta)
{
    const std::size_t n = adj.size();
    require(s < n, "hop_limited: source out of range");
    HopTable t;
    t.source = s;
    t.beta = beta;
    std::vector<Weight> cur(n, kInf);
    cur[s] = 0;
    t.round_dist.push_back(cur);
    t.round_pred.emplace_back(n, kNoVertex);
    for (u64 h = 1; h <= beta; ++h) {
        std::vector<Weight> next = cur;
        std::vector<Vertex> pred(n, kNoVertex);
        bool changed = false;
        for (Vertex v = 0; v < n; ++v) {
            if (cur[v] == kInf)
                continue;
            for (const SimpleArc& a : adj[v]) {
                Weight nd = sat_add(cur[v], a.w);
                if (nd < next[a.to] || (nd == next[a.to] && nd < cur[a.to] && v < pred[a.to])) {
                    next[a.to] = nd;
                    pred[a.to] = v;
                    changed = true;
                }
            }
        }
        if (!changed)
            break;
        cur = next;
        t.round_dist.push_back(std::move(next));
        t.round_pred.push_back(std::move(pred));
    }
    return t;
}

inline HopTable hop_limited(const Graph& g, Vertex s, u64 beta)
{
    return hop_limited(graph_adjacency(g), s, beta);
}

// Minimal-weight path to v within the table's hop budget, tie-broken to
// minimal hop count and then minimal predecessor ids round by round.
inline Path hop_limited_path(const HopTable& t, Vertex v)
{
    require(t.final_dist(v) != kInf, "hop_limited_path: target unreachable within budget");
    Path p;
    u64 h = t.hops_to_final(v);
    Vertex x = v;
    while (h > 0) {
        while (h > 0 && t.round_dist[h - 1][x] == t.round_dist[h][x])
            --h;
        if (h == 0)
            break;
        p.vertices.push_back(x);
        Vertex px = t.round_pred[h][x];
        check(px != kNoVertex, "hop table predecessor missing");
        x = px;
        --h;
    }
    check(x == t.source, "hop path reconstruction did not reach the source");
    p.vertices.push_back(x);
    std::reverse(p.vertices.begin(), p.vertices.end());
    p.weight = t.final_dist(v);
    return p;
}

} // namespace spanlab

#endif
