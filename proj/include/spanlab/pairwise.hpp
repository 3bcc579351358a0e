#ifndef SPANLAB_PAIRWISE_HPP
#define SPANLAB_PAIRWISE_HPP

#include <functional>
#include <memory>
#include <optional>

#include "spanlab/hopset.hpp"

namespace spanlab {

struct Provenance {
    std::string construction;
    std::string params;
    u64 seed = 0;
};

// Query-side of a path-reporting spanner. Implementations answer in time
// proportional to the returned path (plus a small dispatch overhead).
class PathOracle {
public:
    virtual ~PathOracle() = default;
    virtual Path query(Vertex u, Vertex v) const = 0;
    virtual const char* kind() const = 0;
};

// Edge subgraph + oracle + declared stretch. Every reported path stays inside
// `edges` and respects declared_stretch times d_G for supported pairs.
struct SpannerBundle {
    std::uint32_t n = 0;
    std::vector<Edge> edges; // canonical: u < v, sorted by (u, v)
    Rat declared_stretch{1, 1};
    PairSet supported;
    PairSet unsupported; // pairs the construction had to reject (disconnected)
    Provenance prov;
    std::shared_ptr<const PathOracle> oracle;

    Path query(Vertex u, Vertex v) const
    {
        check(oracle != nullptr, "bundle has no oracle");
        return oracle->query(u, v);
    }
};

inline void canonicalize_edges(std::vector<Edge>& edges)
{
    for (Edge& e : edges)
        if (e.u > e.v)
            std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : (a.v != b.v ? a.v < b.v : a.w < b.w);
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) {
                                return a.u == b.u && a.v == b.v && a.w == b.w;
                            }),
                edges.end());
}

using PairwiseBuilder = std::function<SpannerBundle(const Graph&, const PairSet&)>;

//--------------------------- exact preserver ---------------------------

inline u64 pair_key(Vertex u, Vertex v) { return edge_key(u, v); }

// Canonical shortest-path trees shared across pairs with a common source;
// reported paths are read off the parent pointers.
class TreeOracle : public PathOracle {
public:
    std::uint32_t n = 0;
    std::map<Vertex, DistanceTree> trees;        // keyed by source (= min endpoint)
    std::unordered_map<u64, Vertex> pair_source; // unordered pair key -> tree source

    const char* kind() const override { return "preserver"; }

    Path query(Vertex u, Vertex v) const override
    {
        if (u == v)
            return Path{{u}, 0};
        auto it = pair_source.find(pair_key(u, v));
        if (it == pair_source.end())
            throw UnsupportedPair("preserver: pair not supported");
        Vertex s = it->second;
        const DistanceTree& t = trees.at(s);
        Path p = canonical_path(t, s == u ? v : u);
        return s == u ? p : p.reversed();
    }
};

// Path-reporting pairwise 1-spanner: the union of canonical shortest paths.
inline SpannerBundle exact_preserver(const Graph& g, const PairSet& pairs)
{
    validate_pairs(g.n(), pairs);
    SpannerBundle b;
    b.n = g.n();
    b.declared_stretch = make_rat(1, 1);
    b.prov.construction = "exact-preserver";
    auto oracle = std::make_shared<TreeOracle>();
    oracle->n = g.n();

    std::vector<std::pair<Vertex, VPair>> by_source; // (source = min endpoint, pair)
    by_source.reserve(pairs.size());
    for (const VPair& p : pairs)
        by_source.push_back({std::min(p.u, p.v), p});
    std::sort(by_source.begin(), by_source.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::unordered_set<u64> edge_seen;
    for (std::size_t i = 0; i < by_source.size();) {
        Vertex s = by_source[i].first;
        DistanceTree tree = dijkstra(g, s);
        bool used = false;
        for (; i < by_source.size() && by_source[i].first == s; ++i) {
            const VPair& p = by_source[i].second;
            Vertex t = p.u == s ? p.v : p.u;
            if (tree.dist[t] == kInf) {
                b.unsupported.push_back(p);
                continue;
            }
            used = true;
            b.supported.push_back(p);
            oracle->pair_source.emplace(pair_key(p.u, p.v), s);
            for (Vertex x = t; tree.parent[x] != kNoVertex; x = tree.parent[x])
                if (edge_seen.insert(edge_key(x, tree.parent[x])).second)
                    b.edges.push_back(
                        {x, tree.parent[x], tree.dist[x] - tree.dist[tree.parent[x]]});
        }
        if (used)
            oracle->trees.emplace(s, std::move(tree));
    }
    canonicalize_edges(b.edges);
    b.oracle = std::move(oracle);
    return b;
}

inline PairwiseBuilder exact_preserver_builder()
{
    return [](const Graph& g, const PairSet& p) { return exact_preserver(g, p); };
}

//--------------------------- hop paths ---------------------------

struct HopStep {
    Vertex to;
    Weight w;
    std::uint8_t origin; // 0 graph, 1/2/3 hopset tag
    std::uint32_t level;
    Vertex anchor;
};

// Minimal-weight <= beta-hop path in G ∪ H with per-edge provenance.
struct HopPath {
    Vertex start = kNoVertex;
    std::vector<HopStep> steps;
    Weight weight = 0;

    std::size_t hops() const { return steps.size(); }
    Vertex end() const { return steps.empty() ? start : steps.back().to; }
};

// Per pair: hop-limited search from u in G ∪ H, reconstructed and annotated.
// A finite pair whose hop path exceeds the declared stretch is a hopset bug
// and raises CheckError. Disconnected pairs come back empty (nullopt).
inline std::vector<std::optional<HopPath>> extract_hop_paths(const Graph& g, const Hopset& h,
                                                             const PairSet& pairs, u64 beta)
{
    UnionGraph uni = make_union(g, h);
    std::vector<std::optional<HopPath>> out(pairs.size());
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pairs[a].u < pairs[b].u; });
    Rat alpha = h.declared_stretch;
    for (std::size_t i = 0; i < order.size();) {
        Vertex s = pairs[order[i]].u;
        HopTable table = hop_limited(uni.adj, s, beta);
        DistanceTree truth = dijkstra(g, s);
        for (; i < order.size() && pairs[order[i]].u == s; ++i) {
            const VPair& pr = pairs[order[i]];
            if (truth.dist[pr.v] == kInf)
                continue;
            Path raw = hop_limited_path(table, pr.v);
            HopPath hp;
            hp.start = s;
            hp.weight = raw.weight;
            for (std::size_t j = 0; j + 1 < raw.vertices.size(); ++j) {
                Vertex a = raw.vertices[j], bvx = raw.vertices[j + 1];
                auto info = uni.info.at(edge_key(a, bvx));
                auto arc = std::lower_bound(uni.adj[a].begin(), uni.adj[a].end(), bvx,
                                            [](const SimpleArc& x, Vertex t) { return x.to < t; });
                hp.steps.push_back({bvx, arc->w, info.origin, info.level, info.anchor});
            }
            check(hp.hops() <= beta, "hop path exceeds the hop budget");
            check(weight_within(hp.weight, alpha, truth.dist[pr.v]),
                  "hop path exceeds declared hopset stretch: hopset bug");
            out[order[i]] = std::move(hp);
        }
    }
    return out;
}

//--------------------------- composition ---------------------------

// Replays stored hop paths; hop-edges are spliced through the inner oracle,
// or through the H1/H2 pointer preservers in the partitioned construction.
class ComposeOracle : public PathOracle {
public:
    bool partitioned = false;
    std::vector<HopPath> paths;                 // aligned with owning bundle's supported list
    std::unordered_map<u64, std::uint32_t> index; // unordered pair key -> path position
    SpannerBundle inner;
    PivotPreserver h1;   // populated only when partitioned
    ClusterPreserver h2; // populated only when partitioned

    const char* kind() const override { return "compose"; }

    Path query(Vertex u, Vertex v) const override
    {
        if (u == v)
            return Path{{u}, 0};
        auto it = index.find(pair_key(u, v));
        if (it == index.end())
            throw UnsupportedPair("composed spanner: pair not supported");
        const HopPath& hp = paths[it->second];
        Path p{{hp.start}, 0};
        Vertex cur = hp.start;
        for (const HopStep& st : hp.steps) {
            if (st.origin == 0) {
                p.vertices.push_back(st.to);
                p.weight = sat_add(p.weight, st.w);
            } else if (!partitioned || st.origin == kTagH3) {
                append_path(p, oriented(inner.query(cur, st.to), cur));
            } else if (st.origin == kTagH1) {
                Vertex other = st.anchor == cur ? st.to : cur;
                append_path(p, oriented(h1.query(other, st.anchor), cur));
            } else {
                Vertex other = st.anchor == cur ? st.to : cur;
                append_path(p, oriented(h2.query(other, st.anchor), cur));
            }
            cur = st.to;
        }
        return hp.start == u ? p : p.reversed();
    }

private:
    static Path oriented(Path p, Vertex from)
    {
        return p.vertices.front() == from ? p : p.reversed();
    }
};

namespace detail {

inline SpannerBundle compose_impl(const Graph& g, const PairSet& pairs, std::uint32_t k,
                                  std::uint32_t c, u64 seed, const PairwiseBuilder& inner,
                                  bool partitioned)
{
    validate_pairs(g.n(), pairs);
    HopsetBuild build = build_hopset(g, k, c, seed);
    const Hopset& h = build.hopset;
    u64 beta = h.declared_hopbound;
    auto hop_paths = extract_hop_paths(g, h, pairs, beta);

    PairSet inner_pairs;
    for (const HopsetEdge& e : h.edges)
        if (!partitioned || e.tag == kTagH3)
            inner_pairs.push_back({e.u, e.v});
    SpannerBundle inner_bundle = inner(g, inner_pairs);
    check(inner_bundle.unsupported.empty(), "inner spanner rejected a hopset edge pair");

    SpannerBundle b;
    b.n = g.n();
    b.declared_stretch = rat_mul(inner_bundle.declared_stretch, h.declared_stretch);
    b.prov.construction = partitioned ? "compose-pairwise-partitioned" : "compose-pairwise";
    b.prov.seed = seed;
    std::unordered_set<u64> hop_graph_edges; // size accounting: per-pair graph edges + |inner|
    for (const auto& hp : hop_paths) {
        if (!hp)
            continue;
        Vertex cur = hp->start;
        for (const HopStep& st : hp->steps) {
            if (st.origin == 0)
                hop_graph_edges.insert(edge_key(cur, st.to));
            cur = st.to;
        }
    }
    b.prov.params = "k=" + std::to_string(k) + " c=" + std::to_string(c) +
                    " F=" + std::to_string(h.levels) + " beta=" + std::to_string(beta) +
                    " hop_edges=" + std::to_string(hop_graph_edges.size()) +
                    " inner_edges=" + std::to_string(inner_bundle.edges.size()) +
                    " inner_pairs=" + std::to_string(inner_pairs.size());

    auto oracle = std::make_shared<ComposeOracle>();
    oracle->partitioned = partitioned;
    oracle->inner = std::move(inner_bundle);
    if (partitioned) {
        oracle->h1 = build.h1;
        oracle->h2 = build.h2;
    }
    b.edges = oracle->inner.edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!hop_paths[i]) {
            b.unsupported.push_back(pairs[i]);
            continue;
        }
        oracle->index.emplace(pair_key(pairs[i].u, pairs[i].v), (std::uint32_t)oracle->paths.size());
        b.supported.push_back(pairs[i]);
        const HopPath& hp = *hop_paths[i];
        Vertex cur = hp.start;
        for (const HopStep& st : hp.steps) {
            if (st.origin == 0)
                b.edges.push_back({cur, st.to, st.w});
            cur = st.to;
        }
        oracle->paths.push_back(hp);
    }
    if (partitioned) {
        for (const Edge& e : oracle->h1.edge_set())
            b.edges.push_back(e);
        for (const Edge& e : oracle->h2.edge_set())
            b.edges.push_back(e);
    }
    canonicalize_edges(b.edges);
    b.oracle = std::move(oracle);
    return b;
}

} // namespace detail

// Plain composition: hop paths in G ∪ H plus an inner pairwise spanner over
// all hopset edges; declared stretch t * (8c + 3).
inline SpannerBundle compose_pairwise(const Graph& g, const PairSet& pairs, std::uint32_t k,
                                      std::uint32_t c, u64 seed,
                                      const PairwiseBuilder& inner = exact_preserver_builder())
{
    return detail::compose_impl(g, pairs, k, c, seed, inner, false);
}

// Partitioned composition: H1 and H2 ride their built-in pointer preservers, only
// H3 goes to the inner builder; S additionally carries the preserver edges.
inline SpannerBundle compose_pairwise_partitioned(
    const Graph& g, const PairSet& pairs, std::uint32_t k, std::uint32_t c, u64 seed,
    const PairwiseBuilder& inner = exact_preserver_builder())
{
    return detail::compose_impl(g, pairs, k, c, seed, inner, true);
}

} // namespace spanlab

#endif
