#ifndef SPANLAB_HOPSET_HPP
#define SPANLAB_HOPSET_HPP

#include <map>
#include <unordered_map>

#include "spanlab/hierarchy.hpp"

namespace spanlab {

//--------------------------- hopset assembly ---------------------------

enum : std::uint8_t { kTagH1 = 1, kTagH2 = 2, kTagH3 = 3 };

struct HopsetEdge {
    Vertex u, v; // u < v
    Weight w;    // exact d_G(u, v)
    std::uint8_t tag;
    std::uint32_t level; // pivot level i (H1) or bunch level j (H2/H3)
    Vertex anchor;       // the pivot (H1) or cluster center (H2/H3)
};

struct Hopset {
    std::uint32_t n = 0;
    std::uint32_t k = 0, c = 0, levels = 0;
    Rat delta_samp{1, 2};
    u64 seed = 0;
    std::vector<HopsetEdge> edges; // sorted by (u, v)
    Rat declared_stretch{1, 1};
    Rat declared_hopbound_rat{1, 1};
    u64 declared_hopbound = 1;

    std::size_t count_tag(std::uint8_t tag) const
    {
        std::size_t c0 = 0;
        for (const auto& e : edges)
            c0 += e.tag == tag;
        return c0;
    }
};

inline Rat hopset_declared_stretch(std::uint32_t c) { return make_rat(8ull * c + 3, 1); }

// (1 + 1/c)^F * (2c + 2)^{2*floor(F/c)} as an exact rational
inline Rat hopset_declared_hopbound(std::uint32_t c, std::uint32_t F)
{
    u128 num = 1, den = 1;
    for (std::uint32_t i = 0; i < F; ++i) {
        num *= c + 1;
        den *= c;
    }
    for (std::uint32_t i = 0; i < 2 * (F / c); ++i)
        num *= 2 * c + 2;
    u128 x = num, y = den;
    while (y) {
        u128 t = x % y;
        x = y;
        y = t;
    }
    num /= x;
    den /= x;
    require(num <= std::numeric_limits<u64>::max(), "hopbound overflows 64 bits for these k, c");
    return Rat{(u64)num, (u64)den};
}

//--------------------------- preserver oracles ---------------------------

// H1 preserver (pointer forests): one next-hop pointer per vertex per level,
// following them from u terminates at p_i(u); per-level edge sets are forests.
struct PivotPreserver {
    std::uint32_t n = 0;
    std::uint32_t levels = 0;
    std::vector<std::vector<Vertex>> parent; // per level, kNoVertex at roots/unreachable
    std::vector<std::vector<Vertex>> pivot;  // per level, kNoVertex when undefined
    std::vector<std::vector<Weight>> dist;

    bool supports(Vertex u, Vertex x) const
    {
        if (u >= n || x >= n)
            return false;
        for (std::uint32_t i = 0; i < levels; ++i)
            if (pivot[i][u] == x)
                return true;
        return false;
    }

    Path query_level(Vertex u, std::uint32_t i) const
    {
        require(i < levels, "H1 preserver: level out of range");
        require(pivot[i][u] != kNoVertex, "H1 preserver: pivot undefined for this vertex");
        Path p;
        p.weight = dist[i][u];
        for (Vertex x = u; x != kNoVertex; x = parent[i][x]) {
            p.vertices.push_back(x);
            check(p.vertices.size() <= n, "H1 pointer walk did not terminate");
        }
        check(p.vertices.back() == pivot[i][u], "H1 pointer walk missed the pivot");
        return p;
    }

    // path from u to its level-i pivot x, exact weight d_G(u, x)
    Path query(Vertex u, Vertex x) const
    {
        for (std::uint32_t i = 0; i < levels; ++i)
            if (u < n && pivot[i][u] == x)
                return query_level(u, i);
        throw UnsupportedPair("H1 preserver: pair (u, x) is not (vertex, pivot)");
    }

    std::vector<Edge> edge_set() const
    {
        std::vector<Edge> out;
        std::unordered_set<u64> seen;
        for (std::uint32_t i = 0; i < levels; ++i)
            for (Vertex x = 0; x < n; ++x)
                if (parent[i][x] != kNoVertex && seen.insert(edge_key(x, parent[i][x])).second) {
                    Weight w = dist[i][x] - dist[i][parent[i][x]];
                    out.push_back({std::min(x, parent[i][x]), std::max(x, parent[i][x]), w});
                }
        return out;
    }

    std::size_t edge_count_multiset() const
    {
        std::size_t c0 = 0;
        for (std::uint32_t i = 0; i < levels; ++i)
            for (Vertex x = 0; x < n; ++x)
                c0 += parent[i][x] != kNoVertex;
        return c0;
    }
};

// H2 preserver: per cluster center, a canonical shortest-path tree restricted
// to the cluster; every vertex on a stored path stays inside the cluster.
struct ClusterPreserver {
    std::uint32_t n = 0;
    std::vector<ClusterData> clusters; // levels j in [0, c-1] only
    std::vector<std::uint32_t> cluster_of_center;

    bool supports(Vertex u, Vertex center) const
    {
        if (center >= n || cluster_of_center[center] == UINT32_MAX)
            return false;
        const ClusterData& cl = clusters[cluster_of_center[center]];
        return std::binary_search(cl.members.begin(), cl.members.end(), u);
    }

    Path query(Vertex u, Vertex center) const
    {
        if (center >= n || u >= n || cluster_of_center[center] == UINT32_MAX)
            throw UnsupportedPair("H2 preserver: no cluster at this center");
        const ClusterData& cl = clusters[cluster_of_center[center]];
        Path p;
        Vertex x = u;
        while (true) {
            auto it = std::lower_bound(cl.members.begin(), cl.members.end(), x);
            if (it == cl.members.end() || *it != x)
                throw UnsupportedPair("H2 preserver: vertex left the cluster");
            std::size_t idx = (std::size_t)(it - cl.members.begin());
            if (p.vertices.empty())
                p.weight = cl.dist[idx];
            p.vertices.push_back(x);
            if (x == center)
                break;
            x = cl.parent[idx];
            check(x != kNoVertex && p.vertices.size() <= n, "H2 pointer walk broken");
        }
        return p;
    }

    std::vector<Edge> edge_set() const
    {
        std::vector<Edge> out;
        std::unordered_set<u64> seen;
        for (const ClusterData& cl : clusters)
            for (std::size_t i = 0; i < cl.members.size(); ++i)
                if (cl.parent[i] != kNoVertex && seen.insert(edge_key(cl.members[i], cl.parent[i])).second) {
                    Vertex a = cl.members[i], b = cl.parent[i];
                    auto bit = std::lower_bound(cl.members.begin(), cl.members.end(), b);
                    check(bit != cl.members.end() && *bit == b, "H2 parent outside cluster");
                    Weight w = cl.dist[i] - cl.dist[(std::size_t)(bit - cl.members.begin())];
                    out.push_back({std::min(a, b), std::max(a, b), w});
                }
        return out;
    }
};

// Pair form of the preserver queries: (u, pivot) resp. (u, cluster center).
inline Path query_preserver(const PivotPreserver& p, VPair pair)
{
    return p.query(pair.u, pair.v);
}

inline Path query_preserver(const ClusterPreserver& p, VPair pair)
{
    return p.query(pair.u, pair.v);
}

struct HopsetBuild {
    Hopset hopset;
    PivotPreserver h1;
    ClusterPreserver h2;
    Hierarchy hierarchy;
};

inline HopsetBuild build_hopset_with_params(const Graph& g, const LevelParams& params)
{
    HopsetBuild out;
    out.hierarchy = sample_hierarchy(g, params);
    const Hierarchy& hier = out.hierarchy;
    const std::uint32_t n = g.n(), F = params.levels, c = params.c;

    Hopset& h = out.hopset;
    h.n = n;
    h.k = params.k;
    h.c = c;
    h.levels = F;
    h.delta_samp = params.delta_samp;
    h.seed = params.seed;
    h.declared_stretch = hopset_declared_stretch(c);
    h.declared_hopbound_rat = hopset_declared_hopbound(c, F);
    h.declared_hopbound = rat_ceil(h.declared_hopbound_rat);

    // Pivot edges for every vertex and level, then bunch edges; when
    // the same undirected edge arises more than once the earliest tag wins
    // (H1 over H2 over H3), with identical weight by construction.
    std::map<std::pair<Vertex, Vertex>, std::size_t> index;
    auto add = [&](Vertex a, Vertex b, Weight w, std::uint8_t tag, std::uint32_t level,
                   Vertex anchor) {
        if (a == b)
            return;
        Vertex u = std::min(a, b), v = std::max(a, b);
        auto [it, fresh] = index.try_emplace({u, v}, h.edges.size());
        if (fresh)
            h.edges.push_back({u, v, w, tag, level, anchor});
        else
            check(h.edges[it->second].w == w, "hopset edge weight mismatch across roles");
    };
    for (std::uint32_t i = 0; i < F; ++i)
        for (Vertex u = 0; u < n; ++u) {
            Vertex p = hier.pivot(i, u);
            if (p != kNoVertex && p != u)
                add(u, p, hier.pivot_dist(i, u), kTagH1, i, p);
        }
    for (const ClusterData& cl : hier.clusters) {
        std::uint8_t tag = cl.level < c ? kTagH2 : kTagH3;
        for (std::size_t i = 0; i < cl.members.size(); ++i)
            if (cl.members[i] != cl.center)
                add(cl.members[i], cl.center, cl.dist[i], tag, cl.level, cl.center);
    }
    std::vector<HopsetEdge> sorted;
    sorted.reserve(h.edges.size());
    for (const auto& [key, idx] : index)
        sorted.push_back(h.edges[idx]);
    h.edges = std::move(sorted);

    // H1 preserver: the per-level nearest-root forests are the pointer tables
    PivotPreserver& h1 = out.h1;
    h1.n = n;
    h1.levels = F;
    h1.parent.assign(F, std::vector<Vertex>(n, kNoVertex));
    h1.pivot.assign(F, std::vector<Vertex>(n, kNoVertex));
    h1.dist.assign(F, std::vector<Weight>(n, kInf));
    for (std::uint32_t i = 0; i < F; ++i) {
        if (!hier.level_nonempty(i))
            continue;
        const DistanceTree& t = hier.pivot_forest[i];
        for (Vertex v = 0; v < n; ++v)
            if (t.dist[v] != kInf) {
                h1.parent[i][v] = t.parent[v];
                h1.pivot[i][v] = t.root[v];
                h1.dist[i][v] = t.dist[v];
            }
    }

    // H2 preserver: clusters of level < c; assert the cluster closure.
    ClusterPreserver& h2 = out.h2;
    h2.n = n;
    h2.cluster_of_center.assign(n, UINT32_MAX);
    for (const ClusterData& cl : hier.clusters) {
        if (cl.level >= c)
            continue;
        for (std::size_t i = 0; i < cl.members.size(); ++i)
            if (cl.members[i] != cl.center)
                check(std::binary_search(cl.members.begin(), cl.members.end(), cl.parent[i]),
                      "cluster closure violated: stored path leaves the cluster");
        h2.cluster_of_center[cl.center] = (std::uint32_t)h2.clusters.size();
        h2.clusters.push_back(cl);
    }
    return out;
}

inline HopsetBuild build_hopset(const Graph& g, std::uint32_t k, std::uint32_t c, u64 seed)
{
    require(c >= 2 && c <= k, "build_hopset: need 1 < c <= k");
    return build_hopset_with_params(g, make_level_params(k, c, default_delta_samp(k, c), seed));
}

//--------------------------- G ∪ H ---------------------------

struct UnionArcInfo {
    std::uint8_t origin; // 0 = graph edge, otherwise the hopset tag
    std::uint32_t level = 0;
    Vertex anchor = kNoVertex;
};

struct UnionGraph {
    AdjList adj;
    std::unordered_map<u64, UnionArcInfo> info; // edge_key -> provenance of the kept arc
};

// Parallel edges collapse to minimal weight; ties keep the graph edge, so a
// reported path prefers real edges whenever they are equally short.
inline UnionGraph make_union(const Graph& g, const Hopset& h)
{
    UnionGraph u;
    std::unordered_map<u64, std::pair<Weight, UnionArcInfo>> best;
    best.reserve(g.m() + h.edges.size());
    for (const Edge& e : g.edges())
        best[edge_key(e.u, e.v)] = {e.w, UnionArcInfo{0, 0, kNoVertex}};
    for (const HopsetEdge& e : h.edges) {
        auto [it, fresh] = best.try_emplace(edge_key(e.u, e.v), e.w, UnionArcInfo{e.tag, e.level, e.anchor});
        if (!fresh && e.w < it->second.first)
            it->second = {e.w, UnionArcInfo{e.tag, e.level, e.anchor}};
    }
    u.adj.assign(g.n(), {});
    u.info.reserve(best.size());
    for (const auto& [key, val] : best) {
        Vertex a = (Vertex)(key >> 32), b = (Vertex)(key & 0xffffffffu);
        u.adj[a].push_back({b, val.first});
        u.adj[b].push_back({a, val.first});
        u.info.emplace(key, val.second);
    }
    for (auto& arcs : u.adj)
        std::sort(arcs.begin(), arcs.end(),
                  [](const SimpleArc& x, const SimpleArc& y) { return x.to < y.to; });
    return u;
}

//--------------------------- hopset audit ---------------------------

struct HopsetViolation {
    Vertex u, v;
    Weight d_beta;
    Weight d_g;
};

struct HopsetAuditReport {
    Rat alpha{1, 1};
    u64 beta = 0;
    bool sampled = false;
    std::size_t pairs_checked = 0;
    std::vector<HopsetViolation> violations;
    Rat max_stretch{0, 1};       // over pairs with finite d_G > 0
    bool stretch_infinite = false;
    u64 min_beta_for_alpha = 0;  // smallest uniform hop budget meeting alpha on all checked pairs
    bool alpha_unreachable = false;
};

// Checks d^{(beta)}_{G∪H}(u,v) <= alpha * d_G(u,v) by exact cross-multiplication.
// All pairs when n <= 400, otherwise a seeded sample of ~10000 (mode recorded).
inline HopsetAuditReport audit_hopset(const Graph& g, const Hopset& h, Rat alpha, u64 beta,
                                      u64 sample_seed = 1)
{
    require(alpha.num >= alpha.den, "audit_hopset: alpha must be at least 1");
    const std::uint32_t n = g.n();
    HopsetAuditReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    UnionGraph uni = make_union(g, h);

    std::vector<Vertex> sources;
    std::size_t targets_per_source = 0; // 0 = all
    if (n <= 400) {
        sources.resize(n);
        for (Vertex v = 0; v < n; ++v)
            sources[v] = v;
    } else {
        rep.sampled = true;
        targets_per_source = 100;
        for (std::size_t i = 0; i < 100; ++i)
            sources.push_back((Vertex)(hash_rand(sample_seed, 0xa0d17u, i) % n));
    }

    struct PerSource {
        std::vector<HopsetViolation> violations;
        Rat max_stretch{0, 1};
        bool stretch_infinite = false;
        u64 min_beta = 0;
        std::size_t pairs = 0;
    };
    std::vector<PerSource> parts(sources.size());
    parallel_for(sources.size(), [&](std::size_t si) {
        Vertex s = sources[si];
        PerSource& out = parts[si];
        HopTable table = hop_limited(uni.adj, s, beta);
        DistanceTree truth = dijkstra(g, s);
        std::vector<Vertex> targets;
        if (targets_per_source == 0) {
            for (Vertex v = s + 1; v < n; ++v)
                targets.push_back(v);
        } else {
            for (std::size_t i = 0; i < targets_per_source; ++i) {
                Vertex v = (Vertex)(hash_rand(sample_seed, 0x7a66e7u ^ s, i) % n);
                if (v != s)
                    targets.push_back(v);
            }
        }
        for (Vertex v : targets) {
            Weight dg = truth.dist[v];
            if (dg == kInf || dg == 0)
                continue;
            ++out.pairs;
            Weight db = table.dist_at(v, beta);
            if (!weight_within(db, alpha, dg)) {
                out.violations.push_back({s, v, db, dg});
                if (db == kInf) {
                    out.stretch_infinite = true;
                    continue;
                }
            }
            out.max_stretch = rat_max(out.max_stretch, make_rat(db, dg));
            // first hop budget at which this pair meets alpha
            u64 lo = 0;
            bool found = false;
            for (u64 hh = 0; hh <= table.stored_rounds(); ++hh)
                if (weight_within(table.round_dist[hh][v], alpha, dg)) {
                    lo = hh;
                    found = true;
                    break;
                }
            if (!found)
                out.min_beta = kInf; // not reachable within beta rounds
            else
                out.min_beta = std::max(out.min_beta, lo);
        }
    });
    for (const PerSource& p : parts) {
        rep.pairs_checked += p.pairs;
        rep.violations.insert(rep.violations.end(), p.violations.begin(), p.violations.end());
        rep.max_stretch = rat_max(rep.max_stretch, p.max_stretch);
        rep.stretch_infinite |= p.stretch_infinite;
        if (p.min_beta == kInf)
            rep.alpha_unreachable = true;
        else
            rep.min_beta_for_alpha = std::max(rep.min_beta_for_alpha, p.min_beta);
    }
    return rep;
}

//--------------------------- hopset file format ---------------------------
//
// hopset <k> <c> <F> <seed> <count>
// <u> <v> <w> <tag>   x count

inline void write_hopset(std::ostream& out, const Hopset& h)
{
    out << "hopset " << h.k << " " << h.c << " " << h.levels << " " << h.seed << " "
        << h.edges.size() << "\n";
    for (const HopsetEdge& e : h.edges)
        out << e.u << " " << e.v << " " << e.w << " " << (int)e.tag << "\n";
}

inline Hopset read_hopset(std::istream& in, std::uint32_t n)
{
    std::istringstream head(detail::next_data_line(in));
    std::string tag;
    head >> tag;
    require(tag == "hopset", "hopset file: missing 'hopset' header");
    Hopset h;
    h.n = n;
    h.k = detail::parse_field<std::uint32_t>(head, "hopset k");
    h.c = detail::parse_field<std::uint32_t>(head, "hopset c");
    h.levels = detail::parse_field<std::uint32_t>(head, "hopset F");
    h.seed = detail::parse_field<u64>(head, "hopset seed");
    auto count = detail::parse_field<std::size_t>(head, "hopset count");
    require(h.c >= 2 && h.c <= h.k, "hopset file: need 1 < c <= k");
    h.delta_samp = default_delta_samp(h.k, h.c);
    h.declared_stretch = hopset_declared_stretch(h.c);
    h.declared_hopbound_rat = hopset_declared_hopbound(h.c, h.levels);
    h.declared_hopbound = rat_ceil(h.declared_hopbound_rat);
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream ss(detail::next_data_line(in));
        HopsetEdge e;
        e.u = detail::parse_field<Vertex>(ss, "hopset edge u");
        e.v = detail::parse_field<Vertex>(ss, "hopset edge v");
        long long w, t;
        require(bool(ss >> w) && w >= 0, "malformed field: hopset edge w");
        require(bool(ss >> t) && t >= 1 && t <= 3, "malformed field: hopset edge tag");
        e.w = (Weight)w;
        e.tag = (std::uint8_t)t;
        e.level = 0;
        e.anchor = e.v;
        require(e.u < n && e.v < n && e.u != e.v, "hopset file: edge endpoints invalid");
        h.edges.push_back(e);
    }
    return h;
}

} // namespace spanlab

#endif
