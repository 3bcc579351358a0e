#ifndef SPANLAB_HIERARCHY_HPP
#define SPANLAB_HIERARCHY_HPP

#include <cmath>
#include <queue>

#include "spanlab/shortest_paths.hpp"

namespace spanlab {

//--------------------------- index algebra ---------------------------

// f(i) = floor(i/c)*c + c - 1: rounds i up to the next multiple of c, minus one.
inline std::uint32_t f_index(std::uint32_t c, std::uint32_t i)
{
    require(c >= 2, "f_index: c must be at least 2");
    return (i / c) * c + c - 1;
}

// f^{-1}(j) = min{ i : f(i) >= j } = floor(j/c)*c
inline std::uint32_t f_inv(std::uint32_t c, std::uint32_t j)
{
    require(c >= 2, "f_inv: c must be at least 2");
    return (j / c) * c;
}

using Lambda = u128; // lambda_{ac+b} = (c+1)^a overflows u64 inside the tested range

struct LambdaSeq {
    std::uint32_t c = 0;
    std::vector<Lambda> values;
};

// lambda_0 = 1, lambda_i = 1 + sum_{l < f^{-1}(i)} lambda_l
inline LambdaSeq lambda_sequence(std::uint32_t c, std::uint32_t len)
{
    require(c >= 2, "lambda_sequence: c must be at least 2");
    LambdaSeq seq;
    seq.c = c;
    seq.values.reserve(len);
    std::vector<Lambda> prefix{0}; // prefix[i] = sum_{l < i} lambda_l
    for (std::uint32_t i = 0; i < len; ++i) {
        Lambda v = 1 + prefix[f_inv(c, i)];
        seq.values.push_back(v);
        prefix.push_back(prefix.back() + v);
    }
    return seq;
}

inline Lambda lambda_closed_form(std::uint32_t c, std::uint32_t i)
{
    Lambda v = 1;
    for (std::uint32_t a = 0; a < i / c; ++a)
        v *= (c + 1);
    return v;
}

// F = c * ceil(log_{c+1}(k+1)), integer arithmetic throughout
inline std::uint32_t level_count(std::uint32_t k, std::uint32_t c)
{
    require(c >= 2 && c <= k, "level_count: need 2 <= c <= k");
    std::uint32_t a = 0;
    u128 pow = 1;
    while (pow < (u128)k + 1) {
        pow *= (c + 1);
        ++a;
    }
    return c * a;
}

//--------------------------- level parameters ---------------------------

struct LevelParams {
    std::uint32_t k = 0;
    std::uint32_t c = 0;
    Rat delta_samp{1, 2};
    std::uint32_t levels = 0; // F
    u64 seed = 0;
};

inline LevelParams make_level_params(std::uint32_t k, std::uint32_t c, Rat delta_samp, u64 seed)
{
    require(c >= 2 && c <= k, "level params: need 2 <= c <= k");
    require(delta_samp.num > 0 && rat_le(delta_samp, make_rat(1, 2)),
            "level params: delta_samp must lie in (0, 1/2]");
    LevelParams p;
    p.k = k;
    p.c = c;
    p.delta_samp = delta_samp;
    p.levels = level_count(k, c);
    p.seed = seed;
    return p;
}

// delta = k^{-9/(c-1)}, rounded to the nearest multiple of 1e-6 (at least 1e-6)
// and clamped to <= 1/2. Only sizes depend on the exact value.
inline Rat default_delta_samp(std::uint32_t k, std::uint32_t c)
{
    require(c >= 2 && c <= k, "delta_samp: need 2 <= c <= k");
    long double x = std::pow((long double)k, -9.0L / (long double)(c - 1));
    u64 num = (u64)std::llroundl(x * 1000000.0L);
    if (num == 0)
        num = 1;
    if (num > 500000)
        num = 500000;
    return make_rat(num, 1000000);
}

//--------------------------- the hierarchy ---------------------------

struct BunchEntry {
    std::uint32_t level; // j, with v in A_j
    Vertex v;
    Weight dist;
};

struct ClusterData {
    Vertex center = kNoVertex;
    std::uint32_t level = 0;       // center's own level j (center in A_j \ A_{j+1})
    std::vector<Vertex> members;   // sorted; includes the center itself
    std::vector<Weight> dist;      // aligned with members
    std::vector<Vertex> parent;    // canonical next hop toward the center
};

struct Hierarchy {
    LevelParams params;
    std::uint32_t n = 0;
    std::vector<std::vector<Vertex>> levels;  // levels[i] = A_i, sorted; A_F = empty, implied
    std::vector<std::uint32_t> level_of;      // max i with v in A_i
    std::vector<DistanceTree> pivot_forest;   // per level i in [0, F-1]; empty tree if A_i empty
    std::vector<std::vector<BunchEntry>> bunches; // per vertex, sorted by (level, v)
    std::vector<ClusterData> clusters;            // all centers, every level
    std::vector<std::uint32_t> cluster_of_center; // center vertex -> cluster index (or UINT32_MAX)

    bool level_nonempty(std::uint32_t i) const
    {
        return i < levels.size() && !levels[i].empty();
    }

    // canonically nearest A_i vertex; u itself when u in A_i; kNoVertex if A_i empty/unreachable
    Vertex pivot(std::uint32_t i, Vertex u) const
    {
        if (!level_nonempty(i) || pivot_forest[i].dist[u] == kInf)
            return kNoVertex;
        return pivot_forest[i].root[u];
    }

    Weight pivot_dist(std::uint32_t i, Vertex u) const
    {
        if (i >= levels.size() || levels[i].empty())
            return kInf; // covers d(u, p_F(u)) = infinity
        return pivot_forest[i].dist[u];
    }
};

// A_0 = V; A_{i+1} sampled from A_i independently per vertex with probability
// delta * n^{-lambda_i / k}; A_F forced empty. Pivots via nearest-root forests,
// bunches via per-center restricted Dijkstra, clusters by duality.
inline Hierarchy sample_hierarchy(const Graph& g, const LevelParams& params)
{
    const std::uint32_t n = g.n();
    const std::uint32_t F = params.levels;
    require(n >= 1, "sample_hierarchy: empty graph");
    Hierarchy h;
    h.params = params;
    h.n = n;
    LambdaSeq lambda = lambda_sequence(params.c, F);
    long double delta = (long double)params.delta_samp.num / (long double)params.delta_samp.den;

    h.levels.resize(F);
    h.levels[0].resize(n);
    for (Vertex v = 0; v < n; ++v)
        h.levels[0][v] = v;
    for (std::uint32_t i = 0; i + 1 < F; ++i) {
        // probability <= delta <= 1/2, so the 64-bit threshold never saturates
        long double prob = delta * std::pow((long double)n, -(long double)lambda.values[i] / params.k);
        u64 threshold = (u64)(prob * 18446744073709551616.0L);
        for (Vertex v : h.levels[i])
            if (hash_rand(params.seed, i + 1, v) < threshold)
                h.levels[i + 1].push_back(v);
    }

    h.level_of.assign(n, 0);
    for (std::uint32_t i = 1; i < F; ++i)
        for (Vertex v : h.levels[i])
            h.level_of[v] = i;

    h.pivot_forest.resize(F);
    for (std::uint32_t i = 0; i < F; ++i)
        if (!h.levels[i].empty())
            h.pivot_forest[i] = multi_source_forest(g, h.levels[i]);

    // Bunches via the dual view: for every center w at level j, a Dijkstra from
    // w restricted to vertices x with d(w,x) < d(x, p_{j+1}(x)). The region is
    // closed under shortest paths toward w, so distances stay exact.
    h.bunches.assign(n, {});
    h.cluster_of_center.assign(n, UINT32_MAX);
    std::uint32_t finv_level_cache = 0;
    for (std::uint32_t j = 0; j < F; ++j) {
        finv_level_cache = f_inv(params.c, j);
        for (Vertex w : h.levels[j]) {
            if (h.level_of[w] != j)
                continue; // handled at its own (higher) level
            ClusterData cluster;
            cluster.center = w;
            cluster.level = j;
            std::vector<Weight> dist(n, kInf);
            std::vector<Vertex> parent(n, kNoVertex);
            std::vector<bool> settled(n, false);
            using Item = std::pair<Weight, Vertex>;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            auto qualifies = [&](Vertex x, Weight d) { return d < h.pivot_dist(j + 1, x); };
            std::vector<Vertex> reach;
            if (!qualifies(w, 0)) { // possible only via zero-weight edges; then B_j is empty
                h.cluster_of_center[w] = (std::uint32_t)h.clusters.size();
                h.clusters.push_back(std::move(cluster));
                continue;
            }
            dist[w] = 0;
            pq.emplace(0, w);
            while (!pq.empty()) {
                auto [d, x] = pq.top();
                pq.pop();
                if (settled[x] || d != dist[x])
                    continue;
                settled[x] = true;
                if (x != w) {
                    for (const Arc& a : g.adj(x))
                        if (settled[a.to] && sat_add(dist[a.to], a.w) == d) {
                            parent[x] = a.to;
                            break;
                        }
                    check(parent[x] != kNoVertex, "cluster parent not found");
                }
                reach.push_back(x);
                for (const Arc& a : g.adj(x)) {
                    Weight nd = sat_add(d, a.w);
                    if (nd < dist[a.to] && qualifies(a.to, nd)) {
                        dist[a.to] = nd;
                        pq.emplace(nd, a.to);
                    }
                }
            }
            std::sort(reach.begin(), reach.end());
            for (Vertex x : reach)
                h.bunches[x].push_back({j, w, dist[x]});
            for (Vertex x : reach) {
                if (h.level_of[x] < finv_level_cache)
                    continue; // cluster duality also needs x in A_{f^{-1}(j)}
                cluster.members.push_back(x);
                cluster.dist.push_back(dist[x]);
                cluster.parent.push_back(parent[x]);
            }
            h.cluster_of_center[w] = (std::uint32_t)h.clusters.size();
            h.clusters.push_back(std::move(cluster));
        }
    }
    for (auto& b : h.bunches)
        std::sort(b.begin(), b.end(), [](const BunchEntry& a, const BunchEntry& c) {
            return a.level != c.level ? a.level < c.level : a.v < c.v;
        });
    return h;
}

} // namespace spanlab

#endif
