#ifndef SPANLAB_EMULATOR_HPP
#define SPANLAB_EMULATOR_HPP

#include <cmath>

#include "spanlab/shortest_paths.hpp"

namespace spanlab {

// Finite metric exposed row by row; rows are only pulled during construction.
class Metric {
public:
    virtual ~Metric() = default;
    virtual std::uint32_t size() const = 0;
    virtual void row(std::uint32_t i, std::vector<Weight>& out) const = 0;
};

class DenseMetric : public Metric {
public:
    explicit DenseMetric(std::vector<std::vector<Weight>> m) : m_(std::move(m)) {}

    std::uint32_t size() const override { return (std::uint32_t)m_.size(); }
    void row(std::uint32_t i, std::vector<Weight>& out) const override { out = m_[i]; }

private:
    std::vector<std::vector<Weight>> m_;
};

// d_G restricted to a vertex subset; one Dijkstra per requested row.
class GraphSubsetMetric : public Metric {
public:
    GraphSubsetMetric(const Graph& g, std::vector<Vertex> verts)
        : g_(&g), verts_(std::move(verts))
    {
        for (Vertex v : verts_)
            require(v < g.n(), "metric: subset vertex out of range");
    }

    std::uint32_t size() const override { return (std::uint32_t)verts_.size(); }

    void row(std::uint32_t i, std::vector<Weight>& out) const override
    {
        DistanceTree t = dijkstra(*g_, verts_[i]);
        out.resize(verts_.size());
        for (std::uint32_t j = 0; j < verts_.size(); ++j)
            out[j] = t.dist[verts_[j]];
    }

    const std::vector<Vertex>& vertices() const { return verts_; }

private:
    const Graph* g_;
    std::vector<Vertex> verts_;
};

//--------------------------- Thorup-Zwick emulator ---------------------------

struct EmEntry {
    std::uint32_t v;
    Weight dist;
    std::uint32_t level;
};

struct EmEdge {
    std::uint32_t u, v;
    Weight w;
};

// Classic (2k-1)-emulator state over metric indices 0..n-1. Pivot and bunch
// pairs form the emulator edge set; every query answer uses at most two of them.
struct EmulatorBundle {
    std::uint32_t n = 0;
    std::uint32_t k_em = 0;
    u64 seed = 0;
    std::vector<std::vector<std::uint32_t>> levels;               // A_0 .. A_{k-1}, sorted
    std::vector<std::vector<std::pair<std::uint32_t, Weight>>> pivots; // per u, k_em entries
    std::vector<std::vector<EmEntry>> bunches;                    // per u, sorted by v
    std::vector<EmEdge> edges;                                    // canonical, deduplicated

    bool bunch_lookup(std::uint32_t u, std::uint32_t v, Weight* d) const
    {
        const auto& b = bunches[u];
        auto it = std::lower_bound(b.begin(), b.end(), v,
                                   [](const EmEntry& e, std::uint32_t x) { return e.v < x; });
        if (it != b.end() && it->v == v) {
            *d = it->dist;
            return true;
        }
        return false;
    }

    // u-w-v through the pivot-swapping walk; 0/1-edge answers when degenerate.
    Path query(std::uint32_t u, std::uint32_t v) const
    {
        require(u < n && v < n, "emulator query: index out of range");
        if (u == v)
            return Path{{u}, 0};
        std::uint32_t a = u, b = v;
        std::uint32_t w = a;
        Weight dw = 0;
        for (std::uint32_t i = 0;; ++i) {
            Weight dbw;
            if (w != UINT32_MAX && dw != kInf && bunch_lookup(b, w, &dbw)) {
                Path p;
                p.vertices.push_back(u);
                if (w != u)
                    p.vertices.push_back(w);
                if (w != v)
                    p.vertices.push_back(v);
                p.weight = sat_add(dw, dbw);
                return p;
            }
            if (i + 1 >= k_em)
                throw UnsupportedPair("emulator query: endpoints not connected in the metric");
            std::swap(a, b);
            w = pivots[a][i + 1].first;
            dw = pivots[a][i + 1].second;
        }
    }
};

inline Path query_emulator(const EmulatorBundle& em, std::uint32_t u, std::uint32_t v)
{
    return em.query(u, v);
}

inline EmulatorBundle build_tz_emulator(const Metric& metric, std::uint32_t k_em, u64 seed)
{
    const std::uint32_t n = metric.size();
    require(k_em >= 1, "emulator: k_em must be at least 1");
    require(n >= 1, "emulator: empty metric");
    EmulatorBundle em;
    em.n = n;
    em.k_em = k_em;
    em.seed = seed;

    // A_0 = all, A_{i+1} sampled with probability n^{-1/k_em}, A_{k_em} = empty
    em.levels.resize(k_em);
    em.levels[0].resize(n);
    for (std::uint32_t v = 0; v < n; ++v)
        em.levels[0][v] = v;
    long double prob = std::pow((long double)n, -1.0L / (long double)k_em);
    if (prob > 0.9999L)
        prob = 0.9999L;
    u64 threshold = (u64)(prob * 18446744073709551616.0L);
    for (std::uint32_t i = 0; i + 1 < k_em; ++i)
        for (std::uint32_t v : em.levels[i])
            if (hash_rand(seed, 0xe31u + i, v) < threshold)
                em.levels[i + 1].push_back(v);

    std::vector<std::uint32_t> level_of(n, 0);
    for (std::uint32_t i = 1; i < k_em; ++i)
        for (std::uint32_t v : em.levels[i])
            level_of[v] = i;

    em.pivots.assign(n, {});
    em.bunches.assign(n, {});
    std::vector<Weight> row;
    for (std::uint32_t u = 0; u < n; ++u) {
        metric.row(u, row);
        check(row.size() == n && row[u] == 0, "metric row malformed");
        auto& piv = em.pivots[u];
        piv.assign(k_em, {UINT32_MAX, kInf});
        for (std::uint32_t i = 0; i < k_em; ++i)
            for (std::uint32_t x : em.levels[i])
                if (row[x] < piv[i].second || (row[x] == piv[i].second && x < piv[i].first))
                    piv[i] = {x, row[x]};
        for (std::uint32_t x = 0; x < n; ++x) {
            if (row[x] == kInf)
                continue;
            std::uint32_t lvl = level_of[x];
            Weight next_pivot = lvl + 1 < k_em ? piv[lvl + 1].second : kInf;
            if (row[x] < next_pivot)
                em.bunches[u].push_back({x, row[x], lvl});
        }
    }

    std::unordered_set<u64> seen;
    auto add_edge = [&](std::uint32_t a, std::uint32_t b, Weight w) {
        if (a == b || w == kInf)
            return;
        if (a > b)
            std::swap(a, b);
        if (seen.insert(((u64)a << 32) | b).second)
            em.edges.push_back({a, b, w});
    };
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t i = 0; i < k_em; ++i)
            add_edge(u, em.pivots[u][i].first == UINT32_MAX ? u : em.pivots[u][i].first,
                     em.pivots[u][i].second);
        for (const EmEntry& e : em.bunches[u])
            add_edge(u, e.v, e.dist);
    }
    std::sort(em.edges.begin(), em.edges.end(), [](const EmEdge& a, const EmEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return em;
}

} // namespace spanlab

#endif
