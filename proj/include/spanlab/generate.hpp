#ifndef SPANLAB_GENERATE_HPP
#define SPANLAB_GENERATE_HPP

#include "spanlab/girth.hpp"
#include "spanlab/graph.hpp"

namespace spanlab {

// Connected random graph: random spanning tree plus uniformly sampled extra
// edges, weights uniform in [wmin, wmax]. Deterministic per seed.
inline Graph gen_random_connected(std::uint32_t n, std::size_t m, Weight wmin, Weight wmax,
                                  u64 seed)
{
    require(n >= 1, "gen random: n must be positive");
    require(wmin >= 1 && wmin <= wmax && wmax <= kMaxEdgeWeight, "gen random: bad weight range");
    require(m + 1 >= n, "gen random: too few edges for a connected graph");
    require(m <= (std::size_t)n * (n - 1) / 2, "gen random: more edges than vertex pairs");
    Rng rng(seed);
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v)
        order[v] = v;
    shuffle(order, rng);
    std::vector<Edge> edges;
    edges.reserve(m);
    std::unordered_set<u64> used;
    auto weight = [&] { return wmin + rng.below(wmax - wmin + 1); };
    for (std::uint32_t i = 1; i < n; ++i) {
        Vertex a = order[i], b = order[rng.below(i)];
        edges.push_back({a, b, weight()});
        used.insert(edge_key(a, b));
    }
    while (edges.size() < m) {
        Vertex a = (Vertex)rng.below(n), b = (Vertex)rng.below(n);
        if (a == b || !used.insert(edge_key(a, b)).second)
            continue;
        edges.push_back({a, b, weight()});
    }
    return Graph(n, std::move(edges));
}

inline Graph gen_grid(std::uint32_t rows, std::uint32_t cols, Weight w = 1)
{
    require(rows >= 1 && cols >= 1, "gen grid: empty grid");
    std::vector<Edge> edges;
    auto id = [cols](std::uint32_t r, std::uint32_t c) { return r * cols + c; };
    for (std::uint32_t r = 0; r < rows; ++r)
        for (std::uint32_t c = 0; c < cols; ++c) {
            if (c + 1 < cols)
                edges.push_back({id(r, c), id(r, c + 1), w});
            if (r + 1 < rows)
                edges.push_back({id(r, c), id(r + 1, c), w});
        }
    return Graph(rows * cols, std::move(edges));
}

// 10 vertices, 3-regular, girth 5: outer 5-cycle, inner pentagram, spokes.
inline Graph gen_petersen()
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.push_back({i, (Vertex)((i + 1) % 5), 1});
        edges.push_back({i, (Vertex)(5 + i), 1});
        edges.push_back({(Vertex)(5 + i), (Vertex)(5 + (i + 2) % 5), 1});
    }
    return Graph(10, std::move(edges));
}

// 14 vertices, 3-regular, girth 6 (LCF notation [5,-5]^7).
inline Graph gen_heawood()
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 14; ++i)
        edges.push_back({i, (Vertex)((i + 1) % 14), 1});
    for (Vertex i = 0; i < 14; i += 2)
        edges.push_back({i, (Vertex)((i + 5) % 14), 1});
    return Graph(14, std::move(edges));
}

// Random d-regular graph via the pairing model, rejection sampled until the
// girth exceeds girth_above (0 accepts any simple d-regular graph).
inline Graph gen_random_regular(std::uint32_t n, std::uint32_t d, u64 girth_above, u64 seed,
                                std::uint32_t max_tries = 2000)
{
    require(d >= 1 && d < n, "gen regular: need 1 <= degree < n");
    require((u64)n * d % 2 == 0, "gen regular: n*degree must be even");
    for (std::uint32_t attempt = 0; attempt < max_tries; ++attempt) {
        Rng rng(hash_rand(seed, 0x7e67a1a5u, attempt));
        std::vector<Vertex> stubs;
        stubs.reserve((std::size_t)n * d);
        for (Vertex v = 0; v < n; ++v)
            for (std::uint32_t i = 0; i < d; ++i)
                stubs.push_back(v);
        shuffle(stubs, rng);
        std::vector<Edge> edges;
        std::unordered_set<u64> used;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            Vertex a = stubs[i], b = stubs[i + 1];
            if (a == b || !used.insert(edge_key(a, b)).second)
                ok = false;
            else
                edges.push_back({a, b, 1});
        }
        if (!ok)
            continue;
        Graph g(n, std::move(edges));
        if (girth(g) > girth_above)
            return g;
    }
    throw InputError("gen regular: girth target unreachable within retry budget");
}

struct GenParams {
    std::uint32_t n = 0;
    std::size_t m = 0;
    Weight wmin = 1, wmax = 100;
    std::uint32_t rows = 0, cols = 0;
    std::uint32_t degree = 0;
    u64 girth_above = 0;
};

inline Graph generate(const std::string& family, const GenParams& p, u64 seed)
{
    if (family == "random")
        return gen_random_connected(p.n, p.m, p.wmin, p.wmax, seed);
    if (family == "grid")
        return gen_grid(p.rows, p.cols);
    if (family == "petersen")
        return gen_petersen();
    if (family == "heawood")
        return gen_heawood();
    if (family == "regular")
        return gen_random_regular(p.n, p.degree, p.girth_above, seed);
    throw InputError("unknown graph family: " + family);
}

inline bool family_is_randomized(const std::string& family)
{
    return family == "random" || family == "regular";
}

} // namespace spanlab

#endif
