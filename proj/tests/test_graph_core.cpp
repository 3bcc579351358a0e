#include <catch2/catch_amalgamated.hpp>

#include "spanlab/generate.hpp"
#include "spanlab/girth.hpp"
#include "spanlab/shortest_paths.hpp"
#include "test_oracles.hpp"

using namespace spanlab;

namespace {

Graph path_graph(std::initializer_list<Weight> weights)
{
    std::vector<Edge> edges;
    Vertex v = 0;
    for (Weight w : weights) {
        edges.push_back({v, v + 1, w});
        ++v;
    }
    return Graph(v + 1, std::move(edges));
}

} // namespace

TEST_CASE("graph validation rejects bad input")
{
    CHECK_THROWS_AS(Graph(2, {{0, 0, 1}}), InputError);                 // self loop
    CHECK_THROWS_AS(Graph(2, {{0, 2, 1}}), InputError);                 // out of range
    CHECK_THROWS_AS(Graph(2, {{0, 1, 1}, {1, 0, 2}}), InputError);      // duplicate
    CHECK_THROWS_AS(Graph(2, {{0, 1, (Weight{1} << 41)}}), InputError); // weight
    CHECK_NOTHROW(Graph(3, {{0, 1, 0}}));                               // zero weight is legal
}

TEST_CASE("dijkstra on a two-edge path")
{
    Graph g = path_graph({1, 2});
    DistanceTree t = dijkstra(g, 0);
    CHECK(t.dist == std::vector<Weight>{0, 1, 3});
    CHECK(t.parent[0] == kNoVertex);
    CHECK(t.parent[2] == 1);
}

TEST_CASE("dijkstra on a single vertex")
{
    Graph g(1, {});
    DistanceTree t = dijkstra(g, 0);
    CHECK(t.dist == std::vector<Weight>{0});
    CHECK(t.parent[0] == kNoVertex);
}

TEST_CASE("dijkstra rejects an out-of-range source")
{
    Graph g = path_graph({1});
    CHECK_THROWS_AS(dijkstra(g, 5), InputError);
}

TEST_CASE("petersen eccentricity is 2 from every source")
{
    Graph g = gen_petersen();
    for (Vertex s = 0; s < g.n(); ++s) {
        auto brute = test_oracle::bfs_hops(g, s);
        DistanceTree t = dijkstra(g, s);
        Weight mx = 0;
        for (Vertex v = 0; v < g.n(); ++v) {
            CHECK(t.dist[v] == brute[v]);
            mx = std::max(mx, t.dist[v]);
        }
        CHECK(mx == 2);
    }
}

TEST_CASE("multi-source forest basics")
{
    Graph g = path_graph({1, 1, 1});
    SECTION("all vertices as roots: zero distances, empty forest")
    {
        DistanceTree t = multi_source_forest(g, {0, 1, 2, 3});
        for (Vertex v = 0; v < 4; ++v) {
            CHECK(t.dist[v] == 0);
            CHECK(t.parent[v] == kNoVertex);
        }
    }
    SECTION("roots at both ends split the path")
    {
        DistanceTree t = multi_source_forest(g, {0, 3});
        CHECK(t.root[1] == 0);
        CHECK(t.root[2] == 3);
    }
    SECTION("empty root set is an error")
    {
        CHECK_THROWS_AS(multi_source_forest(g, {}), InputError);
    }
}

TEST_CASE("multi-source forest on a random graph")
{
    Graph g = gen_random_connected(50, 120, 1, 20, 77);
    std::vector<Vertex> roots{3, 17, 29, 44};
    DistanceTree f = multi_source_forest(g, roots);

    // forest edge count and acyclicity
    std::size_t edges = 0;
    test_oracle::UnionFind uf(g.n());
    for (Vertex v = 0; v < g.n(); ++v)
        if (f.parent[v] != kNoVertex) {
            ++edges;
            CHECK(uf.join(v, f.parent[v]));
        }
    CHECK(edges <= g.n() - roots.size());

    // dist equals the minimum over per-root dijkstra runs; parents reach the root
    std::vector<DistanceTree> per_root;
    for (Vertex r : roots)
        per_root.push_back(dijkstra(g, r));
    for (Vertex v = 0; v < g.n(); ++v) {
        Weight best = kInf;
        for (auto& t : per_root)
            best = std::min(best, t.dist[v]);
        CHECK(f.dist[v] == best);
        Vertex x = v;
        while (f.parent[x] != kNoVertex)
            x = f.parent[x];
        CHECK(x == f.root[v]);
    }
}

TEST_CASE("canonical paths")
{
    SECTION("root gives the empty path")
    {
        Graph g = path_graph({1, 1});
        DistanceTree t = dijkstra(g, 0);
        Path p = canonical_path(t, 0);
        CHECK(p.vertices == std::vector<Vertex>{0});
        CHECK(p.weight == 0);
        CHECK(p.hops() == 0);
    }
    SECTION("far end of a path graph gives the whole path")
    {
        Graph g = path_graph({2, 3, 4});
        DistanceTree t = dijkstra(g, 0);
        Path p = canonical_path(t, 3);
        CHECK(p.vertices == std::vector<Vertex>{0, 1, 2, 3});
        CHECK(p.weight == 9);
    }
    SECTION("weights match distances on a random graph, with prefix consistency")
    {
        Graph g = gen_random_connected(40, 100, 1, 9, 5);
        DistanceTree t = dijkstra(g, 7);
        for (Vertex v = 0; v < g.n(); ++v) {
            Path p = canonical_path(t, v);
            CHECK(p.weight == t.dist[v]);
            CHECK(path_valid_in(g, p));
            // subpath consistency: the path to any vertex on p is a prefix
            Path q = canonical_path(t, p.vertices[p.vertices.size() / 2]);
            CHECK(std::equal(q.vertices.begin(), q.vertices.end(), p.vertices.begin()));
        }
    }
    SECTION("unreachable vertex is an error")
    {
        Graph g(3, {{0, 1, 1}});
        DistanceTree t = dijkstra(g, 0);
        CHECK_THROWS_AS(canonical_path(t, 2), InputError);
    }
}

TEST_CASE("hop-limited distances")
{
    SECTION("budget zero reaches only the source")
    {
        Graph g = path_graph({1, 1});
        HopTable t = hop_limited(g, 0, 0);
        CHECK(t.dist_at(0, 0) == 0);
        CHECK(t.dist_at(1, 0) == kInf);
    }
    SECTION("budget n-1 equals dijkstra everywhere")
    {
        Graph g = gen_random_connected(30, 70, 1, 50, 3);
        for (Vertex s : {0u, 7u, 29u}) {
            HopTable t = hop_limited(g, s, g.n() - 1);
            DistanceTree d = dijkstra(g, s);
            for (Vertex v = 0; v < g.n(); ++v)
                CHECK(t.dist_at(v, g.n() - 1) == d.dist[v]);
        }
    }
    SECTION("triangle with a heavy shortcut edge")
    {
        Graph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 5}});
        HopTable t = hop_limited(g, 0, 4);
        CHECK(t.dist_at(2, 1) == 5);
        CHECK(t.dist_at(2, 2) == 2);
    }
    SECTION("agrees with exhaustive hop-bounded walks on a tiny graph")
    {
        Graph g = gen_random_connected(8, 14, 1, 9, 11);
        for (u64 beta = 0; beta <= 4; ++beta) {
            HopTable t = hop_limited(g, 0, beta);
            for (Vertex v = 0; v < g.n(); ++v)
                CHECK(t.dist_at(v, beta) == test_oracle::best_hop_walk(g, 0, v, beta));
        }
    }
    SECTION("reconstructed paths respect weight and hop bounds")
    {
        Graph g = gen_random_connected(25, 60, 1, 30, 13);
        HopTable t = hop_limited(g, 2, 3);
        for (Vertex v = 0; v < g.n(); ++v) {
            if (t.final_dist(v) == kInf)
                continue;
            Path p = hop_limited_path(t, v);
            CHECK(p.hops() <= 3);
            CHECK(p.weight == t.dist_at(v, 3));
            CHECK(path_valid_in(g, p));
        }
    }
}

TEST_CASE("girth")
{
    SECTION("trees have infinite girth")
    {
        CHECK(girth(path_graph({1, 1, 1, 1})) == kInfGirth);
        CHECK(girth(Graph(5, {})) == kInfGirth);
    }
    SECTION("K4 has girth 3")
    {
        Graph k4(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
        CHECK(girth(k4) == 3);
    }
    SECTION("named graphs, against the edge-removal oracle")
    {
        CHECK(girth(gen_petersen()) == 5);
        CHECK(test_oracle::brute_girth(gen_petersen()) == 5);
        CHECK(girth(gen_heawood()) == 6);
        CHECK(test_oracle::brute_girth(gen_heawood()) == 6);
    }
    SECTION("random graphs agree with the oracle")
    {
        for (u64 seed : {1u, 2u, 3u, 4u}) {
            Graph g = gen_random_connected(18, 25, 1, 1, seed);
            CHECK(girth(g) == test_oracle::brute_girth(g));
        }
    }
}

TEST_CASE("generators")
{
    SECTION("petersen and heawood shapes")
    {
        Graph p = gen_petersen();
        CHECK(p.n() == 10);
        CHECK(p.m() == 15);
        Graph h = gen_heawood();
        CHECK(h.n() == 14);
        CHECK(h.m() == 21);
        for (Vertex v = 0; v < h.n(); ++v)
            CHECK(h.degree(v) == 3);
    }
    SECTION("random generation is deterministic per seed")
    {
        Graph a = gen_random_connected(200, 800, 1, 100, 99);
        Graph b = gen_random_connected(200, 800, 1, 100, 99);
        Graph c = gen_random_connected(200, 800, 1, 100, 100);
        REQUIRE(a.m() == b.m());
        bool same = true, diff = false;
        for (std::size_t i = 0; i < a.m(); ++i) {
            const Edge &ea = a.edge(i), &eb = b.edge(i), &ec = c.edge(i);
            same &= ea.u == eb.u && ea.v == eb.v && ea.w == eb.w;
            diff |= ea.u != ec.u || ea.v != ec.v || ea.w != ec.w;
        }
        CHECK(same);
        CHECK(diff);
        // connectivity
        DistanceTree t = dijkstra(a, 0);
        for (Vertex v = 0; v < a.n(); ++v)
            CHECK(t.dist[v] != kInf);
    }
    SECTION("random regular with a girth target")
    {
        Graph g = gen_random_regular(24, 3, 4, 17);
        for (Vertex v = 0; v < g.n(); ++v)
            CHECK(g.degree(v) == 3);
        CHECK(girth(g) > 4);
        CHECK_THROWS_AS(gen_random_regular(5, 3, 0, 1), InputError); // odd n*d
    }
    SECTION("grid")
    {
        Graph g = gen_grid(3, 4);
        CHECK(g.n() == 12);
        CHECK(g.m() == 17);
    }
}

TEST_CASE("undirected distance symmetry, spot-checked")
{
    Graph g = gen_random_connected(60, 150, 1, 40, 21);
    Rng rng(5);
    std::vector<DistanceTree> cache(g.n());
    std::vector<bool> have(g.n(), false);
    auto tree = [&](Vertex s) -> const DistanceTree& {
        if (!have[s]) {
            cache[s] = dijkstra(g, s);
            have[s] = true;
        }
        return cache[s];
    };
    for (int i = 0; i < 100; ++i) {
        Vertex u = (Vertex)rng.below(g.n()), v = (Vertex)rng.below(g.n());
        CHECK(tree(u).dist[v] == tree(v).dist[u]);
    }
}

TEST_CASE("canonical parents are rebuild-deterministic")
{
    Graph g = gen_random_connected(80, 240, 1, 10, 31);
    DistanceTree a = dijkstra(g, 5), b = dijkstra(g, 5);
    CHECK(a.parent == b.parent);
    DistanceTree fa = multi_source_forest(g, {1, 2, 3}), fb = multi_source_forest(g, {1, 2, 3});
    CHECK(fa.parent == fb.parent);
    CHECK(fa.root == fb.root);
}

TEST_CASE("graph and pairs file round trips")
{
    Graph g = gen_random_connected(25, 60, 1, 100, 8);
    std::stringstream ss;
    write_graph(ss, g);
    ss << "# trailing comment\n";
    Graph back = read_graph(ss);
    REQUIRE(back.n() == g.n());
    REQUIRE(back.m() == g.m());
    for (std::size_t i = 0; i < g.m(); ++i) {
        CHECK(back.edge(i).u == g.edge(i).u);
        CHECK(back.edge(i).v == g.edge(i).v);
        CHECK(back.edge(i).w == g.edge(i).w);
    }

    PairSet pairs{{0, 3}, {5, 9}};
    std::stringstream ps;
    ps << "# header comment\n";
    write_pairs(ps, pairs);
    PairSet pback = read_pairs(ps);
    CHECK(pback == pairs);

    std::stringstream bad("graph 2 1\n0 5 1\n");
    CHECK_THROWS_AS(read_graph(bad), InputError);
}
