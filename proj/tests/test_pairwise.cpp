#include <catch2/catch_amalgamated.hpp>

#include "spanlab/audit.hpp"
#include "spanlab/generate.hpp"
#include "spanlab/pairwise.hpp"
#include "test_oracles.hpp"

using namespace spanlab;

TEST_CASE("exact preserver")
{
    Graph g = gen_random_connected(100, 300, 1, 50, 23);
    SECTION("a single pair yields exactly its canonical shortest path")
    {
        PairSet pairs{{4, 61}};
        SpannerBundle b = exact_preserver(g, pairs);
        DistanceTree t = dijkstra(g, 4);
        Path canon = canonical_path(t, 61);
        CHECK(b.edges.size() == canon.hops());
        Path got = b.query(4, 61);
        CHECK(got.vertices == canon.vertices);
        CHECK(got.weight == t.dist[61]);
        Path rev = b.query(61, 4);
        CHECK(rev.vertices.front() == 61);
        CHECK(rev.weight == t.dist[61]);
    }
    SECTION("the empty pair set yields the empty spanner")
    {
        SpannerBundle b = exact_preserver(g, {});
        CHECK(b.edges.empty());
        CHECK(b.supported.empty());
        CHECK_THROWS_AS(b.query(0, 1), UnsupportedPair);
    }
    SECTION("100 random pairs: every query weight equals the true distance")
    {
        PairSet pairs = sample_pairs(g.n(), 100, 5);
        SpannerBundle b = exact_preserver(g, pairs);
        CHECK(b.declared_stretch == make_rat(1, 1));
        AuditReport rep = audit_bundle(g, b, pairs);
        CHECK(rep.violations.empty());
        CHECK(rep.max_stretch == make_rat(1, 1));
        CHECK(rep.unsupported == 0);
    }
    SECTION("disconnected pairs are recorded as unsupported")
    {
        Graph split(4, {{0, 1, 3}, {2, 3, 4}});
        SpannerBundle b = exact_preserver(split, {{0, 1}, {0, 2}});
        REQUIRE(b.unsupported.size() == 1);
        CHECK(b.unsupported[0] == VPair{0, 2});
        CHECK(b.supported.size() == 1);
    }
}

TEST_CASE("hop path extraction")
{
    Graph g = gen_random_connected(60, 180, 1, 100, 31);
    HopsetBuild hb = build_hopset(g, 4, 2, 8);
    const Hopset& h = hb.hopset;

    SECTION("a graph edge pair comes back as a one-hop path")
    {
        const Edge& e = g.edge(0);
        // only when the edge is itself a shortest path; pick one that is
        DistanceTree t = dijkstra(g, e.u);
        PairSet pairs{{e.u, e.v}};
        auto paths = extract_hop_paths(g, h, pairs, h.declared_hopbound);
        REQUIRE(paths[0].has_value());
        CHECK(paths[0]->weight == t.dist[e.v]);
        CHECK(paths[0]->hops() >= 1);
    }
    SECTION("a hopset edge pair takes a single hop")
    {
        const HopsetEdge& e = h.edges[h.edges.size() / 2];
        auto paths = extract_hop_paths(g, h, {{e.u, e.v}}, h.declared_hopbound);
        REQUIRE(paths[0].has_value());
        CHECK(paths[0]->hops() <= 1);
        CHECK(paths[0]->weight == e.w);
    }
    SECTION("random pairs respect the declared stretch and hop budget")
    {
        PairSet pairs = sample_pairs(g.n(), 60, 17);
        auto paths = extract_hop_paths(g, h, pairs, h.declared_hopbound);
        auto apsp = test_oracle::floyd_warshall(g);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            REQUIRE(paths[i].has_value());
            CHECK(paths[i]->hops() <= h.declared_hopbound);
            CHECK(weight_within(paths[i]->weight, h.declared_stretch,
                                apsp[pairs[i].u][pairs[i].v]));
        }
    }
}

TEST_CASE("pairwise composition")
{
    Graph g = gen_random_connected(80, 240, 1, 100, 41);
    PairSet pairs = sample_pairs(g.n(), 60, 3);

    SECTION("declared stretch is 8c+3 with the exact-preserver inner")
    {
        SpannerBundle b = compose_pairwise(g, pairs, 4, 2, 11);
        CHECK(b.declared_stretch == make_rat(19, 1));
        AuditReport rep = audit_bundle(g, b, pairs);
        CHECK(rep.violations.empty());
    }
    SECTION("adjacent pairs are answered with stretch 1")
    {
        PairSet adj;
        for (std::size_t i = 0; i < 20; ++i)
            adj.push_back({g.edge(i * 3).u, g.edge(i * 3).v});
        validate_pairs(g.n(), adj);
        SpannerBundle b = compose_pairwise(g, adj, 4, 2, 11);
        for (const VPair& p : adj) {
            DistanceTree t = dijkstra(g, p.u);
            CHECK(b.query(p.u, p.v).weight == t.dist[p.v]);
        }
    }
    SECTION("partitioned variant covers H1/H2 by their preservers")
    {
        SpannerBundle b = compose_pairwise_partitioned(g, pairs, 4, 2, 11);
        CHECK(b.declared_stretch == make_rat(19, 1));
        auto* oracle = dynamic_cast<const ComposeOracle*>(b.oracle.get());
        REQUIRE(oracle != nullptr);
        CHECK(oracle->partitioned);
        // the spanner contains the H1/H2 preserver edge sets
        std::unordered_set<u64> sset;
        for (const Edge& e : b.edges)
            sset.insert(edge_key(e.u, e.v));
        for (const Edge& e : oracle->h1.edge_set())
            CHECK(sset.count(edge_key(e.u, e.v)) == 1);
        for (const Edge& e : oracle->h2.edge_set())
            CHECK(sset.count(edge_key(e.u, e.v)) == 1);
        // inner pair set is exactly H3
        HopsetBuild hb = build_hopset(g, 4, 2, 11);
        CHECK(oracle->inner.supported.size() + oracle->inner.unsupported.size() ==
              hb.hopset.count_tag(3));
        AuditReport rep = audit_bundle(g, b, pairs);
        CHECK(rep.violations.empty());
    }
    SECTION("H3 empty at the default delta means the inner builder gets nothing")
    {
        // k = 4, c = 2 gives delta = 4e-6; at n = 80 no vertex survives level 1
        SpannerBundle b = compose_pairwise_partitioned(g, pairs, 4, 2, 13);
        auto* oracle = dynamic_cast<const ComposeOracle*>(b.oracle.get());
        REQUIRE(oracle != nullptr);
        CHECK(oracle->inner.supported.empty());
    }
    SECTION("construction is deterministic: identical S and identical paths")
    {
        SpannerBundle a = compose_pairwise_partitioned(g, pairs, 4, 2, 19);
        SpannerBundle b = compose_pairwise_partitioned(g, pairs, 4, 2, 19);
        REQUIRE(a.edges.size() == b.edges.size());
        for (std::size_t i = 0; i < a.edges.size(); ++i) {
            CHECK(a.edges[i].u == b.edges[i].u);
            CHECK(a.edges[i].v == b.edges[i].v);
        }
        for (const VPair& p : pairs)
            CHECK(a.query(p.u, p.v).vertices == b.query(p.u, p.v).vertices);
    }
    SECTION("splice weight accounting adds up")
    {
        SpannerBundle b = compose_pairwise_partitioned(g, pairs, 4, 2, 23);
        auto* oracle = dynamic_cast<const ComposeOracle*>(b.oracle.get());
        REQUIRE(oracle != nullptr);
        for (std::size_t i = 0; i < b.supported.size(); ++i) {
            const VPair& pr = b.supported[i];
            Path p = b.query(pr.u, pr.v);
            CHECK(path_valid_in(g, p)); // recomputes the weight from graph edges
            const HopPath& hp = oracle->paths[i];
            CHECK(p.weight <= hp.weight); // splices are exact here, never longer
        }
    }
}

TEST_CASE("audit report mechanics")
{
    Graph g = gen_random_connected(40, 90, 1, 30, 51);
    SECTION("the whole graph as a spanner with an exact oracle has stretch 1")
    {
        PairSet pairs = sample_pairs(g.n(), 30, 2);
        SpannerBundle b = exact_preserver(g, pairs);
        b.edges.clear();
        for (const Edge& e : g.edges())
            b.edges.push_back(e);
        canonicalize_edges(b.edges);
        AuditReport rep = audit_bundle(g, b, pairs);
        CHECK(rep.max_stretch == make_rat(1, 1));
        CHECK(rep.violations.empty());
        CHECK(rep.edge_count == g.m());
    }
    SECTION("an empty spanner makes connected pairs infinite violations")
    {
        SpannerBundle b = exact_preserver(g, {});
        AuditReport rep = audit_bundle(g, b, {{0, 1}});
        REQUIRE(rep.violations.size() == 1);
        CHECK(rep.violations[0].reported == kInf);
        CHECK(rep.stretch_infinite);
    }
    SECTION("sweep: empty config emits only the header")
    {
        std::stringstream ss;
        sweep(ss, SweepConfig{});
        CHECK(ss.str() == csv_header() + "\n");
    }
    SECTION("sweep row duplicates a manual audit's numbers")
    {
        SweepRun run;
        run.family = "random";
        run.gen.n = 50;
        run.gen.m = 120;
        run.k = 4;
        run.c = 2;
        run.npairs = 40;
        run.seed = 6;
        std::stringstream ss;
        sweep(ss, SweepConfig{{run}});
        Graph gg = gen_random_connected(50, 120, 1, 100, 6);
        PairSet pp = sample_pairs(50, 40, hash_rand(6, 0x9a175));
        SpannerBundle b = compose_pairwise_partitioned(gg, pp, 4, 2, 6);
        AuditReport rep = audit_bundle(gg, b, pp);
        std::string line;
        std::getline(ss, line); // header
        std::getline(ss, line);
        // numeric fields after the family name must match the manual audit
        std::string expect = "," + std::to_string(rep.n) + "," + std::to_string(rep.m) + ",4,2," +
                             std::to_string(rep.pair_count) + ",6," +
                             std::to_string(rep.edge_count) + "," +
                             std::to_string(rep.overhead.num) + "," +
                             std::to_string(rep.overhead.den) + "," +
                             std::to_string(rep.max_stretch.num) + "," +
                             std::to_string(rep.max_stretch.den) + ",0,0";
        CHECK(line == "random" + expect);
    }
}
