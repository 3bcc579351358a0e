#include <catch2/catch_amalgamated.hpp>

#include "spanlab/audit.hpp"
#include "spanlab/generate.hpp"
#include "spanlab/reductions.hpp"
#include "test_oracles.hpp"

using namespace spanlab;

TEST_CASE("subset parameter case split")
{
    // |A| = n: q = 1 + 1/k, p = k
    CHECK(subset_params(1024, 1024, 3).p == 3);
    CHECK(subset_params(65536, 65536, 7).p == 7);
    // |A| = sqrt(n), k = 1: q = 1 -> p = ceil(log2 n)
    CHECK(subset_params(256, 16, 1).p == 8);
    // |A| = sqrt(n), k = 3: q = 2/3 -> p = ceil(log2 n)
    CHECK(subset_params(256, 16, 3).p == 8);
    CHECK(subset_params(4096, 64, 3).p == 12);
}

TEST_CASE("exact prefix schedules")
{
    SECTION("doubling: f and its inverse at landmark values")
    {
        CHECK(schedule_f(ScheduleKind::doubling, 65536, 1) == 256);
        CHECK(schedule_f(ScheduleKind::doubling, 65536, 2) == 4096);
        CHECK(schedule_f_inv(ScheduleKind::doubling, 65536, 4096) == 2);
        CHECK(schedule_f_inv(ScheduleKind::doubling, 65536, 4097) == 3);
        CHECK(schedule_f(ScheduleKind::doubling, 4096, 1) == 64);
        CHECK(schedule_f(ScheduleKind::doubling, 4096, 2) == 512);
        CHECK(schedule_f(ScheduleKind::doubling, 4096, 3) == 1448); // floor(4096^{7/8})
    }
    SECTION("power: f(i) = floor(n^{1-1/i})")
    {
        CHECK(schedule_f(ScheduleKind::power, 4096, 1) == 1);
        CHECK(schedule_f(ScheduleKind::power, 4096, 2) == 64);
        CHECK(schedule_f(ScheduleKind::power, 4096, 3) == 256);
        CHECK(schedule_f_inv(ScheduleKind::power, 4096, 64) == 2);
        CHECK(schedule_f_inv(ScheduleKind::power, 4096, 65) == 3);
    }
    SECTION("f_inv is the exact min-index form of the ceil formulas")
    {
        for (std::uint32_t n : {100u, 4096u, 5000u})
            for (std::uint32_t j = 2; j <= n / 2; j = j * 3 / 2 + 1)
                for (ScheduleKind kind : {ScheduleKind::power, ScheduleKind::doubling}) {
                    std::uint32_t i = schedule_f_inv(kind, n, j);
                    CHECK(schedule_f(kind, n, i) >= j);
                    if (i > 1)
                        CHECK(schedule_f(kind, n, i - 1) < j);
                }
    }
    SECTION("ranks beyond the image of f have no inverse")
    {
        // f(i) = floor(n^{1-eps}) never reaches n itself
        CHECK_THROWS_AS(schedule_f_inv(ScheduleKind::doubling, 4096, 4096), InputError);
        CHECK_THROWS_AS(schedule_f_inv(ScheduleKind::power, 4096, 4096), InputError);
    }
}

TEST_CASE("per-prefix level count formula")
{
    CHECK(k_of_prefix(1ull << 6, 1ull << 20, 16.0) == 1u);  // 6/(20-8-6)
    CHECK(k_of_prefix(1ull << 8, 1ull << 16, 4.0) == 2u);   // 8/(16-4-8)
    CHECK(!k_of_prefix(1ull << 12, 1ull << 16, 4.0));       // denominator 0: excluded
    CHECK(!k_of_prefix(1ull << 14, 1ull << 16, 4.0));       // denominator < 0
    CHECK(k_of_prefix(1, 1ull << 16, 2.0) == 1u);           // log|A| = 0 clamps to 1
}

TEST_CASE("subset spanner reduction")
{
    Graph g = gen_random_connected(80, 200, 1, 40, 61);
    SECTION("a singleton subset yields the empty spanner")
    {
        SubsetBundle sb = build_subset(g, {5}, 2, 1);
        CHECK(sb.bundle.edges.empty());
        Path p = sb.bundle.query(5, 5);
        CHECK(p.hops() == 0);
        CHECK_THROWS_AS(sb.bundle.query(5, 6), UnsupportedPair);
    }
    SECTION("k_em = 2 with the exact inner declares stretch 3 and meets it")
    {
        std::vector<Vertex> A;
        for (Vertex v = 0; v < 16; ++v)
            A.push_back(v * 5);
        SubsetBundle sb = build_subset(g, A, 2, 7);
        CHECK(sb.bundle.declared_stretch == make_rat(3, 1));
        auto apsp = test_oracle::floyd_warshall(g);
        for (Vertex a : A)
            for (Vertex b : A) {
                if (a == b)
                    continue;
                Path p = sb.bundle.query(a, b);
                CHECK(p.vertices.front() == a);
                CHECK(p.vertices.back() == b);
                CHECK(path_valid_in(g, p));
                CHECK(weight_within(p.weight, make_rat(3, 1), apsp[a][b]));
            }
    }
    SECTION("empty subset is rejected")
    {
        CHECK_THROWS_AS(build_subset(g, {}, 2, 1), InputError);
    }
}

TEST_CASE("source-wise spanner reduction")
{
    Graph g = gen_random_connected(70, 180, 1, 25, 71);
    std::vector<Vertex> A{2, 9, 33, 41, 65};
    SubsetBundle sb = build_subset(g, A, 1, 3); // k_em = 1: subset stretch exactly 1
    CHECK(sb.bundle.declared_stretch == make_rat(1, 1));
    SourcewiseBundle sw = build_sourcewise(g, sb);
    CHECK(sw.bundle.declared_stretch == make_rat(3, 1)); // 2*1 + 1

    auto* oracle = dynamic_cast<const SourcewiseOracle*>(sw.bundle.oracle.get());
    REQUIRE(oracle != nullptr);
    DistanceTree forest = multi_source_forest(g, A);

    SECTION("forest is acyclic with at most n-1 edges and consistent roots")
    {
        test_oracle::UnionFind uf(g.n());
        std::size_t edges = 0;
        for (Vertex v = 0; v < g.n(); ++v)
            if (oracle->parent[v] != kNoVertex) {
                ++edges;
                CHECK(uf.join(v, oracle->parent[v]));
            }
        CHECK(edges <= g.n() - 1);
        for (Vertex v = 0; v < g.n(); ++v)
            for (Vertex x = v; x != kNoVertex; x = oracle->parent[x])
                CHECK(oracle->root[x] == oracle->root[v]);
    }
    SECTION("query (v, p(v)) walks the forest exactly")
    {
        for (Vertex v : {7u, 20u, 50u}) {
            Path p = sw.bundle.query(v, forest.root[v]);
            CHECK(p.weight == forest.dist[v]);
        }
    }
    SECTION("all A x V queries stay within stretch 3, exactly audited")
    {
        std::vector<DistanceTree> from_a;
        for (Vertex a : A)
            from_a.push_back(dijkstra(g, a));
        for (std::size_t ai = 0; ai < A.size(); ++ai)
            for (Vertex v = 0; v < g.n(); ++v) {
                if (v == A[ai])
                    continue;
                Path p = sw.bundle.query(A[ai], v);
                CHECK(p.vertices.front() == A[ai]);
                CHECK(p.vertices.back() == v);
                CHECK(path_valid_in(g, p));
                CHECK(weight_within(p.weight, make_rat(3, 1), from_a[ai].dist[v]));
            }
    }
    SECTION("restricted to A x A it behaves like the subset bundle")
    {
        for (Vertex a : A)
            for (Vertex b : A) {
                if (a == b)
                    continue;
                CHECK(sw.bundle.query(a, b).weight == sb.bundle.query(a, b).weight);
            }
    }
    SECTION("neither endpoint in A is unsupported")
    {
        CHECK_THROWS_AS(sw.bundle.query(0, 1), UnsupportedPair);
    }
    SECTION("A = V leaves the forest empty")
    {
        std::vector<Vertex> all(g.n());
        for (Vertex v = 0; v < g.n(); ++v)
            all[v] = v;
        SourcewiseBundle full = build_sourcewise(g, build_subset(g, all, 1, 3));
        auto* o = dynamic_cast<const SourcewiseOracle*>(full.bundle.oracle.get());
        REQUIRE(o != nullptr);
        for (Vertex v = 0; v < g.n(); ++v)
            CHECK(o->parent[v] == kNoVertex);
    }
}

TEST_CASE("prioritized spanner reduction")
{
    Graph g = gen_random_connected(256, 700, 1, 30, 81);
    std::vector<Vertex> ranking(g.n());
    for (Vertex v = 0; v < g.n(); ++v)
        ranking[v] = v;
    Rng rng(17);
    shuffle(ranking, rng);

    PrioritizedBundle pb =
        build_prioritized(g, ranking, ScheduleKind::doubling, 0, 7, exact_preserver_builder(), 2.0);
    const auto& oracle = *pb.oracle;
    REQUIRE(oracle.T >= 1);

    SECTION("the f-inverse table matches the exact formula and f values")
    {
        for (std::uint32_t j = 1; j <= oracle.covered_upto(); ++j) {
            std::uint32_t i = oracle.finv[j - 1];
            CHECK(oracle.f_values[i - 1] >= j);
            if (j >= 2)
                CHECK(i == schedule_f_inv(ScheduleKind::doubling, g.n(), j));
        }
    }
    SECTION("dispatch serves covered ranks by their prefix, others by the catch-all")
    {
        std::uint32_t fT = oracle.covered_upto();
        CHECK(oracle.dispatch_index(1) >= 1);
        CHECK(oracle.dispatch_index(fT) >= 1);
        CHECK(oracle.dispatch_index(fT + 1) == 0);
        CHECK(oracle.dispatch_index(g.n()) == 0);
    }
    SECTION("audited stretch obeys the dispatched bundle's declared stretch")
    {
        std::vector<std::uint32_t> test_ranks{1, 2, 3, oracle.covered_upto(),
                                              oracle.covered_upto() + 1, g.n() - 1};
        for (std::uint32_t j : test_ranks) {
            Vertex vj = ranking[j - 1];
            DistanceTree t = dijkstra(g, vj);
            for (std::uint32_t jp = j + 1; jp < g.n(); jp += 37) {
                Vertex vp = ranking[jp - 1];
                Path p = pb.bundle.query(vj, vp);
                CHECK(p.vertices.front() == vj);
                CHECK(p.vertices.back() == vp);
                CHECK(path_valid_in(g, p));
                CHECK(weight_within(p.weight, oracle.dispatch_stretch(j), t.dist[vp]));
            }
        }
    }
    SECTION("a bad ranking is rejected")
    {
        std::vector<Vertex> dup(g.n(), 0);
        CHECK_THROWS_AS(build_prioritized(g, dup, ScheduleKind::doubling, 0, 1), InputError);
    }
}
