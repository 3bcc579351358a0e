#ifndef SPANLAB_AUDIT_HPP
#define SPANLAB_AUDIT_HPP

#include <chrono>

#include "spanlab/generate.hpp"
#include "spanlab/lowerbound.hpp"
#include "spanlab/reductions.hpp"

namespace spanlab {

//--------------------------- bundle audit ---------------------------

struct Violation {
    VPair pair;
    Weight reported = 0;
    Weight d_g = 0;
    bool invalid_path = false; // a reported edge was outside S, or the weight lied
};

struct AuditReport {
    std::string family = "bundle";
    std::uint32_t n = 0;
    std::size_t m = 0;
    std::uint32_t k = 0, c = 0;
    u64 seed = 0;
    std::size_t pair_count = 0;
    std::size_t edge_count = 0;
    Rat declared{1, 1};
    Rat overhead{0, 1};      // edges per audited pair
    Rat max_stretch{0, 1};   // exact, over finite audited pairs
    bool stretch_infinite = false;
    Rat aggregate_stretch{0, 1}; // sum(reported)/sum(d_G): exact stand-in for the mean
    std::size_t unsupported = 0;
    std::vector<Violation> violations;
    bool sampled = false;
    u64 wall_ms = 0; // informational only; CSV pins ms to 0 for reproducibility
};

// Query every pair, verify the path stays in S with truthful weight, and
// compare against declared_stretch * d_G by exact cross-multiplication.
inline AuditReport audit_bundle(const Graph& g, const SpannerBundle& bundle, const PairSet& pairs)
{
    auto t0 = std::chrono::steady_clock::now();
    AuditReport rep;
    rep.family = bundle.prov.construction.empty() ? "bundle" : bundle.prov.construction;
    rep.n = g.n();
    rep.m = g.m();
    rep.seed = bundle.prov.seed;
    rep.pair_count = pairs.size();
    rep.edge_count = bundle.edges.size();
    rep.declared = bundle.declared_stretch;
    std::unordered_map<u64, Weight> sset;
    sset.reserve(bundle.edges.size());
    for (const Edge& e : bundle.edges)
        sset.emplace(edge_key(e.u, e.v), e.w);

    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pairs[a].u < pairs[b].u; });
    Weight sum_reported = 0, sum_true = 0;
    for (std::size_t i = 0; i < order.size();) {
        Vertex s = pairs[order[i]].u;
        DistanceTree truth = dijkstra(g, s);
        for (; i < order.size() && pairs[order[i]].u == s; ++i) {
            const VPair& pr = pairs[order[i]];
            Weight dg = truth.dist[pr.v];
            Path path;
            try {
                path = bundle.query(pr.u, pr.v);
            } catch (const UnsupportedPair&) {
                if (dg != kInf) { // connected pair the bundle cannot serve: infinite stretch
                    rep.violations.push_back({pr, kInf, dg, false});
                    rep.stretch_infinite = true;
                } else {
                    ++rep.unsupported;
                }
                continue;
            }
            bool valid = !path.vertices.empty() && path.vertices.front() == pr.u &&
                         path.vertices.back() == pr.v;
            Weight total = 0;
            for (std::size_t j = 0; valid && j + 1 < path.vertices.size(); ++j) {
                auto it = sset.find(edge_key(path.vertices[j], path.vertices[j + 1]));
                if (it == sset.end())
                    valid = false;
                else
                    total = sat_add(total, it->second);
            }
            valid = valid && total == path.weight;
            if (!valid) {
                rep.violations.push_back({pr, path.weight, dg, true});
                continue;
            }
            if (dg != kInf) {
                sum_reported = sat_add(sum_reported, path.weight);
                sum_true = sat_add(sum_true, dg);
                if (dg > 0)
                    rep.max_stretch = rat_max(rep.max_stretch, make_rat(path.weight, dg));
            }
            if (!weight_within(path.weight, bundle.declared_stretch, dg))
                rep.violations.push_back({pr, path.weight, dg, false});
        }
    }
    if (!pairs.empty())
        rep.overhead = make_rat(rep.edge_count, rep.pair_count);
    if (sum_true > 0 && sum_true != kInf)
        rep.aggregate_stretch = make_rat(sum_reported, sum_true);
    rep.wall_ms = (u64)std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

//--------------------------- pair sampling ---------------------------

// Distinct unordered pairs, deterministic per seed. The audit default above
// n = 400 is 10000 pairs; callers label reports as sampled.
inline PairSet sample_pairs(std::uint32_t n, std::size_t count, u64 seed)
{
    require(n >= 2, "sample_pairs: need at least two vertices");
    std::size_t universe = (std::size_t)n * (n - 1) / 2;
    require(count <= universe, "sample_pairs: more pairs than exist");
    PairSet out;
    std::unordered_set<u64> seen;
    Rng rng(seed);
    while (out.size() < count) {
        Vertex u = (Vertex)rng.below(n), v = (Vertex)rng.below(n);
        if (u == v)
            continue;
        if (u > v)
            std::swap(u, v);
        if (seen.insert(edge_key(u, v)).second)
            out.push_back({u, v});
    }
    return out;
}

inline PairSet default_audit_pairs(const Graph& g, u64 seed, bool* sampled = nullptr)
{
    if (g.n() <= 400) {
        if (sampled)
            *sampled = false;
        PairSet all;
        for (Vertex u = 0; u < g.n(); ++u)
            for (Vertex v = u + 1; v < g.n(); ++v)
                all.push_back({u, v});
        return all;
    }
    if (sampled)
        *sampled = true;
    std::size_t universe = (std::size_t)g.n() * (g.n() - 1) / 2;
    return sample_pairs(g.n(), std::min<std::size_t>(10000, universe), seed);
}

//--------------------------- CSV ---------------------------

inline std::string csv_header()
{
    return "family,n,m,k,c,pairs,seed,edges,overhead_num,overhead_den,max_stretch_num,"
           "max_stretch_den,violations,ms";
}

// The ms column is fixed to 0 so re-running an audit over the same serialized
// bundle reproduces the identical row; wall time goes to stderr in the CLI.
inline std::string csv_row(const AuditReport& r)
{
    std::string stretch_num = r.stretch_infinite ? "inf" : std::to_string(r.max_stretch.num);
    std::string stretch_den = r.stretch_infinite ? "0" : std::to_string(r.max_stretch.den);
    return r.family + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
           std::to_string(r.k) + "," + std::to_string(r.c) + "," + std::to_string(r.pair_count) +
           "," + std::to_string(r.seed) + "," + std::to_string(r.edge_count) + "," +
           std::to_string(r.overhead.num) + "," + std::to_string(r.overhead.den) + "," +
           stretch_num + "," + stretch_den + "," + std::to_string(r.violations.size()) + ",0";
}

//--------------------------- sweep ---------------------------

struct SweepRun {
    std::string mode = "pairwise"; // "pairwise" or "delta"
    std::string family = "random";
    GenParams gen;
    std::uint32_t k = 4, c = 2;
    std::size_t npairs = 100;
    u64 seed = 1;
};

struct SweepConfig {
    std::vector<SweepRun> runs;
};

inline AuditReport run_pairwise_sweep(const SweepRun& run)
{
    Graph g = generate(run.family, run.gen, run.seed);
    std::size_t universe = (std::size_t)g.n() * (g.n() - 1) / 2;
    PairSet pairs = sample_pairs(g.n(), std::min(run.npairs, universe), hash_rand(run.seed, 0x9a175));
    SpannerBundle b = compose_pairwise_partitioned(g, pairs, run.k, run.c, run.seed);
    AuditReport rep = audit_bundle(g, b, pairs);
    rep.family = run.family;
    rep.k = run.k;
    rep.c = run.c;
    rep.seed = run.seed;
    return rep;
}

inline AuditReport run_delta_sweep(const SweepRun& run)
{
    Graph g = generate(run.family, run.gen, run.seed);
    DeltaPairInstance inst = delta_pairs(g, run.k, make_rat(1, 1));
    CoverReport cover = sample_and_cover(inst, run.seed);
    AuditReport rep;
    rep.family = run.family;
    rep.n = g.n();
    rep.m = g.m();
    rep.k = run.k;
    rep.c = 0;
    rep.seed = run.seed;
    rep.pair_count = cover.sampled_pairs;
    rep.edge_count = cover.covered_edges;
    rep.overhead = cover.overhead_defined ? cover.overhead : Rat{0, 1};
    rep.max_stretch = make_rat(1, 1);
    return rep;
}

// One CSV row per run; failures keep their place with an error-tagged family.
inline void sweep(std::ostream& out, const SweepConfig& config)
{
    out << csv_header() << "\n";
    for (const SweepRun& run : config.runs) {
        try {
            AuditReport rep = run.mode == "delta" ? run_delta_sweep(run) : run_pairwise_sweep(run);
            out << csv_row(rep) << "\n";
        } catch (const std::exception&) {
            AuditReport rep;
            rep.family = "error(" + run.family + ")";
            rep.k = run.k;
            rep.c = run.c;
            rep.seed = run.seed;
            out << csv_row(rep) << "\n";
        }
    }
}

} // namespace spanlab

#endif
