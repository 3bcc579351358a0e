#ifndef SPANLAB_REDUCTIONS_HPP
#define SPANLAB_REDUCTIONS_HPP

#include <cmath>

#include "spanlab/emulator.hpp"
#include "spanlab/pairwise.hpp"

namespace spanlab {

//--------------------------- subset parameters ---------------------------

// Subset parameter bookkeeping: q = log_n(|A|^{1+1/k}), p = 1/(q-1) rounded up when
// q > 1, else ceil(log2 n). Informational (feeds provenance and reports).
struct SubsetParams {
    std::uint32_t n = 0;
    std::uint32_t a_size = 0;
    std::uint32_t k = 0;
    double q = 0;
    std::uint32_t p = 0;
};

inline SubsetParams subset_params(std::uint32_t n, std::uint32_t a_size, std::uint32_t k)
{
    require(n >= 2 && a_size >= 1 && a_size <= n && k >= 1, "subset_params: bad arguments");
    SubsetParams sp;
    sp.n = n;
    sp.a_size = a_size;
    sp.k = k;
    double ln2n = std::log2((double)n);
    sp.q = (1.0 + 1.0 / k) * std::log2((double)a_size) / ln2n;
    if (sp.q > 1.0 + 1e-12)
        sp.p = (std::uint32_t)std::ceil(1.0 / (sp.q - 1.0) - 1e-9);
    else
        sp.p = (std::uint32_t)std::ceil(ln2n - 1e-9);
    if (sp.p < 1)
        sp.p = 1;
    return sp;
}

//--------------------------- exact prefix schedules ---------------------------

namespace detail {

// little-endian base-2^64 unsigned, just enough for x^a vs n^b comparisons
struct BigU {
    std::vector<u64> limb;

    static BigU from(u64 v) { return BigU{{v}}; }

    void trim()
    {
        while (limb.size() > 1 && limb.back() == 0)
            limb.pop_back();
    }
};

inline BigU big_mul(const BigU& a, const BigU& b)
{
    BigU r;
    r.limb.assign(a.limb.size() + b.limb.size(), 0);
    for (std::size_t i = 0; i < a.limb.size(); ++i) {
        u128 carry = 0;
        for (std::size_t j = 0; j < b.limb.size(); ++j) {
            u128 cur = (u128)a.limb[i] * b.limb[j] + r.limb[i + j] + carry;
            r.limb[i + j] = (u64)cur;
            carry = cur >> 64;
        }
        r.limb[i + b.limb.size()] += (u64)carry;
    }
    r.trim();
    return r;
}

inline int big_cmp(const BigU& a, const BigU& b)
{
    if (a.limb.size() != b.limb.size())
        return a.limb.size() < b.limb.size() ? -1 : 1;
    for (std::size_t i = a.limb.size(); i-- > 0;)
        if (a.limb[i] != b.limb[i])
            return a.limb[i] < b.limb[i] ? -1 : 1;
    return 0;
}

inline BigU big_pow(u64 base, std::uint32_t exp)
{
    BigU r = BigU::from(1);
    BigU b = BigU::from(base);
    while (exp) {
        if (exp & 1)
            r = big_mul(r, b);
        b = big_mul(b, b);
        exp >>= 1;
    }
    return r;
}

// x^a <= n^b, exactly
inline bool pow_le(u64 x, std::uint32_t a, u64 n, std::uint32_t b)
{
    return big_cmp(big_pow(x, a), big_pow(n, b)) <= 0;
}

// floor(n^{(den-1)/den}) by binary search on x^den <= n^{den-1}
inline std::uint32_t floor_root_power(std::uint32_t n, std::uint32_t den)
{
    require(den >= 1 && den <= 4096, "schedule exponent out of supported range");
    if (den == 1)
        return 1; // n^0
    std::uint32_t lo = 1, hi = n;
    while (lo < hi) {
        std::uint32_t mid = lo + (hi - lo + 1) / 2;
        if (pow_le(mid, den, n, den - 1))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

} // namespace detail

enum class ScheduleKind { power, doubling };

inline const char* schedule_name(ScheduleKind k)
{
    return k == ScheduleKind::power ? "power" : "doubling";
}

inline ScheduleKind parse_schedule(const std::string& s)
{
    if (s == "power")
        return ScheduleKind::power;
    if (s == "doubling")
        return ScheduleKind::doubling;
    throw InputError("schedule must be 'power' or 'doubling'");
}

// f(i) = floor(n^{1-1/i}) (power) or floor(n^{1-1/2^i}) (doubling), exact.
inline std::uint32_t schedule_f(ScheduleKind kind, std::uint32_t n, std::uint32_t i)
{
    require(i >= 1, "schedule_f: index starts at 1");
    if (kind == ScheduleKind::power)
        return detail::floor_root_power(n, i);
    require(i <= 12, "doubling schedule index out of supported range");
    return detail::floor_root_power(n, 1u << i);
}

// f^{-1}(j) = min{ i >= 1 : f(i) >= j }, evaluated exactly. This equals
// ceil(1/(1-delta_j)) resp. ceil(log2(1/(1-delta_j))) with delta_j = log j/log n,
// clamped to >= 1 (the j = 1 corner would otherwise give 0). Ranks whose
// inverse exceeds the supported index range (j pressed against n; exponents
// would explode) are rejected; dispatch never queries past f(T).
inline std::uint32_t schedule_f_inv(ScheduleKind kind, std::uint32_t n, std::uint32_t j)
{
    require(j >= 1 && (u64)j <= n, "schedule_f_inv: rank out of range");
    // j <= f(i)  <=>  j^e <= n^{e-1} with e = i (power) or e = 2^i (doubling)
    std::uint32_t max_i = kind == ScheduleKind::power ? 64 : 12;
    for (std::uint32_t i = 1; i <= max_i; ++i) {
        std::uint32_t e = kind == ScheduleKind::power ? i : (1u << i);
        if (detail::pow_le(j, e, n, e - 1))
            return i;
    }
    throw InputError("schedule_f_inv: rank outside the supported image of f");
}

// Per-prefix level count: k = ceil(log|A| / (log n - 2 log beta - log|A|)); absent
// (prefix excluded) when the denominator is not positive.
inline std::optional<std::uint32_t> k_of_prefix(u64 a_size, u64 n, double beta)
{
    require(a_size >= 1 && n >= 2 && beta >= 1.0, "k_of_prefix: bad arguments");
    double la = std::log2((double)a_size);
    double den = std::log2((double)n) - 2.0 * std::log2(beta) - la;
    if (den <= 1e-9)
        return std::nullopt;
    auto k = (std::uint32_t)std::ceil(la / den - 1e-9);
    return std::max(k, 1u);
}

//--------------------------- subset spanner ---------------------------

class SubsetOracle : public PathOracle {
public:
    std::vector<Vertex> subset; // sorted; metric index -> G vertex
    EmulatorBundle em;
    SpannerBundle inner; // pairwise spanner over the emulator edges, as G pairs

    const char* kind() const override { return "subset"; }

    std::optional<std::uint32_t> index_of(Vertex v) const
    {
        auto it = std::lower_bound(subset.begin(), subset.end(), v);
        if (it == subset.end() || *it != v)
            return std::nullopt;
        return (std::uint32_t)(it - subset.begin());
    }

    Path query(Vertex u, Vertex v) const override
    {
        auto iu = index_of(u), iv = index_of(v);
        if (!iu || !iv)
            throw UnsupportedPair("subset spanner: endpoint outside the subset");
        if (u == v)
            return Path{{u}, 0};
        Path em_path = em.query(*iu, *iv); // at most 2 emulator edges
        Path p{{u}, 0};
        for (std::size_t i = 0; i + 1 < em_path.vertices.size(); ++i) {
            Vertex a = subset[em_path.vertices[i]];
            Vertex b = subset[em_path.vertices[i + 1]];
            Path leg = inner.query(a, b);
            if (leg.vertices.front() != a)
                leg = leg.reversed();
            append_path(p, leg);
        }
        return p;
    }
};

struct SubsetBundle {
    SpannerBundle bundle;
    std::vector<Vertex> subset;
};

// Metric on A -> TZ emulator -> inner pairwise spanner on the emulator edges.
// Declared stretch (2 k_em - 1) * inner stretch. Disconnected A pairs are
// flagged per query, not at build time.
inline SubsetBundle build_subset(const Graph& g, std::vector<Vertex> subset, std::uint32_t k_em,
                                 u64 seed, const PairwiseBuilder& inner = exact_preserver_builder())
{
    require(!subset.empty(), "build_subset: empty subset");
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (Vertex v : subset)
        require(v < g.n(), "build_subset: subset vertex out of range");

    GraphSubsetMetric metric(g, subset);
    EmulatorBundle em = build_tz_emulator(metric, k_em, seed);
    PairSet inner_pairs;
    inner_pairs.reserve(em.edges.size());
    for (const EmEdge& e : em.edges)
        inner_pairs.push_back({subset[e.u], subset[e.v]});
    SpannerBundle inner_bundle = inner(g, inner_pairs);
    check(inner_bundle.unsupported.empty(), "inner spanner rejected an emulator edge pair");

    SubsetBundle out;
    out.subset = subset;
    SpannerBundle& b = out.bundle;
    b.n = g.n();
    b.edges = inner_bundle.edges;
    b.declared_stretch = rat_mul(make_rat(2ull * k_em - 1, 1), inner_bundle.declared_stretch);
    b.prov.construction = "subset";
    b.prov.params = "|A|=" + std::to_string(subset.size()) + " k_em=" + std::to_string(k_em);
    b.prov.seed = seed;
    auto oracle = std::make_shared<SubsetOracle>();
    oracle->subset = std::move(subset);
    oracle->em = std::move(em);
    oracle->inner = std::move(inner_bundle);
    b.oracle = std::move(oracle);
    return out;
}

//--------------------------- source-wise spanner ---------------------------

class SourcewiseOracle : public PathOracle {
public:
    SubsetBundle inner_subset;
    // nearest-root forest from the subset: q(v) pointers, p(v) roots
    std::vector<Vertex> parent;
    std::vector<Vertex> root;
    std::vector<Weight> dist;

    const char* kind() const override { return "sourcewise"; }

    bool in_subset(Vertex v) const
    {
        return std::binary_search(inner_subset.subset.begin(), inner_subset.subset.end(), v);
    }

    Path query(Vertex x, Vertex y) const override
    {
        if (x == y)
            return Path{{x}, 0};
        bool xa = in_subset(x), ya = in_subset(y);
        if (xa && ya)
            return inner_subset.bundle.query(x, y); // restriction to A x A stays a subset spanner
        if (!xa && !ya)
            throw UnsupportedPair("source-wise spanner: neither endpoint is a source");
        Vertex a = xa ? x : y;
        Vertex v = xa ? y : x;
        if (root[v] == kNoVertex)
            throw UnsupportedPair("source-wise spanner: vertex unreachable from the sources");
        Path p{{v}, 0};
        for (Vertex cur = v; parent[cur] != kNoVertex; cur = parent[cur]) {
            p.vertices.push_back(parent[cur]);
            p.weight = sat_add(p.weight, dist[cur] - dist[parent[cur]]);
        }
        Path leg = inner_subset.bundle.query(root[v], a);
        if (leg.vertices.front() != root[v])
            leg = leg.reversed();
        append_path(p, leg);
        return xa ? p.reversed() : p;
    }
};

struct SourcewiseBundle {
    SpannerBundle bundle;
    std::vector<Vertex> subset;
};

// Adds the nearest-source forest; stretch 2*alpha + 1, supported pairs A x V.
inline SourcewiseBundle build_sourcewise(const Graph& g, SubsetBundle subset)
{
    SourcewiseBundle out;
    out.subset = subset.subset;
    SpannerBundle& b = out.bundle;
    b.n = g.n();
    Rat alpha = subset.bundle.declared_stretch;
    b.declared_stretch = rat_add(rat_mul(make_rat(2, 1), alpha), make_rat(1, 1));
    b.prov.construction = "sourcewise";
    b.prov.params = subset.bundle.prov.params;
    b.prov.seed = subset.bundle.prov.seed;
    b.edges = subset.bundle.edges;

    DistanceTree forest = multi_source_forest(g, out.subset);
    auto oracle = std::make_shared<SourcewiseOracle>();
    oracle->parent = forest.parent;
    oracle->root = forest.root;
    oracle->dist = forest.dist;
    for (Vertex v = 0; v < g.n(); ++v)
        if (forest.parent[v] != kNoVertex)
            b.edges.push_back({v, forest.parent[v], forest.dist[v] - forest.dist[forest.parent[v]]});
    for (Vertex v = 0; v < g.n(); ++v)
        if (forest.dist[v] == kInf)
            oracle->root[v] = kNoVertex;
    oracle->inner_subset = std::move(subset);
    canonicalize_edges(b.edges);
    b.oracle = std::move(oracle);
    return out;
}

//--------------------------- prioritized spanner ---------------------------

class PrioritizedOracle : public PathOracle {
public:
    std::vector<Vertex> ranking;        // ranking[0] has highest priority (rank 1)
    std::vector<std::uint32_t> rank_of; // vertex -> rank, 1-based
    ScheduleKind schedule = ScheduleKind::doubling;
    std::uint32_t T = 0;
    std::vector<std::uint32_t> f_values; // f(1..T)
    std::vector<std::uint32_t> finv;     // finv[j-1] for j in [1, f(T)]
    std::vector<SourcewiseBundle> prefixes;
    SubsetBundle catchall;
    double beta_coeff = 2.0;
    std::uint32_t catch_k = 1;

    const char* kind() const override { return "prioritized"; }

    std::uint32_t covered_upto() const { return T == 0 ? 0 : f_values[T - 1]; }

    // prefix index serving rank j, or 0 for the catch-all
    std::uint32_t dispatch_index(std::uint32_t j) const
    {
        if (T == 0 || j > covered_upto())
            return 0;
        return finv[j - 1];
    }

    Rat dispatch_stretch(std::uint32_t j) const
    {
        std::uint32_t i = dispatch_index(j);
        return i == 0 ? catchall.bundle.declared_stretch : prefixes[i - 1].bundle.declared_stretch;
    }

    Path query(Vertex x, Vertex y) const override
    {
        require(x < rank_of.size() && y < rank_of.size(), "prioritized query: vertex out of range");
        std::uint32_t j = std::min(rank_of[x], rank_of[y]);
        std::uint32_t i = dispatch_index(j);
        if (i == 0)
            return catchall.bundle.query(x, y);
        return prefixes[i - 1].bundle.query(x, y);
    }
};

struct PrioritizedBundle {
    SpannerBundle bundle;
    std::shared_ptr<const PrioritizedOracle> oracle; // typed view of bundle.oracle
};

// Calibration for the beta coefficient: one small subset build on the
// top-ranked ~sqrt(n) vertices; beta = ceil(edges per emulator pair).
inline double measure_beta_coeff(const Graph& g, const std::vector<Vertex>& ranking, u64 seed,
                                 const PairwiseBuilder& inner)
{
    std::uint32_t take = std::max<std::uint32_t>(
        2, std::min<std::uint32_t>((std::uint32_t)std::sqrt((double)g.n()), g.n()));
    std::vector<Vertex> cal(ranking.begin(), ranking.begin() + take);
    SubsetBundle sb = build_subset(g, cal, 2, hash_rand(seed, 0xca11b8), inner);
    auto* so = dynamic_cast<const SubsetOracle*>(sb.bundle.oracle.get());
    std::size_t pairs = so ? so->em.edges.size() : 0;
    if (pairs == 0)
        return 2.0;
    double beta = std::ceil((double)sb.bundle.edges.size() / (double)pairs);
    return std::max(beta, 2.0);
}

// Prefixes A_i = top f(i) ranks with per-prefix k from k_of_prefix; T is the
// largest index with f(T) <= n and k defined. Queries above f(T) go to a
// catch-all subset bundle with A = V and k_em = ceil(log n / log log n).
inline PrioritizedBundle build_prioritized(const Graph& g, const std::vector<Vertex>& ranking,
                                           ScheduleKind schedule, std::uint32_t k_em_catchall,
                                           u64 seed,
                                           const PairwiseBuilder& inner = exact_preserver_builder(),
                                           double beta_coeff = 0.0)
{
    const std::uint32_t n = g.n();
    require(n >= 2, "build_prioritized: graph too small");
    require(ranking.size() == n, "ranking: must list every vertex exactly once");
    {
        std::vector<bool> seen(n, false);
        for (Vertex v : ranking) {
            require(v < n, "ranking: vertex id out of range");
            require(!seen[v], "ranking: duplicate vertex");
            seen[v] = true;
        }
    }

    auto oracle = std::make_shared<PrioritizedOracle>();
    oracle->ranking = ranking;
    oracle->rank_of.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        oracle->rank_of[ranking[i]] = i + 1;
    oracle->schedule = schedule;
    oracle->beta_coeff =
        beta_coeff > 0 ? beta_coeff : measure_beta_coeff(g, ranking, seed, inner);

    std::vector<Edge> all_edges;

    for (std::uint32_t i = 1; i <= 25; ++i) {
        std::uint32_t fi;
        try {
            fi = schedule_f(schedule, n, i); // k_of_prefix dies long before the index caps
        } catch (const InputError&) {
            break;
        }
        if (fi < 1 || fi > n)
            break;
        auto k = k_of_prefix(fi, n, oracle->beta_coeff);
        if (!k)
            break;
        std::vector<Vertex> prefix(ranking.begin(), ranking.begin() + fi);
        SourcewiseBundle sw =
            build_sourcewise(g, build_subset(g, prefix, *k, hash_rand(seed, 0x9f1, i), inner));
        all_edges.insert(all_edges.end(), sw.bundle.edges.begin(), sw.bundle.edges.end());
        oracle->f_values.push_back(fi);
        oracle->prefixes.push_back(std::move(sw));
        oracle->T = i;
    }
    if (oracle->T > 0) {
        std::uint32_t fT = oracle->f_values.back();
        oracle->finv.resize(fT);
        std::uint32_t i = 1;
        for (std::uint32_t j = 1; j <= fT; ++j) {
            while (oracle->f_values[i - 1] < j)
                ++i;
            oracle->finv[j - 1] = i;
        }
    }

    std::uint32_t k_cat = k_em_catchall;
    if (k_cat == 0) {
        double ln = std::log2((double)n);
        k_cat = std::max(1u, (std::uint32_t)std::ceil(ln / std::log2(std::max(2.0, ln)) - 1e-9));
    }
    oracle->catch_k = k_cat;
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v)
        all[v] = v;
    oracle->catchall = build_subset(g, all, k_cat, hash_rand(seed, 0xca7c4a11), inner);
    all_edges.insert(all_edges.end(), oracle->catchall.bundle.edges.begin(),
                     oracle->catchall.bundle.edges.end());

    PrioritizedBundle out;
    SpannerBundle& bundle = out.bundle;
    bundle.n = n;
    bundle.edges = std::move(all_edges);
    canonicalize_edges(bundle.edges);
    Rat worst = oracle->catchall.bundle.declared_stretch;
    for (const auto& sw : oracle->prefixes)
        worst = rat_max(worst, sw.bundle.declared_stretch);
    bundle.declared_stretch = worst;
    bundle.prov.construction = "prioritized";
    bundle.prov.params = std::string("schedule=") + schedule_name(schedule) +
                         " T=" + std::to_string(oracle->T) + " k_cat=" + std::to_string(k_cat) +
                         " beta=" + std::to_string(oracle->beta_coeff);
    bundle.prov.seed = seed;
    out.oracle = oracle;
    bundle.oracle = std::move(oracle);
    return out;
}

} // namespace spanlab

#endif
