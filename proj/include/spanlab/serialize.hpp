#ifndef SPANLAB_SERIALIZE_HPP
#define SPANLAB_SERIALIZE_HPP

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "spanlab/lowerbound.hpp"
#include "spanlab/reductions.hpp"

namespace spanlab {

namespace detail {

// Empty vectors write nothing at all: a bare newline would be skipped as a
// blank line on the way back in and desynchronize the reader.
template <typename T>
void write_line(std::ostream& out, const std::vector<T>& v)
{
    if (v.empty())
        return;
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? " " : "") << v[i];
    out << "\n";
}

template <typename T>
std::vector<T> read_line(std::istream& in, std::size_t count, const char* field)
{
    if (count == 0)
        return {};
    std::istringstream ss(next_data_line(in));
    std::vector<T> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        unsigned long long x;
        if (!(ss >> x))
            throw InputError(std::string("malformed field: ") + field);
        v[i] = (T)x;
    }
    return v;
}

inline std::string expect_tag(std::istream& in, const char* tag)
{
    std::string line = next_data_line(in);
    std::istringstream ss(line);
    std::string got;
    ss >> got;
    if (got != tag)
        throw InputError(std::string("expected section '") + tag + "', found '" + got + "'");
    std::string rest;
    std::getline(ss, rest);
    if (!rest.empty() && rest.front() == ' ')
        rest.erase(0, 1);
    return rest;
}

} // namespace detail

inline void write_bundle(std::ostream& out, const SpannerBundle& b);
inline SpannerBundle read_bundle(std::istream& in);

//--------------------------- oracle payloads ---------------------------

namespace detail {

inline void write_tree_oracle(std::ostream& out, const TreeOracle& o)
{
    out << "trees " << o.trees.size() << "\n";
    for (const auto& [src, tree] : o.trees) {
        out << "tree " << src << "\n";
        write_line(out, tree.parent);
        write_line(out, tree.dist);
    }
}

inline std::shared_ptr<TreeOracle> read_tree_oracle(std::istream& in, std::uint32_t n,
                                                    const PairSet& supported)
{
    auto o = std::make_shared<TreeOracle>();
    o->n = n;
    std::istringstream head(expect_tag(in, "trees"));
    std::size_t count;
    require(bool(head >> count), "malformed field: trees count");
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream th(expect_tag(in, "tree"));
        Vertex src;
        require(bool(th >> src), "malformed field: tree source");
        DistanceTree t;
        t.parent = read_line<Vertex>(in, n, "tree parents");
        t.dist = read_line<Weight>(in, n, "tree dists");
        t.root.assign(n, src);
        o->trees.emplace(src, std::move(t));
    }
    for (const VPair& p : supported)
        o->pair_source.emplace(pair_key(p.u, p.v), std::min(p.u, p.v));
    return o;
}

inline void write_pivot_preserver(std::ostream& out, const PivotPreserver& h1)
{
    out << "h1 " << h1.levels << " " << h1.n << "\n";
    for (std::uint32_t i = 0; i < h1.levels; ++i) {
        write_line(out, h1.parent[i]);
        write_line(out, h1.pivot[i]);
        write_line(out, h1.dist[i]);
    }
}

inline PivotPreserver read_pivot_preserver(std::istream& in)
{
    std::istringstream head(expect_tag(in, "h1"));
    PivotPreserver h1;
    require(bool(head >> h1.levels >> h1.n), "malformed field: h1 header");
    for (std::uint32_t i = 0; i < h1.levels; ++i) {
        h1.parent.push_back(read_line<Vertex>(in, h1.n, "h1 parents"));
        h1.pivot.push_back(read_line<Vertex>(in, h1.n, "h1 pivots"));
        h1.dist.push_back(read_line<Weight>(in, h1.n, "h1 dists"));
    }
    return h1;
}

inline void write_cluster_preserver(std::ostream& out, const ClusterPreserver& h2)
{
    out << "h2 " << h2.clusters.size() << " " << h2.n << "\n";
    for (const ClusterData& cl : h2.clusters) {
        out << "cluster " << cl.center << " " << cl.level << " " << cl.members.size() << "\n";
        write_line(out, cl.members);
        write_line(out, cl.dist);
        write_line(out, cl.parent);
    }
}

inline ClusterPreserver read_cluster_preserver(std::istream& in)
{
    std::istringstream head(expect_tag(in, "h2"));
    ClusterPreserver h2;
    std::size_t count;
    require(bool(head >> count >> h2.n), "malformed field: h2 header");
    h2.cluster_of_center.assign(h2.n, UINT32_MAX);
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream ch(expect_tag(in, "cluster"));
        ClusterData cl;
        std::size_t members;
        require(bool(ch >> cl.center >> cl.level >> members), "malformed field: cluster header");
        cl.members = read_line<Vertex>(in, members, "cluster members");
        cl.dist = read_line<Weight>(in, members, "cluster dists");
        cl.parent = read_line<Vertex>(in, members, "cluster parents");
        h2.cluster_of_center[cl.center] = (std::uint32_t)h2.clusters.size();
        h2.clusters.push_back(std::move(cl));
    }
    return h2;
}

inline void write_compose_oracle(std::ostream& out, const ComposeOracle& o)
{
    out << "partitioned " << (o.partitioned ? 1 : 0) << "\n";
    out << "paths " << o.paths.size() << "\n";
    for (const HopPath& hp : o.paths) {
        out << "path " << hp.start << " " << hp.weight << " " << hp.steps.size();
        for (const HopStep& st : hp.steps)
            out << " " << st.to << " " << st.w << " " << (int)st.origin << " " << st.level << " "
                << st.anchor;
        out << "\n";
    }
    if (o.partitioned) {
        write_pivot_preserver(out, o.h1);
        write_cluster_preserver(out, o.h2);
    }
    out << "inner\n";
    write_bundle(out, o.inner);
}

inline std::shared_ptr<ComposeOracle> read_compose_oracle(std::istream& in,
                                                          const PairSet& supported)
{
    auto o = std::make_shared<ComposeOracle>();
    {
        std::istringstream ss(expect_tag(in, "partitioned"));
        int flag;
        require(bool(ss >> flag), "malformed field: partitioned flag");
        o->partitioned = flag != 0;
    }
    std::size_t count;
    {
        std::istringstream ss(expect_tag(in, "paths"));
        require(bool(ss >> count), "malformed field: path count");
    }
    require(count == supported.size(), "compose oracle: path count does not match pairs");
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream ss(expect_tag(in, "path"));
        HopPath hp;
        std::size_t steps;
        require(bool(ss >> hp.start >> hp.weight >> steps), "malformed field: hop path header");
        for (std::size_t j = 0; j < steps; ++j) {
            HopStep st;
            unsigned origin;
            require(bool(ss >> st.to >> st.w >> origin >> st.level >> st.anchor),
                    "malformed field: hop path step");
            st.origin = (std::uint8_t)origin;
            hp.steps.push_back(st);
        }
        o->index.emplace(pair_key(supported[i].u, supported[i].v), (std::uint32_t)i);
        o->paths.push_back(std::move(hp));
    }
    if (o->partitioned) {
        o->h1 = read_pivot_preserver(in);
        o->h2 = read_cluster_preserver(in);
    }
    expect_tag(in, "inner");
    o->inner = read_bundle(in);
    return o;
}

inline void write_emulator(std::ostream& out, const EmulatorBundle& em)
{
    out << "em " << em.n << " " << em.k_em << " " << em.seed << "\n";
    for (std::uint32_t i = 0; i < em.k_em; ++i) {
        out << "level " << em.levels[i].size() << "\n";
        write_line(out, em.levels[i]);
    }
    for (std::uint32_t u = 0; u < em.n; ++u) {
        std::vector<u64> flat;
        for (auto& [id, d] : em.pivots[u]) {
            flat.push_back(id);
            flat.push_back(d);
        }
        write_line(out, flat);
    }
    for (std::uint32_t u = 0; u < em.n; ++u) {
        out << em.bunches[u].size();
        for (const EmEntry& e : em.bunches[u])
            out << " " << e.v << " " << e.dist << " " << e.level;
        out << "\n";
    }
    out << "emedges " << em.edges.size() << "\n";
    for (const EmEdge& e : em.edges)
        out << e.u << " " << e.v << " " << e.w << "\n";
}

inline EmulatorBundle read_emulator(std::istream& in)
{
    EmulatorBundle em;
    std::istringstream head(expect_tag(in, "em"));
    require(bool(head >> em.n >> em.k_em >> em.seed), "malformed field: emulator header");
    em.levels.resize(em.k_em);
    for (std::uint32_t i = 0; i < em.k_em; ++i) {
        std::istringstream lh(expect_tag(in, "level"));
        std::size_t cnt;
        require(bool(lh >> cnt), "malformed field: emulator level size");
        em.levels[i] = read_line<std::uint32_t>(in, cnt, "emulator level ids");
    }
    em.pivots.assign(em.n, {});
    for (std::uint32_t u = 0; u < em.n; ++u) {
        auto flat = read_line<u64>(in, 2ull * em.k_em, "emulator pivots");
        for (std::uint32_t i = 0; i < em.k_em; ++i)
            em.pivots[u].push_back({(std::uint32_t)flat[2 * i], flat[2 * i + 1]});
    }
    em.bunches.assign(em.n, {});
    for (std::uint32_t u = 0; u < em.n; ++u) {
        std::istringstream ss(next_data_line(in));
        std::size_t cnt;
        require(bool(ss >> cnt), "malformed field: bunch size");
        for (std::size_t i = 0; i < cnt; ++i) {
            EmEntry e;
            require(bool(ss >> e.v >> e.dist >> e.level), "malformed field: bunch entry");
            em.bunches[u].push_back(e);
        }
    }
    std::istringstream eh(expect_tag(in, "emedges"));
    std::size_t ecnt;
    require(bool(eh >> ecnt), "malformed field: emulator edge count");
    for (std::size_t i = 0; i < ecnt; ++i) {
        std::istringstream ss(next_data_line(in));
        EmEdge e;
        require(bool(ss >> e.u >> e.v >> e.w), "malformed field: emulator edge");
        em.edges.push_back(e);
    }
    return em;
}

inline void write_subset_oracle(std::ostream& out, const SubsetOracle& o)
{
    out << "A " << o.subset.size() << "\n";
    write_line(out, o.subset);
    write_emulator(out, o.em);
    out << "inner\n";
    write_bundle(out, o.inner);
}

inline std::shared_ptr<SubsetOracle> read_subset_oracle(std::istream& in)
{
    auto o = std::make_shared<SubsetOracle>();
    std::istringstream head(expect_tag(in, "A"));
    std::size_t count;
    require(bool(head >> count), "malformed field: subset size");
    o->subset = read_line<Vertex>(in, count, "subset ids");
    o->em = read_emulator(in);
    expect_tag(in, "inner");
    o->inner = read_bundle(in);
    return o;
}

inline void write_sourcewise_oracle(std::ostream& out, const SourcewiseOracle& o)
{
    out << "forest " << o.parent.size() << "\n";
    write_line(out, o.parent);
    write_line(out, o.root);
    write_line(out, o.dist);
    out << "subsetbundle\n";
    write_bundle(out, o.inner_subset.bundle);
}

inline std::shared_ptr<SourcewiseOracle> read_sourcewise_oracle(std::istream& in)
{
    auto o = std::make_shared<SourcewiseOracle>();
    std::istringstream head(expect_tag(in, "forest"));
    std::size_t n;
    require(bool(head >> n), "malformed field: forest size");
    o->parent = read_line<Vertex>(in, n, "forest parents");
    o->root = read_line<Vertex>(in, n, "forest roots");
    o->dist = read_line<Weight>(in, n, "forest dists");
    expect_tag(in, "subsetbundle");
    SpannerBundle sb = read_bundle(in);
    auto sub = std::dynamic_pointer_cast<const SubsetOracle>(sb.oracle);
    require(sub != nullptr, "sourcewise bundle: nested bundle is not a subset bundle");
    o->inner_subset.subset = sub->subset;
    o->inner_subset.bundle = std::move(sb);
    return o;
}

inline void write_prioritized_oracle(std::ostream& out, const PrioritizedOracle& o)
{
    char betabuf[64];
    std::snprintf(betabuf, sizeof betabuf, "%.17g", o.beta_coeff);
    out << "prio " << schedule_name(o.schedule) << " " << o.T << " " << o.catch_k << " " << betabuf
        << "\n";
    write_line(out, o.ranking);
    if (o.T > 0) {
        write_line(out, o.f_values);
        write_line(out, o.finv);
    }
    for (const SourcewiseBundle& sw : o.prefixes) {
        out << "prefix\n";
        write_bundle(out, sw.bundle);
    }
    out << "catchall\n";
    write_bundle(out, o.catchall.bundle);
}

inline std::shared_ptr<PrioritizedOracle> read_prioritized_oracle(std::istream& in,
                                                                  std::uint32_t n)
{
    auto o = std::make_shared<PrioritizedOracle>();
    std::istringstream head(expect_tag(in, "prio"));
    std::string sched;
    require(bool(head >> sched >> o->T >> o->catch_k >> o->beta_coeff),
            "malformed field: prioritized header");
    o->schedule = parse_schedule(sched);
    o->ranking = read_line<Vertex>(in, n, "ranking");
    o->rank_of.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        o->rank_of[o->ranking[i]] = i + 1;
    if (o->T > 0) {
        o->f_values = read_line<std::uint32_t>(in, o->T, "prefix sizes");
        o->finv = read_line<std::uint32_t>(in, o->f_values.back(), "f-inverse table");
    }
    for (std::uint32_t i = 0; i < o->T; ++i) {
        expect_tag(in, "prefix");
        SpannerBundle sb = read_bundle(in);
        auto sw = std::dynamic_pointer_cast<const SourcewiseOracle>(sb.oracle);
        require(sw != nullptr, "prioritized bundle: prefix is not a source-wise bundle");
        SourcewiseBundle bundle;
        bundle.subset = sw->inner_subset.subset;
        bundle.bundle = std::move(sb);
        o->prefixes.push_back(std::move(bundle));
    }
    expect_tag(in, "catchall");
    SpannerBundle cb = read_bundle(in);
    auto sub = std::dynamic_pointer_cast<const SubsetOracle>(cb.oracle);
    require(sub != nullptr, "prioritized bundle: catch-all is not a subset bundle");
    o->catchall.subset = sub->subset;
    o->catchall.bundle = std::move(cb);
    return o;
}

} // namespace detail

//--------------------------- bundle format ---------------------------
//
// spanner <stretch_num>/<stretch_den> <m>
// <u> <v> <w>   x m
// meta n <n> seed <seed> construction <name>
// params <free-form>
// pairs/unsupported sections, then the versioned oracle blob.

inline void write_bundle(std::ostream& out, const SpannerBundle& b)
{
    out << "spanner " << b.declared_stretch.num << "/" << b.declared_stretch.den << " "
        << b.edges.size() << "\n";
    for (const Edge& e : b.edges)
        out << e.u << " " << e.v << " " << e.w << "\n";
    out << "meta n " << b.n << " seed " << b.prov.seed << " construction "
        << (b.prov.construction.empty() ? "unknown" : b.prov.construction) << "\n";
    out << "params " << b.prov.params << "\n";
    write_pairs(out, b.supported);
    out << "unsupported " << b.unsupported.size() << "\n";
    for (const VPair& p : b.unsupported)
        out << p.u << " " << p.v << "\n";
    check(b.oracle != nullptr, "cannot serialize a bundle without an oracle");
    out << "oracle v1 " << b.oracle->kind() << "\n";
    if (auto* t = dynamic_cast<const TreeOracle*>(b.oracle.get()))
        detail::write_tree_oracle(out, *t);
    else if (auto* c = dynamic_cast<const ComposeOracle*>(b.oracle.get()))
        detail::write_compose_oracle(out, *c);
    else if (auto* s = dynamic_cast<const SubsetOracle*>(b.oracle.get()))
        detail::write_subset_oracle(out, *s);
    else if (auto* w = dynamic_cast<const SourcewiseOracle*>(b.oracle.get()))
        detail::write_sourcewise_oracle(out, *w);
    else if (auto* p = dynamic_cast<const PrioritizedOracle*>(b.oracle.get()))
        detail::write_prioritized_oracle(out, *p);
    else
        throw CheckError("unknown oracle kind in serialization");
    out << "end-spanner\n";
}

inline SpannerBundle read_bundle(std::istream& in)
{
    SpannerBundle b;
    {
        std::istringstream head(detail::expect_tag(in, "spanner"));
        std::string stretch;
        std::size_t m;
        require(bool(head >> stretch >> m), "malformed field: spanner header");
        b.declared_stretch = parse_rat(stretch);
        for (std::size_t i = 0; i < m; ++i) {
            std::istringstream ss(detail::next_data_line(in));
            Edge e;
            require(bool(ss >> e.u >> e.v >> e.w), "malformed field: spanner edge");
            b.edges.push_back(e);
        }
    }
    {
        std::istringstream meta(detail::expect_tag(in, "meta"));
        std::string tag;
        require(bool(meta >> tag) && tag == "n", "malformed field: meta n");
        require(bool(meta >> b.n), "malformed field: meta n value");
        require(bool(meta >> tag) && tag == "seed", "malformed field: meta seed");
        require(bool(meta >> b.prov.seed), "malformed field: meta seed value");
        require(bool(meta >> tag) && tag == "construction", "malformed field: meta construction");
        require(bool(meta >> b.prov.construction), "malformed field: construction name");
    }
    b.prov.params = detail::expect_tag(in, "params");
    b.supported = read_pairs(in);
    {
        std::istringstream uh(detail::expect_tag(in, "unsupported"));
        std::size_t cnt;
        require(bool(uh >> cnt), "malformed field: unsupported count");
        for (std::size_t i = 0; i < cnt; ++i) {
            std::istringstream ss(detail::next_data_line(in));
            VPair p;
            require(bool(ss >> p.u >> p.v), "malformed field: unsupported pair");
            b.unsupported.push_back(p);
        }
    }
    {
        std::istringstream oh(detail::expect_tag(in, "oracle"));
        std::string version, kind;
        require(bool(oh >> version >> kind) && version == "v1", "oracle blob: unsupported version");
        if (kind == "preserver")
            b.oracle = detail::read_tree_oracle(in, b.n, b.supported);
        else if (kind == "compose")
            b.oracle = detail::read_compose_oracle(in, b.supported);
        else if (kind == "subset")
            b.oracle = detail::read_subset_oracle(in);
        else if (kind == "sourcewise")
            b.oracle = detail::read_sourcewise_oracle(in);
        else if (kind == "prioritized")
            b.oracle = detail::read_prioritized_oracle(in, b.n);
        else
            throw InputError("oracle blob: unknown kind '" + kind + "'");
    }
    detail::expect_tag(in, "end-spanner");
    return b;
}

//--------------------------- H_kappa instance format ---------------------------
//
// hkappa <kappa> <l> <p> <expected_distance>
// <graph section> <pairs section>
// critical <pair-index> <count> <edge indices>

inline void write_hkappa(std::ostream& out, const HKappaInstance& inst)
{
    out << "hkappa " << inst.kappa << " " << inst.l << " " << inst.p << " "
        << inst.expected_distance << "\n";
    write_graph(out, inst.graph);
    write_pairs(out, inst.pairs);
    for (std::size_t i = 0; i < inst.critical.size(); ++i) {
        out << "critical " << i << " " << inst.critical[i].size();
        for (std::uint32_t e : inst.critical[i])
            out << " " << e;
        out << "\n";
    }
}

inline HKappaInstance read_hkappa(std::istream& in)
{
    HKappaInstance inst;
    std::istringstream head(detail::expect_tag(in, "hkappa"));
    require(bool(head >> inst.kappa >> inst.l >> inst.p >> inst.expected_distance),
            "malformed field: hkappa header");
    inst.graph = read_graph(in);
    inst.pairs = read_pairs(in);
    inst.critical.resize(inst.pairs.size());
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        std::istringstream ss(detail::expect_tag(in, "critical"));
        std::size_t idx, cnt;
        require(bool(ss >> idx >> cnt) && idx == i, "malformed field: critical index");
        inst.critical[i].resize(cnt);
        for (std::size_t j = 0; j < cnt; ++j)
            require(bool(ss >> inst.critical[i][j]), "malformed field: critical edge id");
    }
    // h0_copy is not serialized; verification skips the Definition 5 check
    return inst;
}

//--------------------------- ranking file & atomic writes ---------------------------

inline void write_ranking(std::ostream& out, const std::vector<Vertex>& ranking)
{
    out << "ranking " << ranking.size() << "\n";
    for (Vertex v : ranking)
        out << v << "\n";
}

inline std::vector<Vertex> read_ranking(std::istream& in)
{
    std::istringstream head(detail::expect_tag(in, "ranking"));
    std::size_t n;
    require(bool(head >> n), "malformed field: ranking size");
    std::vector<Vertex> ranking;
    ranking.reserve(n);
    std::string tok;
    while (ranking.size() < n) {
        std::istringstream ss(detail::next_data_line(in));
        Vertex v;
        while (ranking.size() < n && ss >> v)
            ranking.push_back(v);
    }
    return ranking;
}

// write to <path>.tmp then rename: partially written outputs never appear
template <typename Fn>
void atomic_write(const std::string& path, Fn&& writer)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        require(out.good(), "cannot open output file: " + tmp);
        writer(out);
        out.flush();
        require(out.good(), "write failed: " + tmp);
    }
    require(std::rename(tmp.c_str(), path.c_str()) == 0, "cannot move output into place: " + path);
}

template <typename T, typename ReadFn>
T read_file(const std::string& path, ReadFn&& fn)
{
    std::ifstream in(path);
    require(in.good(), "cannot open input file: " + path);
    return fn(in);
}

} // namespace spanlab

#endif
