#ifndef SPANLAB_LOWERBOUND_HPP
#define SPANLAB_LOWERBOUND_HPP

#include <functional>
#include <optional>

#include "spanlab/girth.hpp"
#include "spanlab/shortest_paths.hpp"

namespace spanlab {

//--------------------------- shortest-path counting ---------------------------

struct CountedDistances {
    std::vector<Weight> dist;
    std::vector<std::uint32_t> count; // number of shortest paths, saturated at 2
};

inline CountedDistances dijkstra_count(const Graph& g, Vertex s)
{
    const std::uint32_t n = g.n();
    CountedDistances out;
    out.dist.assign(n, kInf);
    out.count.assign(n, 0);
    std::vector<bool> settled(n, false);
    using Item = std::pair<Weight, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    out.dist[s] = 0;
    out.count[s] = 1;
    pq.emplace(0, s);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (settled[v] || d != out.dist[v])
            continue;
        settled[v] = true;
        for (const Arc& a : g.adj(v)) {
            Weight nd = sat_add(d, a.w);
            if (nd < out.dist[a.to]) {
                out.dist[a.to] = nd;
                out.count[a.to] = out.count[v];
                pq.emplace(nd, a.to);
            } else if (nd == out.dist[a.to] && nd != kInf) {
                out.count[a.to] = std::min<std::uint32_t>(2, out.count[a.to] + out.count[v]);
            }
        }
    }
    return out;
}

//--------------------------- layered base graphs ---------------------------

// Candidate for the layered base-graph contract: 2l+1 layers of p vertices, labeled
// edges. Kept as an explicit edge list so corrupted candidates (duplicate
// labels, cross-layer edges) are representable and the validator can witness
// them.
struct LabeledEdge {
    std::uint32_t from_layer, from;
    std::uint32_t to_layer, to;
    std::uint32_t label; // index into [0, label_count)
};

struct BaseGraph {
    std::uint32_t l = 0; // 2l+1 layers
    std::uint32_t p = 0; // layer size
    std::uint32_t label_count = 0;
    std::vector<u64> label_values; // provider metadata; may be empty for candidates
    u64 multiplier = 0;            // provider metadata (odd-step multiplier M)
    std::vector<LabeledEdge> edges;

    std::uint32_t layers() const { return 2 * l + 1; }
    Vertex vertex_id(std::uint32_t layer, std::uint32_t idx) const { return layer * p + idx; }

    Graph to_graph() const
    {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (const LabeledEdge& e : edges)
            es.push_back({vertex_id(e.from_layer, e.from), vertex_id(e.to_layer, e.to), 1});
        return Graph(layers() * p, std::move(es));
    }
};

// step[t][r][a] = row index in layer t+1 reached from (t, r) by label a
using StepTable = std::vector<std::vector<std::vector<std::uint32_t>>>;

inline std::optional<StepTable> base_step_table(const BaseGraph& bg)
{
    StepTable step(2 * bg.l,
                   std::vector<std::vector<std::uint32_t>>(
                       bg.p, std::vector<std::uint32_t>(bg.label_count, UINT32_MAX)));
    for (const LabeledEdge& e : bg.edges) {
        if (e.to_layer != e.from_layer + 1 || e.from_layer >= 2 * bg.l)
            return std::nullopt;
        auto& slot = step[e.from_layer][e.from][e.label];
        if (slot != UINT32_MAX)
            return std::nullopt;
        slot = e.to;
    }
    return step;
}

// positions per layer of the alternating (a, b, a, b, ...) walk from input u
inline std::vector<std::uint32_t> base_walk(const StepTable& step, std::uint32_t l,
                                            std::uint32_t u, std::uint32_t a, std::uint32_t b)
{
    std::vector<std::uint32_t> pos{u};
    for (std::uint32_t t = 0; t < 2 * l; ++t) {
        std::uint32_t lbl = t % 2 == 0 ? a : b;
        std::uint32_t nxt = step[t][pos.back()][lbl];
        check(nxt != UINT32_MAX, "base walk fell off a missing edge");
        pos.push_back(nxt);
    }
    return pos;
}

struct BaseGraphReport {
    bool ok = true;
    std::vector<std::string> failures; // each with a concrete witness
    std::uint32_t label_count = 0;     // reported, window not enforced
    std::size_t pair_count = 0;        // |P̈| = p * label_count^2 when valid

    void fail(std::string msg)
    {
        ok = false;
        if (failures.size() < 32)
            failures.push_back(std::move(msg));
    }
};

// Brute-force check of the three layered base-graph properties.
inline BaseGraphReport validate_base_graph(const BaseGraph& bg)
{
    BaseGraphReport rep;
    rep.label_count = bg.label_count;
    require(bg.l >= 1 && bg.p >= 1 && bg.label_count >= 1, "base graph: degenerate dimensions");

    // property 1: layering
    for (const LabeledEdge& e : bg.edges) {
        if (e.from_layer >= bg.layers() || e.to_layer >= bg.layers() || e.from >= bg.p ||
            e.to >= bg.p || e.label >= bg.label_count)
            rep.fail("property 1: edge field out of range at layer " +
                     std::to_string(e.from_layer) + " index " + std::to_string(e.from));
        else if (e.to_layer != e.from_layer + 1)
            rep.fail("property 1: edge between non-adjacent layers " +
                     std::to_string(e.from_layer) + " and " + std::to_string(e.to_layer));
    }
    if (!rep.ok)
        return rep;

    // property 2: exactly one out-edge per (vertex, label), distinct targets
    StepTable step(2 * bg.l,
                   std::vector<std::vector<std::uint32_t>>(
                       bg.p, std::vector<std::uint32_t>(bg.label_count, UINT32_MAX)));
    for (const LabeledEdge& e : bg.edges) {
        auto& slot = step[e.from_layer][e.from][e.label];
        if (slot != UINT32_MAX)
            rep.fail("property 2: duplicate label " + std::to_string(e.label) + " from (" +
                     std::to_string(e.from_layer) + "," + std::to_string(e.from) + ")");
        slot = e.to;
    }
    for (std::uint32_t t = 0; t < 2 * bg.l && rep.ok; ++t)
        for (std::uint32_t r = 0; r < bg.p; ++r)
            for (std::uint32_t a = 0; a < bg.label_count; ++a) {
                if (step[t][r][a] == UINT32_MAX) {
                    rep.fail("property 2: missing label " + std::to_string(a) + " from (" +
                             std::to_string(t) + "," + std::to_string(r) + ")");
                    continue;
                }
                for (std::uint32_t b = a + 1; b < bg.label_count; ++b)
                    if (step[t][r][a] == step[t][r][b])
                        rep.fail("property 2: labels " + std::to_string(a) + "," +
                                 std::to_string(b) + " share a target from (" + std::to_string(t) +
                                 "," + std::to_string(r) + ")");
            }
    if (!rep.ok)
        return rep;

    // property 3a: alternating path is the strictly unique shortest path
    Graph g = bg.to_graph();
    for (std::uint32_t u = 0; u < bg.p && rep.ok; ++u) {
        CountedDistances cd = dijkstra_count(g, bg.vertex_id(0, u));
        for (std::uint32_t a = 0; a < bg.label_count && rep.ok; ++a)
            for (std::uint32_t b = 0; b < bg.label_count; ++b) {
                auto pos = base_walk(step, bg.l, u, a, b);
                Vertex v = bg.vertex_id(2 * bg.l, pos.back());
                if (cd.dist[v] != 2 * bg.l || cd.count[v] != 1) {
                    rep.fail("property 3: pair (u=" + std::to_string(u) + ",a=" +
                             std::to_string(a) + ",b=" + std::to_string(b) +
                             ") has dist/count " + std::to_string(cd.dist[v]) + "/" +
                             std::to_string(cd.count[v]) + " (want " +
                             std::to_string(2 * bg.l) + "/1)");
                    break;
                }
            }
    }
    if (!rep.ok)
        return rep;

    // property 3b: equal-label paths from distinct inputs are vertex-disjoint
    std::vector<std::uint32_t> owner(bg.layers() * bg.p);
    for (std::uint32_t a = 0; a < bg.label_count && rep.ok; ++a)
        for (std::uint32_t b = 0; b < bg.label_count && rep.ok; ++b) {
            std::fill(owner.begin(), owner.end(), UINT32_MAX);
            for (std::uint32_t u = 0; u < bg.p; ++u) {
                auto pos = base_walk(step, bg.l, u, a, b);
                for (std::uint32_t t = 0; t < pos.size(); ++t) {
                    std::uint32_t& own = owner[bg.vertex_id(t, pos[t])];
                    if (own != UINT32_MAX) {
                        rep.fail("property 3: paths of inputs " + std::to_string(own) + " and " +
                                 std::to_string(u) + " with labels (" + std::to_string(a) + "," +
                                 std::to_string(b) + ") meet at layer " + std::to_string(t));
                        break;
                    }
                    own = u;
                }
                if (!rep.ok)
                    break;
            }
        }
    if (rep.ok)
        rep.pair_count = (std::size_t)bg.p * bg.label_count * bg.label_count;
    return rep;
}

//--------------------------- the modular provider ---------------------------

// l-fold sums over the label set that hit l*a must force every term to a.
// Checked by convolution counting sequences; exactly one sequence (all-a) may
// reach each l*a.
inline bool labels_convex(std::uint32_t l, const std::vector<u64>& labels)
{
    if (labels.empty())
        return false;
    u64 top = labels.back() * l;
    std::vector<std::uint32_t> ways(top + 1, 0);
    ways[0] = 1;
    for (std::uint32_t step = 0; step < l; ++step) {
        std::vector<std::uint32_t> next(top + 1, 0);
        for (u64 s = 0; s <= top; ++s)
            if (ways[s])
                for (u64 a : labels)
                    if (s + a <= top)
                        next[s + a] = std::min<std::uint32_t>(2, next[s + a] + ways[s]);
        ways = std::move(next);
    }
    for (u64 a : labels)
        if (ways[l * a] != 1)
            return false;
    return true;
}

// Greedy convex-position subset of [0, B). l = 1 admits the whole range.
inline std::vector<u64> convex_labels(std::uint32_t l, std::uint32_t budget)
{
    require(l >= 1 && budget >= 1, "convex_labels: need l >= 1 and budget >= 1");
    std::vector<u64> labels;
    for (u64 c = 0; c < budget; ++c) {
        if (l == 1) {
            labels.push_back(c);
            continue;
        }
        labels.push_back(c);
        if (!labels_convex(l, labels))
            labels.pop_back();
    }
    require(!labels.empty(), "convex_labels: no valid label set within budget");
    return labels;
}

// Residues mod m; step t -> t+1 adds +a on even t and +M*a on odd t. With no
// wraparound the displacement l*a + M*l*b determines (a, b) uniquely (base-M
// digits), and the convex label set pins every individual step.
inline BaseGraph build_modular_base_graph(std::uint32_t l, std::uint32_t m,
                                          std::vector<u64> labels, u64 multiplier)
{
    require(l >= 1 && m >= 1 && !labels.empty(), "modular base graph: degenerate parameters");
    BaseGraph bg;
    bg.l = l;
    bg.p = m;
    bg.label_count = (std::uint32_t)labels.size();
    bg.label_values = std::move(labels);
    bg.multiplier = multiplier;
    for (std::uint32_t t = 0; t < 2 * l; ++t)
        for (std::uint32_t r = 0; r < m; ++r)
            for (std::uint32_t ai = 0; ai < bg.label_count; ++ai) {
                u64 offset = t % 2 == 0 ? bg.label_values[ai] : multiplier * bg.label_values[ai];
                bg.edges.push_back({t, r, t + 1, (std::uint32_t)((r + offset) % m), ai});
            }
    return bg;
}

// Provider sizing M = l*B + 1, m = l*B*(M+1) + 1: displacements never wrap.
inline BaseGraph convex_label_base_graph(std::uint32_t l, std::uint32_t budget)
{
    require(l >= 1, "base graph provider: l must be at least 1");
    require(budget >= 2, "base graph provider: label budget must be at least 2");
    u64 M = (u64)l * budget + 1;
    u64 m = (u64)l * budget * (M + 1) + 1;
    require(m <= kMaxVertices, "base graph provider: modulus too large");
    return build_modular_base_graph(l, (std::uint32_t)m, convex_labels(l, budget), M);
}

// Exact layer size for recursion: the largest feasible budget whose maximal
// displacement avoids wraparound mod target_p.
inline BaseGraph convex_label_base_graph_sized(std::uint32_t l, std::uint32_t target_p)
{
    require(target_p >= 1, "base graph provider: target layer size must be positive");
    std::uint32_t budget = 1;
    for (std::uint32_t b = 2; b <= target_p; ++b) {
        u64 M = (u64)l * b + 1;
        u64 max_disp = (u64)l * (b - 1) * (M + 1);
        if (max_disp < target_p)
            budget = b;
        else
            break;
    }
    u64 M = (u64)l * budget + 1;
    return build_modular_base_graph(l, target_p, convex_labels(l, budget), M);
}

using BaseProvider = std::function<BaseGraph(std::uint32_t l, std::uint32_t exact_p)>;

inline BaseProvider convex_base_provider()
{
    return [](std::uint32_t l, std::uint32_t p) { return convex_label_base_graph_sized(l, p); };
}

//--------------------------- H_kappa instances ---------------------------

struct HKappaInstance {
    Graph graph;
    std::uint32_t kappa = 0, l = 0, p = 0; // p = input/output port count
    PairSet pairs;                         // P_kappa
    std::vector<std::vector<std::uint32_t>> critical; // per pair, edge indices
    std::vector<Vertex> input_ports, output_ports;
    std::vector<std::uint32_t> h0_copy; // per vertex: deepest K_{p',p'} copy, UINT32_MAX for none
    std::uint32_t h0_count = 0;
    Weight expected_distance = 0; // (2*l*kappa + 1) * (2l-1)^kappa
};

namespace detail {

struct Fragment {
    std::uint32_t n = 0;
    std::vector<Edge> edges;
    std::vector<Vertex> in_ports, out_ports;
    PairSet port_pairs; // (input index, output index)
    std::vector<std::vector<std::uint32_t>> critical;
    std::unordered_map<u64, std::uint32_t> pair_index;
    std::vector<std::uint32_t> h0_copy;
    std::uint32_t h0_count = 0;
};

inline Fragment fragment_k0(std::uint32_t p)
{
    Fragment f;
    f.n = 2 * p;
    f.in_ports.resize(p);
    f.out_ports.resize(p);
    f.h0_copy.assign(f.n, 0);
    f.h0_count = 1;
    for (std::uint32_t i = 0; i < p; ++i) {
        f.in_ports[i] = i;
        f.out_ports[i] = p + i;
    }
    for (std::uint32_t i = 0; i < p; ++i)
        for (std::uint32_t j = 0; j < p; ++j) {
            f.pair_index.emplace(((u64)i << 32) | j, (std::uint32_t)f.port_pairs.size());
            f.port_pairs.push_back({i, j});
            f.critical.push_back({(std::uint32_t)f.edges.size()});
            f.edges.push_back({i, p + j, 1});
        }
    return f;
}

inline Fragment fragment_recursive(const BaseGraph& base, std::uint32_t kappa,
                                   const BaseProvider& provider, std::size_t vertex_cap)
{
    check(kappa >= 1, "fragment_recursive needs kappa >= 1");
    const std::uint32_t l = base.l, p = base.p, pprime = base.label_count;
    Fragment sub = kappa == 1 ? fragment_k0(pprime)
                              : fragment_recursive(provider(l, pprime), kappa - 1, provider,
                                                   vertex_cap);
    auto step_opt = base_step_table(base);
    check(step_opt.has_value(), "provider produced a malformed base graph");
    const StepTable& step = *step_opt;
    for (std::uint32_t t = 0; t < 2 * l; ++t)
        for (std::uint32_t r = 0; r < p; ++r)
            for (std::uint32_t a = 0; a < pprime; ++a)
                check(step[t][r][a] != UINT32_MAX, "provider base graph misses a label edge");

    Fragment f;
    const std::uint32_t copies = (2 * l - 1) * p;
    f.n = 2 * p + copies * sub.n;
    require((std::size_t)f.n <= vertex_cap, "H_kappa vertex cap exceeded");
    f.in_ports.resize(p);
    f.out_ports.resize(p);
    for (std::uint32_t i = 0; i < p; ++i) {
        f.in_ports[i] = i;
        f.out_ports[i] = p + i;
    }
    auto copy_id = [p](std::uint32_t layer, std::uint32_t r) { return (layer - 1) * p + r; };
    auto copy_vertex_base = [&](std::uint32_t c) { return 2 * p + c * sub.n; };

    // copy edges first, en bloc, so per-copy critical indices translate by offset
    f.h0_copy.assign(f.n, UINT32_MAX);
    f.h0_count = copies * sub.h0_count;
    for (std::uint32_t c = 0; c < copies; ++c) {
        Vertex off = copy_vertex_base(c);
        for (const Edge& e : sub.edges)
            f.edges.push_back({e.u + off, e.v + off, e.w});
        for (std::uint32_t v = 0; v < sub.n; ++v)
            if (sub.h0_copy[v] != UINT32_MAX)
                f.h0_copy[off + v] = c * sub.h0_count + sub.h0_copy[v];
    }

    Weight joint = 1;
    for (std::uint32_t i = 0; i < kappa; ++i)
        joint *= 2 * l - 1;
    for (std::uint32_t t = 0; t < 2 * l; ++t)
        for (std::uint32_t r = 0; r < p; ++r)
            for (std::uint32_t a = 0; a < pprime; ++a) {
                std::uint32_t r2 = step[t][r][a];
                // layer t even: input ports on both sides; odd: output ports
                bool even = t % 2 == 0;
                Vertex x = t == 0 ? f.in_ports[r]
                                  : copy_vertex_base(copy_id(t, r)) +
                                        (even ? sub.in_ports[a] : sub.out_ports[a]);
                Vertex y = t == 2 * l - 1
                               ? f.out_ports[r2]
                               : copy_vertex_base(copy_id(t + 1, r2)) +
                                     (even ? sub.in_ports[a] : sub.out_ports[a]);
                f.edges.push_back({x, y, joint});
            }

    // pairs via the label bijection: (u, out(u,a,b)) whenever (a,b) indexes a
    // sub-pair; critical edges are the sub-pair's lists inside the 2l-1 copies
    for (std::uint32_t u = 0; u < p; ++u)
        for (std::uint32_t a = 0; a < pprime; ++a)
            for (std::uint32_t b = 0; b < pprime; ++b) {
                auto sit = sub.pair_index.find(((u64)a << 32) | b);
                if (sit == sub.pair_index.end())
                    continue;
                auto pos = base_walk(step, l, u, a, b);
                std::uint32_t v = pos.back();
                auto [it, fresh] =
                    f.pair_index.try_emplace(((u64)u << 32) | v, (std::uint32_t)f.port_pairs.size());
                check(fresh, "label bijection collision: provider violates the unique-labeling contract");
                f.port_pairs.push_back({u, v});
                std::vector<std::uint32_t> crit;
                for (std::uint32_t t = 1; t < 2 * l; ++t) {
                    std::uint32_t c = copy_id(t, pos[t]);
                    std::uint32_t edge_off = c * (std::uint32_t)sub.edges.size();
                    for (std::uint32_t idx : sub.critical[sit->second])
                        crit.push_back(edge_off + idx);
                }
                f.critical.push_back(std::move(crit));
            }
    return f;
}

} // namespace detail

inline HKappaInstance build_h_kappa_k0(std::uint32_t p, std::size_t vertex_cap = 100000)
{
    require(p >= 1 && 2ull * p <= vertex_cap, "H_0: bad port count");
    detail::Fragment f = detail::fragment_k0(p);
    HKappaInstance inst;
    inst.kappa = 0;
    inst.l = 1;
    inst.p = p;
    inst.graph = Graph(f.n, std::move(f.edges));
    inst.input_ports = f.in_ports;
    inst.output_ports = f.out_ports;
    inst.h0_copy = std::move(f.h0_copy);
    inst.h0_count = f.h0_count;
    inst.expected_distance = 1;
    for (std::size_t i = 0; i < f.port_pairs.size(); ++i)
        inst.pairs.push_back({f.in_ports[f.port_pairs[i].u], f.out_ports[f.port_pairs[i].v]});
    inst.critical = std::move(f.critical);
    return inst;
}

// kappa >= 1: internal vertices of the top base graph become H_{kappa-1}
// copies over p' = |labels| ports; connecting edges carry weight (2l-1)^kappa.
inline HKappaInstance build_h_kappa(const BaseGraph& top_base, std::uint32_t kappa,
                                    const BaseProvider& provider = convex_base_provider(),
                                    std::size_t vertex_cap = 100000)
{
    require(kappa >= 1, "build_h_kappa: use build_h_kappa_k0 for kappa = 0");
    detail::Fragment f = detail::fragment_recursive(top_base, kappa, provider, vertex_cap);
    HKappaInstance inst;
    inst.kappa = kappa;
    inst.l = top_base.l;
    inst.p = top_base.p;
    inst.graph = Graph(f.n, std::move(f.edges));
    inst.input_ports = f.in_ports;
    inst.output_ports = f.out_ports;
    inst.h0_copy = std::move(f.h0_copy);
    inst.h0_count = f.h0_count;
    Weight d = 2ull * top_base.l * kappa + 1;
    for (std::uint32_t i = 0; i < kappa; ++i)
        d *= 2 * top_base.l - 1;
    inst.expected_distance = d;
    for (std::size_t i = 0; i < f.port_pairs.size(); ++i)
        inst.pairs.push_back({f.in_ports[f.port_pairs[i].u], f.out_ports[f.port_pairs[i].v]});
    inst.critical = std::move(f.critical);
    return inst;
}

//--------------------------- critical-edge deletion mechanism ---------------------------

struct DeletionMechanismReport {
    bool distances_ok = true;       // every pair at the expected unique distance
    bool uniqueness_ok = true;      // exactly one shortest path per pair
    bool critical_definition_ok = true; // critical edges lie inside H_0 copies
    bool disjointness_ok = true;    // critical lists pairwise disjoint
    bool deletion_ok = true;        // post-deletion distance >= bound
    std::optional<VPair> witness;
    std::size_t pairs_checked = 0;
    std::size_t deletion_pairs = 0;
    u64 kept_per_pair = 0;       // b^kappa - 1
    Weight deletion_bound = 0;   // (2lk+1)(2l-1)^k + 2(2l-b)^k
    Rat implied_stretch{1, 1};   // deletion_bound / expected distance
    Rat threshold_stretch{1, 1}; // 1 + 1/(6*l*kappa), kappa >= 1
    std::uint32_t paper_b = 0;   // floor((2l-1)/kappa) + 1
};

// (i) unique-shortest-path check, (ii) critical-edge disjointness,
// (iii) the critical-edge deletion experiment, (iv) the implied
// stretch vs the 1 + 1/(6*l*kappa) threshold.
inline DeletionMechanismReport verify_deletion_mechanism(const HKappaInstance& inst, std::uint32_t b,
                                                std::size_t deletion_sample_cap = SIZE_MAX)
{
    require(b >= 2, "deletion mechanism: b must be at least 2");
    require(inst.kappa == 0 || b <= 2 * inst.l, "deletion mechanism: b must be at most 2l");
    DeletionMechanismReport rep;
    u64 bk = 1;
    for (std::uint32_t i = 0; i < inst.kappa; ++i)
        bk *= b;
    rep.kept_per_pair = bk - 1;
    Weight extra = 1;
    for (std::uint32_t i = 0; i < inst.kappa; ++i)
        extra *= 2 * inst.l - b;
    rep.deletion_bound = inst.expected_distance + 2 * extra;
    rep.implied_stretch = make_rat(rep.deletion_bound, inst.expected_distance);
    if (inst.kappa >= 1)
        rep.threshold_stretch =
            rat_add(make_rat(1, 1), make_rat(1, 6ull * inst.l * inst.kappa));
    if (inst.kappa >= 1)
        rep.paper_b = (2 * inst.l - 1) / inst.kappa + 1;

    // distances + uniqueness, grouped by source
    std::vector<std::size_t> order(inst.pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
        return inst.pairs[a].u < inst.pairs[c].u;
    });
    for (std::size_t i = 0; i < order.size();) {
        Vertex s = inst.pairs[order[i]].u;
        CountedDistances cd = dijkstra_count(inst.graph, s);
        for (; i < order.size() && inst.pairs[order[i]].u == s; ++i) {
            const VPair& pr = inst.pairs[order[i]];
            ++rep.pairs_checked;
            if (cd.dist[pr.v] != inst.expected_distance) {
                rep.distances_ok = false;
                rep.witness = rep.witness ? rep.witness : std::optional<VPair>(pr);
            }
            if (cd.count[pr.v] != 1) {
                rep.uniqueness_ok = false;
                rep.witness = rep.witness ? rep.witness : std::optional<VPair>(pr);
            }
        }
    }

    // critical edges: inside H_0 copies, pairwise disjoint across pairs
    // (copy ownership is absent on deserialized instances; the check is skipped)
    std::vector<bool> seen(inst.graph.m(), false);
    for (std::size_t i = 0; i < inst.critical.size(); ++i)
        for (std::uint32_t e : inst.critical[i]) {
            const Edge& ed = inst.graph.edge(e);
            if (!inst.h0_copy.empty() &&
                (inst.h0_copy[ed.u] == UINT32_MAX || inst.h0_copy[ed.u] != inst.h0_copy[ed.v])) {
                rep.critical_definition_ok = false;
                rep.witness = rep.witness ? rep.witness : std::optional<VPair>(inst.pairs[i]);
            }
            if (seen[e]) {
                rep.disjointness_ok = false;
                rep.witness = rep.witness ? rep.witness : std::optional<VPair>(inst.pairs[i]);
            }
            seen[e] = true;
        }

    // deletion experiment: keep only the last b^kappa - 1 critical edges of a
    // pair, rerun the shortest path, demand the induction's lower bound
    std::size_t stride = inst.pairs.size() <= deletion_sample_cap
                             ? 1
                             : (inst.pairs.size() + deletion_sample_cap - 1) / deletion_sample_cap;
    std::vector<bool> removed(inst.graph.m(), false);
    for (std::size_t i = 0; i < inst.pairs.size(); i += stride) {
        const auto& crit = inst.critical[i];
        if (crit.size() < bk)
            continue; // already fewer than b^kappa critical edges
        std::size_t del = crit.size() - (bk - 1);
        for (std::size_t j = 0; j < del; ++j)
            removed[crit[j]] = true;
        // Dijkstra on the filtered graph
        const Graph& g = inst.graph;
        std::vector<Weight> dist(g.n(), kInf);
        std::vector<bool> settled(g.n(), false);
        using Item = std::pair<Weight, Vertex>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[inst.pairs[i].u] = 0;
        pq.emplace(0, inst.pairs[i].u);
        while (!pq.empty()) {
            auto [dd, v] = pq.top();
            pq.pop();
            if (settled[v])
                continue;
            settled[v] = true;
            for (const Arc& a : g.adj(v)) {
                if (removed[a.edge])
                    continue;
                Weight nd = sat_add(dd, a.w);
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    pq.emplace(nd, a.to);
                }
            }
        }
        ++rep.deletion_pairs;
        if (dist[inst.pairs[i].v] < rep.deletion_bound) {
            rep.deletion_ok = false;
            rep.witness = rep.witness ? rep.witness : std::optional<VPair>(inst.pairs[i]);
        }
        for (std::size_t j = 0; j < del; ++j)
            removed[crit[j]] = false;
    }
    return rep;
}

//--------------------------- delta-pair instances ---------------------------

struct DeltaPairInstance {
    Graph host; // unit weights, girth > k
    std::uint32_t k = 0;
    Rat alpha{1, 1};
    std::uint32_t delta = 0;
    std::uint32_t degree = 0; // regular degree, 0 when irregular
    PairSet pairs;            // all pairs at distance exactly delta, u < v
    std::vector<std::vector<Vertex>> paths; // per pair, the unique delta-path
    std::vector<std::uint32_t> coverage;    // per host edge: delta-paths through it
};

// P_0 = pairs at distance exactly delta = floor(k/(alpha+1)); the girth bound
// makes each delta-path unique (verified), coverage counted per edge.
inline DeltaPairInstance delta_pairs(const Graph& g, std::uint32_t k, Rat alpha)
{
    for (const Edge& e : g.edges())
        require(e.w == 1, "delta-pairs: host graph must be unweighted (unit weights)");
    require(alpha.num >= alpha.den, "delta-pairs: alpha must be at least 1");
    require((u64)k * alpha.den >= alpha.num + alpha.den, "delta-pairs: need k >= alpha + 1");
    u64 gg = girth(g);
    require(gg > k, "delta-pairs: girth must exceed k");
    DeltaPairInstance inst;
    inst.host = g;
    inst.k = k;
    inst.alpha = alpha;
    inst.delta = (std::uint32_t)((u64)k * alpha.den / (alpha.num + alpha.den));
    require(inst.delta >= 1, "delta-pairs: delta vanished");
    inst.degree = g.n() ? g.degree(0) : 0;
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) != inst.degree)
            inst.degree = 0;
    inst.coverage.assign(g.m(), 0);

    for (Vertex u = 0; u < g.n(); ++u) {
        CountedDistances cd = dijkstra_count(g, u);
        for (Vertex v = u + 1; v < g.n(); ++v) {
            if (cd.dist[v] != inst.delta)
                continue;
            check(cd.count[v] == 1, "delta-pair with a non-unique shortest path (girth bug)");
            inst.pairs.push_back({u, v});
            std::vector<Vertex> path{v};
            Vertex cur = v;
            while (cur != u) {
                Vertex pred = kNoVertex;
                for (const Arc& a : g.adj(cur))
                    if (cd.dist[a.to] + 1 == cd.dist[cur] && cd.count[a.to] >= 1) {
                        check(pred == kNoVertex, "multiple tight predecessors on a unique path");
                        pred = a.to;
                    }
                check(pred != kNoVertex, "broken predecessor chain");
                const Arc* arc = g.find_arc(cur, pred);
                inst.coverage[arc->edge]++;
                path.push_back(pred);
                cur = pred;
            }
            std::reverse(path.begin(), path.end());
            inst.paths.push_back(std::move(path));
        }
    }
    return inst;
}

struct CoverReport {
    std::size_t sampled_pairs = 0;
    std::size_t covered_edges = 0;
    std::size_t total_edges = 0;
    Rat probability{1, 1};
    Rat coverage{0, 1};           // covered / total
    bool overhead_defined = false;
    Rat overhead{0, 1};           // covered / sampled (a floor on any alpha-spanner for the sample)
    std::vector<std::uint32_t> sampled_index;
};

// Sampling experiment: sample each pair independently with probability
// 1/(delta * p^{delta-1}); any alpha-spanner for the sample must contain
// every covered edge, so |covered|/|sample| lower-bounds its size overhead.
inline CoverReport sample_and_cover(const DeltaPairInstance& inst, u64 seed)
{
    require(inst.degree >= 2, "sample_and_cover: host must be regular with degree >= 2");
    u64 p = inst.degree - 1;
    u64 denom = inst.delta;
    for (std::uint32_t i = 0; i + 1 < inst.delta; ++i)
        denom *= p;
    CoverReport rep;
    rep.total_edges = inst.host.m();
    rep.probability = make_rat(1, denom);
    u64 threshold = denom == 1
                        ? std::numeric_limits<u64>::max()
                        : (u64)((long double)1.0 / (long double)denom * 18446744073709551616.0L);
    std::vector<bool> covered(inst.host.m(), false);
    for (std::uint32_t i = 0; i < inst.pairs.size(); ++i) {
        if (denom != 1 && hash_rand(seed, 0xde17a, i) >= threshold)
            continue;
        rep.sampled_index.push_back(i);
        const auto& path = inst.paths[i];
        for (std::size_t j = 0; j + 1 < path.size(); ++j)
            covered[inst.host.find_arc(path[j], path[j + 1])->edge] = true;
    }
    rep.sampled_pairs = rep.sampled_index.size();
    for (bool c : covered)
        rep.covered_edges += c;
    rep.coverage = make_rat(rep.covered_edges, std::max<std::size_t>(1, rep.total_edges));
    if (rep.sampled_pairs > 0) {
        rep.overhead_defined = true;
        rep.overhead = make_rat(rep.covered_edges, rep.sampled_pairs);
    }
    return rep;
}

} // namespace spanlab

#endif
