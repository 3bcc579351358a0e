// spanlab: generation, construction, auditing, querying and sweeps for
// path-reporting pairwise/subset/source-wise/prioritized spanners, hopsets,
// and the layered/girth lower-bound instance families.
//
// Exit codes: 0 success, 1 audit violations or failed verification,
// 2 usage/input errors.

#include <iostream>

#include <CLI11.hpp>

#include "spanlab/spanlab.hpp"

using namespace spanlab;

namespace {

Graph load_graph(const std::string& path)
{
    return read_file<Graph>(path, [](std::istream& in) { return read_graph(in); });
}

PairSet load_pairs(const std::string& path)
{
    return read_file<PairSet>(path, [](std::istream& in) { return read_pairs(in); });
}

std::vector<Vertex> load_ranking(const std::string& path)
{
    return read_file<std::vector<Vertex>>(path, [](std::istream& in) { return read_ranking(in); });
}

SpannerBundle load_bundle(const std::string& path)
{
    return read_file<SpannerBundle>(path, [](std::istream& in) { return read_bundle(in); });
}

void save_bundle(const std::string& path, const SpannerBundle& b)
{
    atomic_write(path, [&](std::ostream& out) { write_bundle(out, b); });
}

int report_and_exit(const Graph& g, const SpannerBundle& b, const PairSet& pairs)
{
    AuditReport rep = audit_bundle(g, b, pairs);
    std::cout << csv_header() << "\n" << csv_row(rep) << "\n";
    for (std::size_t i = 0; i < rep.violations.size() && i < 25; ++i) {
        const Violation& v = rep.violations[i];
        std::cerr << "violation: pair (" << v.pair.u << "," << v.pair.v << ") reported "
                  << v.reported << " d_G " << v.d_g << (v.invalid_path ? " [invalid path]" : "")
                  << "\n";
    }
    if (rep.violations.size() > 25)
        std::cerr << "... " << rep.violations.size() - 25 << " more violations\n";
    double overhead = rep.pair_count ? (double)rep.overhead.num / (double)rep.overhead.den : 0.0;
    std::cerr << "audit: " << rep.pair_count << " pairs, " << rep.violations.size()
              << " violations, " << rep.unsupported << " unsupported, overhead "
              << to_string(rep.overhead) << " (= " << overhead << "), " << rep.wall_ms << " ms\n";
    return rep.violations.empty() ? 0 : 1;
}

// Bundles with implicit support (subset: A x A, source-wise: A x V) get their
// default audit pairs from the oracle's own domain.
PairSet default_bundle_pairs(const Graph& g, const SpannerBundle& b, u64 seed, bool* sampled)
{
    *sampled = false;
    if (!b.supported.empty())
        return b.supported;
    if (auto* s = dynamic_cast<const SubsetOracle*>(b.oracle.get())) {
        const auto& A = s->subset;
        PairSet out;
        if (A.size() * (A.size() - 1) / 2 <= 10000) {
            for (std::size_t i = 0; i < A.size(); ++i)
                for (std::size_t j = i + 1; j < A.size(); ++j)
                    out.push_back({A[i], A[j]});
        } else {
            *sampled = true;
            for (std::size_t i = 0; out.size() < 10000; ++i) {
                Vertex a = A[hash_rand(seed, 0x5e7a, i) % A.size()];
                Vertex c = A[hash_rand(seed, 0x5e7b, i) % A.size()];
                if (a != c)
                    out.push_back({std::min(a, c), std::max(a, c)});
            }
        }
        return out;
    }
    if (auto* w = dynamic_cast<const SourcewiseOracle*>(b.oracle.get())) {
        const auto& A = w->inner_subset.subset;
        PairSet out;
        if (A.size() * g.n() <= 10000) {
            for (Vertex a : A)
                for (Vertex v = 0; v < g.n(); ++v)
                    if (a != v)
                        out.push_back({a, v});
        } else {
            *sampled = true;
            for (std::size_t i = 0; out.size() < 10000; ++i) {
                Vertex a = A[hash_rand(seed, 0x50a, i) % A.size()];
                Vertex v = (Vertex)(hash_rand(seed, 0x50b, i) % g.n());
                if (a != v)
                    out.push_back({a, v});
            }
        }
        return out;
    }
    return default_audit_pairs(g, seed, sampled);
}

std::vector<u64> parse_u64_list(const std::string& csv)
{
    std::vector<u64> out;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(std::stoull(tok));
    return out;
}

std::vector<std::string> parse_str_list(const std::string& csv)
{
    std::vector<std::string> out;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(tok);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spanner/hopset construction & audit toolbox"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "generate a graph instance");
    std::string gen_family = "random", gen_out;
    GenParams gp;
    gp.n = 100;
    gp.m = 300;
    std::uint64_t gen_seed = 0;
    bool gen_has_seed = false;
    gen_cmd->add_option("--family", gen_family, "random|grid|petersen|heawood|regular");
    gen_cmd->add_option("--n", gp.n);
    gen_cmd->add_option("--m", gp.m);
    gen_cmd->add_option("--wmin", gp.wmin);
    gen_cmd->add_option("--wmax", gp.wmax);
    gen_cmd->add_option("--rows", gp.rows);
    gen_cmd->add_option("--cols", gp.cols);
    gen_cmd->add_option("--degree", gp.degree);
    gen_cmd->add_option("--girth-above", gp.girth_above);
    gen_cmd->add_option("--seed", gen_seed)->each([&](const std::string&) { gen_has_seed = true; });
    gen_cmd->add_option("--out", gen_out)->required();

    // ---- build-hopset ----
    auto* bh = app.add_subcommand("build-hopset", "build the partitioned hopset");
    std::string bh_graph, bh_out;
    std::uint32_t bh_k = 4, bh_c = 2;
    std::uint64_t bh_seed = 0;
    bh->add_option("--graph", bh_graph)->required();
    bh->add_option("--k", bh_k)->required();
    bh->add_option("--c", bh_c)->required();
    bh->add_option("--seed", bh_seed)->required();
    bh->add_option("--out", bh_out)->required();

    // ---- build-pairwise ----
    auto* bp = app.add_subcommand("build-pairwise", "pairwise spanner via hopset composition");
    std::string bp_graph, bp_pairs, bp_out;
    std::uint32_t bp_k = 4, bp_c = 2;
    std::uint64_t bp_seed = 0;
    bool bp_plain = false;
    bp->add_option("--graph", bp_graph)->required();
    bp->add_option("--pairs", bp_pairs)->required();
    bp->add_option("--k", bp_k)->required();
    bp->add_option("--c", bp_c)->required();
    bp->add_option("--seed", bp_seed)->required();
    bp->add_flag("--no-partition", bp_plain, "use the plain, unpartitioned composition");
    bp->add_option("--out", bp_out)->required();

    // ---- build-subset / build-sourcewise ----
    auto* bs = app.add_subcommand("build-subset", "subset spanner over A x A");
    auto* bw = app.add_subcommand("build-sourcewise", "source-wise spanner over A x V");
    std::string bs_graph, bs_subset_file, bs_out;
    std::uint32_t bs_subset_size = 0, bs_kem = 2;
    std::uint64_t bs_seed = 0;
    for (auto* cmd : {bs, bw}) {
        cmd->add_option("--graph", bs_graph)->required();
        cmd->add_option("--subset", bs_subset_file, "ranking-format file with the subset ids");
        cmd->add_option("--subset-size", bs_subset_size, "use vertices 0..N-1 instead of a file");
        cmd->add_option("--k-em", bs_kem)->required();
        cmd->add_option("--seed", bs_seed)->required();
        cmd->add_option("--out", bs_out)->required();
    }

    // ---- build-prioritized ----
    auto* bpr = app.add_subcommand("build-prioritized", "prioritized spanner over a ranking");
    std::string bpr_graph, bpr_ranking, bpr_out, bpr_schedule = "doubling";
    std::uint32_t bpr_kem = 0;
    double bpr_beta = 0.0;
    std::uint64_t bpr_seed = 0;
    bpr->add_option("--graph", bpr_graph)->required();
    bpr->add_option("--ranking", bpr_ranking)->required();
    bpr->add_option("--schedule", bpr_schedule, "power|doubling");
    bpr->add_option("--k-em", bpr_kem, "catch-all emulator levels (0 = auto)");
    bpr->add_option("--beta", bpr_beta, "size coefficient for k_of_prefix (0 = calibrate)");
    bpr->add_option("--seed", bpr_seed)->required();
    bpr->add_option("--out", bpr_out)->required();

    // ---- lb-hkappa ----
    auto* lh = app.add_subcommand("lb-hkappa", "layered lower-bound instance H_kappa");
    std::uint32_t lh_kappa = 1, lh_l = 2, lh_budget = 4, lh_p = 3, lh_b = 2;
    std::size_t lh_cap = 100000, lh_sample = SIZE_MAX;
    std::string lh_out;
    bool lh_noverify = false;
    lh->add_option("--kappa", lh_kappa)->required();
    lh->add_option("--l", lh_l);
    lh->add_option("--label-budget", lh_budget);
    lh->add_option("--p", lh_p, "port count for kappa = 0");
    lh->add_option("--b", lh_b, "deletion parameter b in [2, 2l]");
    lh->add_option("--vertex-cap", lh_cap);
    lh->add_option("--sample-pairs", lh_sample, "cap on deletion-tested pairs");
    lh->add_flag("--no-verify", lh_noverify);
    lh->add_option("--out", lh_out);

    // ---- lb-delta ----
    auto* ld = app.add_subcommand("lb-delta", "girth-based delta-pair instance");
    std::string ld_graph, ld_family, ld_alpha = "1", ld_out_pairs, ld_out_graph;
    std::uint32_t ld_k = 4;
    std::uint64_t ld_seed = 0;
    bool ld_experiment = false, ld_has_seed = false;
    std::uint32_t ld_trials = 1;
    ld->add_option("--graph", ld_graph);
    ld->add_option("--family", ld_family, "generate the host instead of loading it");
    ld->add_option("--k", ld_k)->required();
    ld->add_option("--alpha", ld_alpha, "stretch as integer or num/den");
    ld->add_flag("--experiment", ld_experiment, "run the pair-sampling coverage experiment");
    ld->add_option("--trials", ld_trials);
    ld->add_option("--seed", ld_seed)->each([&](const std::string&) { ld_has_seed = true; });
    ld->add_option("--out-pairs", ld_out_pairs);
    ld->add_option("--out-graph", ld_out_graph);

    // ---- audit ----
    auto* au = app.add_subcommand("audit", "re-audit a bundle or hopset against its graph");
    std::string au_graph, au_bundle, au_hopset, au_pairs, au_alpha;
    std::uint64_t au_beta = 0, au_sample_seed = 1;
    au->add_option("--graph", au_graph)->required();
    au->add_option("--bundle", au_bundle);
    au->add_option("--hopset", au_hopset);
    au->add_option("--pairs", au_pairs);
    au->add_option("--alpha", au_alpha, "hopset audit stretch (defaults to 8c+3)");
    au->add_option("--beta-hops", au_beta, "hopset audit hop budget (defaults to declared)");
    au->add_option("--sample-seed", au_sample_seed);

    // ---- query ----
    auto* qu = app.add_subcommand("query", "report a path from a bundle");
    std::string qu_bundle;
    std::vector<std::uint64_t> qu_pair;
    qu->add_option("--bundle", qu_bundle)->required();
    qu->add_option("--pair", qu_pair, "two vertex ids")->expected(2)->required();

    // ---- sweep ----
    auto* sw = app.add_subcommand("sweep", "experiment grid, one CSV row per run");
    std::string sw_families, sw_mode = "pairwise", sw_seeds = "", sw_out;
    std::uint32_t sw_n = 200, sw_k = 4, sw_c = 2, sw_degree = 3;
    std::size_t sw_m = 800, sw_pairs = 500;
    sw->add_option("--families", sw_families, "comma-separated list");
    sw->add_option("--mode", sw_mode, "pairwise|delta");
    sw->add_option("--n", sw_n);
    sw->add_option("--m", sw_m);
    sw->add_option("--degree", sw_degree);
    sw->add_option("--k", sw_k);
    sw->add_option("--c", sw_c);
    sw->add_option("--pairs", sw_pairs);
    sw->add_option("--seeds", sw_seeds, "comma-separated seed list");
    sw->add_option("--out", sw_out);

    try {
        app.parse(argc, argv);

        if (*gen_cmd) {
            if (family_is_randomized(gen_family))
                require(gen_has_seed, "gen: --seed is required for randomized families");
            Graph g = generate(gen_family, gp, gen_seed);
            atomic_write(gen_out, [&](std::ostream& out) { write_graph(out, g); });
            std::cerr << "gen: " << gen_family << " n=" << g.n() << " m=" << g.m() << " -> "
                      << gen_out << "\n";
            return 0;
        }
        if (*bh) {
            Graph g = load_graph(bh_graph);
            HopsetBuild hb = build_hopset(g, bh_k, bh_c, bh_seed);
            atomic_write(bh_out, [&](std::ostream& out) { write_hopset(out, hb.hopset); });
            std::cerr << "hopset: |H|=" << hb.hopset.edges.size() << " (H1 "
                      << hb.hopset.count_tag(1) << ", H2 " << hb.hopset.count_tag(2) << ", H3 "
                      << hb.hopset.count_tag(3) << ") stretch "
                      << to_string(hb.hopset.declared_stretch) << " hopbound "
                      << hb.hopset.declared_hopbound << " -> " << bh_out << "\n";
            return 0;
        }
        if (*bp) {
            Graph g = load_graph(bp_graph);
            PairSet pairs = load_pairs(bp_pairs);
            SpannerBundle b = bp_plain ? compose_pairwise(g, pairs, bp_k, bp_c, bp_seed)
                                       : compose_pairwise_partitioned(g, pairs, bp_k, bp_c, bp_seed);
            save_bundle(bp_out, b);
            std::cerr << "pairwise: edges=" << b.edges.size() << " stretch "
                      << to_string(b.declared_stretch) << " -> " << bp_out << "\n";
            return 0;
        }
        if (*bs || *bw) {
            Graph g = load_graph(bs_graph);
            std::vector<Vertex> A;
            if (!bs_subset_file.empty())
                A = load_ranking(bs_subset_file);
            else {
                require(bs_subset_size >= 1, "build-subset: give --subset or --subset-size");
                for (Vertex v = 0; v < bs_subset_size; ++v)
                    A.push_back(v);
            }
            SubsetBundle sb = build_subset(g, A, bs_kem, bs_seed);
            if (*bs) {
                save_bundle(bs_out, sb.bundle);
                std::cerr << "subset: |A|=" << sb.subset.size() << " edges=" << sb.bundle.edges.size()
                          << " stretch " << to_string(sb.bundle.declared_stretch) << " -> " << bs_out
                          << "\n";
            } else {
                SourcewiseBundle swb = build_sourcewise(g, std::move(sb));
                save_bundle(bs_out, swb.bundle);
                std::cerr << "sourcewise: |A|=" << swb.subset.size()
                          << " edges=" << swb.bundle.edges.size() << " stretch "
                          << to_string(swb.bundle.declared_stretch) << " -> " << bs_out << "\n";
            }
            return 0;
        }
        if (*bpr) {
            Graph g = load_graph(bpr_graph);
            std::vector<Vertex> ranking = load_ranking(bpr_ranking);
            PrioritizedBundle pb = build_prioritized(g, ranking, parse_schedule(bpr_schedule),
                                                     bpr_kem, bpr_seed, exact_preserver_builder(),
                                                     bpr_beta);
            save_bundle(bpr_out, pb.bundle);
            std::cerr << "prioritized: T=" << pb.oracle->T << " covered ranks<="
                      << pb.oracle->covered_upto() << " beta=" << pb.oracle->beta_coeff
                      << " edges=" << pb.bundle.edges.size() << " -> " << bpr_out << "\n";
            return 0;
        }
        if (*lh) {
            HKappaInstance inst = lh_kappa == 0
                                      ? build_h_kappa_k0(lh_p, lh_cap)
                                      : build_h_kappa(convex_label_base_graph(lh_l, lh_budget),
                                                      lh_kappa, convex_base_provider(), lh_cap);
            std::cerr << "hkappa: kappa=" << inst.kappa << " l=" << inst.l << " n="
                      << inst.graph.n() << " m=" << inst.graph.m() << " pairs=" << inst.pairs.size()
                      << " d=" << inst.expected_distance << "\n";
            if (!lh_out.empty())
                atomic_write(lh_out, [&](std::ostream& out) { write_hkappa(out, inst); });
            if (lh_noverify)
                return 0;
            DeletionMechanismReport rep = verify_deletion_mechanism(inst, lh_b, lh_sample);
            bool ok = rep.distances_ok && rep.uniqueness_ok && rep.critical_definition_ok &&
                      rep.disjointness_ok && rep.deletion_ok;
            std::cerr << "mechanism: distances " << (rep.distances_ok ? "ok" : "FAIL")
                      << ", uniqueness " << (rep.uniqueness_ok ? "ok" : "FAIL") << ", disjoint "
                      << (rep.disjointness_ok ? "ok" : "FAIL") << ", deletion "
                      << (rep.deletion_ok ? "ok" : "FAIL") << " (bound " << rep.deletion_bound
                      << ", " << rep.deletion_pairs << " pairs)\n";
            std::cerr << "mechanism: implied stretch " << to_string(rep.implied_stretch)
                      << " threshold " << to_string(rep.threshold_stretch) << " paper-b "
                      << rep.paper_b << "\n";
            if (!ok && rep.witness)
                std::cerr << "mechanism witness: (" << rep.witness->u << "," << rep.witness->v
                          << ")\n";
            return ok ? 0 : 1;
        }
        if (*ld) {
            require(ld_graph.empty() != ld_family.empty(),
                    "lb-delta: give exactly one of --graph / --family");
            Graph host = ld_graph.empty() ? generate(ld_family, GenParams{}, 0) : load_graph(ld_graph);
            DeltaPairInstance inst = delta_pairs(host, ld_k, parse_rat(ld_alpha));
            std::cerr << "delta: n=" << host.n() << " m=" << host.m() << " delta=" << inst.delta
                      << " |P0|=" << inst.pairs.size() << " degree=" << inst.degree << "\n";
            if (!ld_out_graph.empty())
                atomic_write(ld_out_graph, [&](std::ostream& out) { write_graph(out, host); });
            if (!ld_out_pairs.empty())
                atomic_write(ld_out_pairs, [&](std::ostream& out) { write_pairs(out, inst.pairs); });
            if (ld_experiment) {
                require(ld_has_seed, "lb-delta: --experiment requires --seed");
                for (std::uint32_t t = 0; t < ld_trials; ++t) {
                    CoverReport rep = sample_and_cover(inst, ld_seed + t);
                    std::cout << "cover seed=" << ld_seed + t << " sampled=" << rep.sampled_pairs
                              << " covered=" << rep.covered_edges << "/" << rep.total_edges
                              << " coverage=" << to_string(rep.coverage) << " overhead="
                              << (rep.overhead_defined ? to_string(rep.overhead) : "undefined")
                              << "\n";
                }
            }
            return 0;
        }
        if (*au) {
            Graph g = load_graph(au_graph);
            require(au_bundle.empty() != au_hopset.empty(),
                    "audit: give exactly one of --bundle / --hopset");
            if (!au_bundle.empty()) {
                SpannerBundle b = load_bundle(au_bundle);
                PairSet pairs;
                if (!au_pairs.empty())
                    pairs = load_pairs(au_pairs);
                else {
                    bool sampled = false;
                    pairs = default_bundle_pairs(g, b, au_sample_seed, &sampled);
                    std::cerr << "audit: no pair file; auditing " << pairs.size()
                              << (sampled ? " sampled" : "") << " pairs\n";
                }
                return report_and_exit(g, b, pairs);
            }
            Hopset h = read_file<Hopset>(au_hopset,
                                         [&](std::istream& in) { return read_hopset(in, g.n()); });
            Rat alpha = au_alpha.empty() ? h.declared_stretch : parse_rat(au_alpha);
            u64 beta = au_beta ? au_beta : h.declared_hopbound;
            HopsetAuditReport rep = audit_hopset(g, h, alpha, beta, au_sample_seed);
            AuditReport row;
            row.family = "hopset";
            row.n = g.n();
            row.m = g.m();
            row.k = h.k;
            row.c = h.c;
            row.seed = h.seed;
            row.pair_count = rep.pairs_checked;
            row.edge_count = h.edges.size();
            row.max_stretch = rep.max_stretch;
            row.stretch_infinite = rep.stretch_infinite;
            if (rep.pairs_checked)
                row.overhead = make_rat(h.edges.size(), rep.pairs_checked);
            for (const HopsetViolation& v : rep.violations)
                row.violations.push_back({{v.u, v.v}, v.d_beta, v.d_g, false});
            std::cout << csv_header() << "\n" << csv_row(row) << "\n";
            std::cerr << "hopset audit: " << rep.pairs_checked << " pairs, "
                      << rep.violations.size() << " violations, min beta for alpha "
                      << (rep.alpha_unreachable ? std::string("unreachable")
                                                : std::to_string(rep.min_beta_for_alpha))
                      << (rep.sampled ? " (sampled)" : " (exhaustive)") << "\n";
            return rep.violations.empty() ? 0 : 1;
        }
        if (*qu) {
            SpannerBundle b = load_bundle(qu_bundle);
            require(qu_pair.size() == 2, "query: --pair needs two vertex ids");
            Path p = b.query((Vertex)qu_pair[0], (Vertex)qu_pair[1]);
            std::cout << "path " << p.weight;
            for (Vertex v : p.vertices)
                std::cout << " " << v;
            std::cout << "\n";
            return 0;
        }
        if (*sw) {
            SweepConfig config;
            auto seeds = parse_u64_list(sw_seeds);
            for (const std::string& fam : parse_str_list(sw_families))
                for (u64 seed : seeds) {
                    SweepRun run;
                    run.mode = sw_mode;
                    run.family = fam;
                    run.gen.n = sw_n;
                    run.gen.m = sw_m;
                    run.gen.degree = sw_degree;
                    run.gen.girth_above = sw_k;
                    run.k = sw_k;
                    run.c = sw_c;
                    run.npairs = sw_pairs;
                    run.seed = seed;
                    config.runs.push_back(run);
                }
            if (sw_out.empty())
                sweep(std::cout, config);
            else
                atomic_write(sw_out, [&](std::ostream& out) { sweep(out, config); });
            return 0;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedPair& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CheckError& e) {
        std::cerr << "construction bug: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
