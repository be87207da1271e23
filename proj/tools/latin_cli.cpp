// command-line front end: build, complete, verify, sample, reduce, gadget,
// triangulate, harvest, bench, generate
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "latin/backtrack.hpp"
#include "latin/completion.hpp"
#include "latin/construction.hpp"
#include "latin/error.hpp"
#include "latin/io.hpp"
#include "latin/probabilistic.hpp"
#include "latin/reductions.hpp"
#include "latin/triangulation.hpp"

using namespace latin;

namespace {

// 2: bounds reject the input, 3: input proven to have no completion
int exit_code(Errc e) {
    switch (e) {
    case Errc::Infeasible:
    case Errc::InfeasibleDensities: return 2;
    case Errc::TinyOrderFallbackFailed: return 3;
    default: return 1;
    }
}

SymbolGrid load_square(const std::string& path) {
    if (path == "-") return read_square(std::cin);
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_square(f);
}

TripartiteGraph load_graph(const std::string& path) {
    if (path == "-") return read_graph(std::cin);
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_graph(f);
}

// writes to the file or stdout
template <class F>
void output(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    write(f);
}

void kv(const char* key, auto value) { std::cerr << key << '=' << value << '\n'; }

void print_engine_stats(const CompletionReport& r, int n) {
    const auto& s = r.stats;
    kv("n", n);
    kv("fill", r.fill);
    kv("steps", s.steps);
    kv("fixes", s.fixes);
    kv("harvested", s.harvested);
    kv("swaps_direct", s.swaps[0]);
    kv("swaps_same_half", s.swaps[1]);
    kv("swaps_cross_half", s.swaps[2]);
    kv("relaxed_swaps", s.relaxed_swaps);
    kv("relaxed_fixes", s.relaxed_fixes);
    kv("rollbacks", s.rollbacks);
    kv("max_fix_footprint", s.max_fix_footprint);
    kv("initial_flagged", r.initial_flagged);
    kv("disturbed_total", r.ledger_total);
    kv("disturbed_bound", 3ull * n + 7 + 69ull * r.fill);
    kv("used_search_fallback", r.used_fallback ? 1 : 0);
    for (auto [k, v] : s.fix_histogram) std::cerr << "fix_disturbed_" << k << '=' << v << '\n';
}

Mode parse_mode(const std::string& m) { return m == "strict" ? Mode::Strict : Mode::Practical; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Latin square completion, reductions and triangulation toolkit"};
    app.require_subcommand(1);

    int n = 0;
    std::string in, out, mode = "strict";
    bool stats = false, randomized = false;
    std::uint64_t seed = 1;
    int tries = 64;

    auto* build = app.add_subcommand("build", "print the structured Latin square of order n");
    build->add_option("n", n, "order")->required()->check(CLI::Range(1, int(kMaxOrder)));
    build->add_option("-o,--output", out, "output file");
    bool show_flagged = false;
    build->add_flag("--flagged", show_flagged, "list the flagged cells on stderr");

    auto* complete_cmd = app.add_subcommand("complete", "complete a partial Latin square");
    complete_cmd->add_option("input", in, "pls file, - for stdin")->required();
    complete_cmd->add_option("-o,--output", out, "output file");
    complete_cmd->add_option("--mode", mode, "strict or practical")->check(CLI::IsMember({"strict", "practical"}));
    complete_cmd->add_flag("--randomized", randomized, "permute first and harvest 2x2 trades");
    complete_cmd->add_option("--seed", seed, "seed for --randomized");
    complete_cmd->add_option("--tries", tries, "permutation tries for --randomized")->check(CLI::PositiveNumber);
    complete_cmd->add_flag("--stats", stats, "key=value statistics on stderr");

    auto* verify = app.add_subcommand("verify", "check that a file holds a Latin square");
    std::string partial;
    verify->add_option("input", in, "pls file")->required();
    verify->add_option("--extends", partial, "also check that it completes this partial square");

    auto* sample = app.add_subcommand("sample", "random Latin square by the improper-trade walk");
    long burn = 0;
    sample->add_option("n", n, "order")->required()->check(CLI::Range(1, 256));
    sample->add_option("--burn-in", burn, "moves before the first proper state (default n^3)");
    sample->add_option("--seed", seed, "seed");
    sample->add_option("-o,--output", out, "output file");

    auto* reduce = app.add_subcommand("reduce", "partial square of order 2n from a uniform tripartite graph");
    reduce->add_option("input", in, "tri file")->required();
    reduce->add_option("-o,--output", out, "output file");

    auto* gadget = app.add_subcommand("gadget", "dense partial square of order 2n^3 from a uniform graph");
    gadget->add_option("input", in, "tri file")->required();
    gadget->add_option("-o,--output", out, "output file");
    gadget->add_flag("--stats", stats, "key=value statistics on stderr");

    auto* tri = app.add_subcommand("triangulate", "triangle decomposition of a dense balanced tripartite graph");
    tri->add_option("input", in, "tri file")->required();
    tri->add_option("-o,--output", out, "output file");
    tri->add_option("--mode", mode, "strict or practical")->check(CLI::IsMember({"strict", "practical"}));
    tri->add_flag("--stats", stats, "key=value statistics on stderr");

    auto* harvest_cmd = app.add_subcommand("harvest", "permute and count disjoint 2x2 trades");
    harvest_cmd->add_option("input", in, "pls file")->required();
    harvest_cmd->add_option("--seed", seed, "seed");
    harvest_cmd->add_option("--tries", tries, "permutation tries")->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "step counts of the completion engine on empty inputs");
    std::vector<int> sizes{1024, 2048, 4096};
    bench->add_option("--sizes", sizes, "orders to run")->delimiter(',');

    auto* gen = app.add_subcommand("generate", "random eps-dense partial square");
    double eps = 0, delta = 0;
    gen->add_option("n", n, "order")->required()->check(CLI::Range(1, int(kMaxOrder)));
    gen->add_option("--eps", eps, "line cap is ceil(eps n)")->required();
    gen->add_option("--delta", delta, "fill is floor(delta n^2)")->required();
    gen->add_option("--seed", seed, "seed");
    gen->add_option("-o,--output", out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            StructuredSquare S = build_structured(n);
            output(out, [&](std::ostream& os) { write_square(os, S.square); });
            if (show_flagged)
                for (Cell x : S.flagged) std::cerr << x.row + 1 << ' ' << x.col + 1 << '\n';
        } else if (*complete_cmd) {
            const SymbolGrid P = load_square(in);
            std::mt19937_64 rng(seed);
            if (randomized) {
                auto r = complete_probabilistic_report(P, rng, parse_mode(mode), tries);
                output(out, [&](std::ostream& os) { write_square(os, r.completion.square); });
                if (stats) {
                    print_engine_stats(r.completion, P.order());
                    kv("tries", r.tries);
                    kv("eligible", r.harvest.eligible);
                    kv("selected", r.harvest.selected.size());
                    kv("conflicted_cells", r.harvest.conflicted_cells);
                }
            } else {
                auto r = complete_with_report(P, parse_mode(mode));
                output(out, [&](std::ostream& os) { write_square(os, r.square); });
                if (stats) print_engine_stats(r, P.order());
            }
        } else if (*verify) {
            const SymbolGrid L = load_square(in);
            if (!is_latin(L)) {
                std::cerr << "not a Latin square: blank cells remain\n";
                return 1;
            }
            if (!partial.empty()) {
                const SymbolGrid P = load_square(partial);
                if (P.order() != L.order() || !extends(L, P)) {
                    std::cerr << "square does not agree with " << partial << '\n';
                    return 1;
                }
            }
            std::cout << "ok\n";
        } else if (*sample) {
            std::mt19937_64 rng(seed);
            if (burn == 0) burn = long(n) * n * n;
            const LatinSquare L = sample_latin(n, burn, rng);
            output(out, [&](std::ostream& os) { write_square(os, L); });
        } else if (*reduce) {
            const PartialLatinSquare P = reduce_to_square(load_graph(in));
            output(out, [&](std::ostream& os) { write_square(os, P); });
        } else if (*gadget) {
            const TripartiteGraph G = load_graph(in);
            const GadgetReport g = dense_gadget(G);
            output(out, [&](std::ostream& os) { write_square(os, g.square); });
            if (stats) {
                const int k = G.part_size(Part::R);
                kv("order", g.square.order());
                kv("free_symbols", g.free_symbols);
                kv("max_line_fill", g.max_line_fill);
                kv("line_fill_bound", (2 * k * k * k + 3 * k * k + k) / 2.0);
            }
        } else if (*tri) {
            const TripartiteGraph G = load_graph(in);
            const TriReport r = triangulate_report(G, parse_mode(mode));
            output(out, [&](std::ostream& os) { write_triangles(os, r.triangles); });
            if (stats) {
                kv("n", G.part_size(Part::R));
                kv("edges", G.edge_count());
                kv("triangles", r.triangles.size());
                kv("eps", r.params.eps);
                kv("delta", r.params.delta);
                kv("gamma", r.params.gamma);
                kv("cycles", r.cycles);
                kv("cycle_edges", r.cycle_edges);
                kv("seven_triangle_trades", r.trades.size());
                kv("max_vertex_uses", r.max_vertex_uses);
                kv("vertex_use_limit", r.params.gamma * G.part_size(Part::R));
                kv("completion_fixes", r.completion.stats.fixes);
                kv("used_search_fallback", r.completion.used_fallback ? 1 : 0);
            }
        } else if (*harvest_cmd) {
            const SymbolGrid P = load_square(in);
            const int k = P.order();
            std::mt19937_64 rng(seed);
            const LatinSquare L = build_structured(k).square;
            int used = 0;
            auto [triple, rep] = sample_good_triple(P, L, rng, tries, &used);
            const DensityProfile d = density(P);
            std::cout << "tries=" << used << '\n'
                      << "triple_seed=" << triple.seed << '\n'
                      << "eligible=" << rep.eligible << '\n'
                      << "selected=" << rep.selected.size() << '\n'
                      << "conflicted_cells=" << rep.conflicted_cells << '\n';
            for (int c = 0; c < kConflictClasses; ++c)
                std::cout << "conflict_" << conflict_name(ConflictClass(c)) << '=' << rep.conflicts[c] << '\n';
            std::cout << "target=" << harvest_target(k, d.eps, d.delta) << '\n'
                      << "bound_statement=" << conflict_bound_statement(k, d.eps) << '\n'
                      << "bound_proof=" << conflict_bound_proof(k, d.eps) << '\n';
        } else if (*bench) {
            double prev = 0;
            for (int k : sizes) {
                const auto t0 = std::chrono::steady_clock::now();
                const CompletionReport r = complete_with_report(PartialLatinSquare(k), Mode::Practical);
                const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                const double steps = double(r.stats.steps);
                std::cout << "n=" << k << " steps=" << r.stats.steps << " seconds=" << sec;
                if (prev > 0) std::cout << " ratio=" << steps / prev;
                std::cout << '\n';
                prev = steps;
            }
        } else if (*gen) {
            const PartialLatinSquare P = gen_instance(n, eps, delta, seed);
            output(out, [&](std::ostream& os) { write_square(os, P); });
        }
    } catch (const LatinError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
