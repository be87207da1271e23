#include "properties.hpp"

#include <random>
#include <sstream>

#include "latin/completion.hpp"
#include "latin/construction.hpp"
#include "latin/io.hpp"
#include "latin/probabilistic.hpp"
#include "latin/reductions.hpp"
#include "latin/trade.hpp"
#include "oracles.hpp"

using namespace latin;

namespace props {

namespace {

oracle::Grid as_grid(const SymbolGrid& g) { return oracle::Grid(g.raw().begin(), g.raw().end()); }

LatinSquare random_latin(int n, std::mt19937_64& rng) {
    return apply_permutations(build_structured(n).square, random_triple(n, rng));
}

// some intercalate of L, found by random probing; false if none turned up
bool random_intercalate(const LatinSquare& L, std::mt19937_64& rng, int& r1, int& r2, int& c1, int& c2) {
    const int n = L.order();
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int attempt = 0; attempt < 200; ++attempt) {
        r1 = pick(rng);
        c1 = pick(rng);
        c2 = pick(rng);
        if (c1 == c2) continue;
        const Symbol a = L.at(r1, c1), b = L.at(r1, c2);
        for (r2 = 0; r2 < n; ++r2)
            if (r2 != r1 && L.at(r2, c1) == b) break;
        if (L.at(r2, c2) == a) return true;
    }
    return false;
}

std::string cell_text(Cell x) { return "(" + std::to_string(x.row + 1) + "," + std::to_string(x.col + 1) + ")"; }

// an engine on a random instance with some fixes already applied, so the square is disturbed
struct Scenario {
    PartialLatinSquare P;
    CompletionEngine eng;
    Scenario(int n, double eps, double delta, std::uint64_t seed)
        : P(gen_instance(n, eps, delta, seed)), eng(build_structured(n), &P) {}
};

} // namespace

Result trade_involution(std::uint64_t seed, long cases) {
    Result res;
    res.name = "trade involution";
    std::mt19937_64 rng(seed);
    // 2x2 trades on random Latin squares
    while (res.cases < cases / 3) {
        const int n = std::uniform_int_distribution<int>(2, 24)(rng);
        LatinSquare L = random_latin(n, rng);
        int r1, r2, c1, c2;
        if (!random_intercalate(L, rng, r1, r2, c1, c2)) continue;
        const LatinSquare before = L;
        const Trade t = intercalate_trade(L, r1, r2, c1, c2);
        apply_trade(L, t);
        apply_trade(L, reverse(t));
        ++res.cases;
        if (L != before) res.fail("2x2 trade at order " + std::to_string(n));
    }
    // improper 2x2 trades on lifted squares and on walk states
    while (res.cases < 2 * cases / 3) {
        const int n = std::uniform_int_distribution<int>(3, 16)(rng);
        ImproperSquare S = ImproperSquare::lift(random_latin(n, rng));
        for (int k = 0; k < 5; ++k) random_improper_move(S, rng);
        const ImproperSquare before = S;
        std::uniform_int_distribution<int> pick(0, n - 1);
        const int r1 = pick(rng), c1 = pick(rng);
        if (!S.is_proper_cell(r1, c1)) continue;
        int c2 = pick(rng);
        if (c2 == c1 || !S.is_proper_cell(r1, c2)) continue;
        const Symbol a = S.at(r1, c1)[0].sym, b = S.at(r1, c2)[0].sym;
        int r2 = -1;
        for (int r = 0; r < n; ++r)
            if (r != r1 && S.coeff(r, c1, b) == 1) r2 = r;
        if (r2 < 0 || S.coeff(r2, c2, a) < 0) continue;
        const Trade t = improper_trade({r1, c1}, {r2, c2}, a, b);
        try {
            apply_trade(S, t);
        } catch (const LatinError&) {
            continue; // the template does not fit this rectangle
        }
        apply_trade(S, reverse(t));
        ++res.cases;
        if (S != before) res.fail("improper trade at order " + std::to_string(n));
    }
    // composite trades returned by the cell fixer
    while (res.cases < cases) {
        Scenario sc(128, 0.04, 0.01, rng());
        for (Cell x : disagreement_cells(sc.P, sc.eng.square())) {
            if (res.cases >= cases) break;
            if (sc.eng.agrees(x.row, x.col)) continue;
            const LatinSquare before = sc.eng.square();
            Trade t;
            try {
                t = sc.eng.fix_cell(x);
            } catch (const LatinError&) {
                break;
            }
            LatinSquare after = sc.eng.square();
            apply_trade(after, reverse(t));
            LatinSquare forward = before;
            apply_trade(forward, t);
            ++res.cases;
            if (after != before || forward != sc.eng.square()) res.fail("composite fix at " + cell_text(x));
        }
    }
    return res;
}

Result proper_closure(std::uint64_t seed, long cases) {
    Result res;
    res.name = "proper-trade closure";
    std::mt19937_64 rng(seed);
    while (res.cases < cases / 3) {
        const int n = std::uniform_int_distribution<int>(2, 32)(rng);
        LatinSquare L = random_latin(n, rng);
        int r1, r2, c1, c2;
        if (!random_intercalate(L, rng, r1, r2, c1, c2)) continue;
        apply_trade(L, intercalate_trade(L, r1, r2, c1, c2));
        ++res.cases;
        if (!oracle::is_latin(n, as_grid(L))) res.fail("2x2 trade at order " + std::to_string(n));
    }
    // row and column swaps on a disturbed engine square
    while (res.cases < 2 * cases / 3) {
        Scenario sc(128, 0.04, 0.01, rng());
        auto cells = disagreement_cells(sc.P, sc.eng.square());
        for (std::size_t i = 0; i < cells.size() / 2; ++i)
            if (!sc.eng.agrees(cells[i].row, cells[i].col)) sc.eng.fix_cell(cells[i]);
        std::uniform_int_distribution<int> pick(0, 127);
        for (int k = 0; k < 400 && res.cases < 2 * cases / 3; ++k) {
            const int line = pick(rng), p1 = pick(rng), p2 = pick(rng);
            if (p1 == p2) continue;
            const bool column = k % 2;
            const Symbol s1 = column ? sc.eng.at(p1, line) : sc.eng.at(line, p1);
            const Symbol s2 = column ? sc.eng.at(p2, line) : sc.eng.at(line, p2);
            SwapOutcome o;
            try {
                o = column ? sc.eng.swap_in_column(line, p1, p2, {}, sc.eng.overload_d())
                           : sc.eng.swap_in_row(line, p1, p2, {}, sc.eng.overload_d());
                sc.eng.apply(o.trade);
            } catch (const LatinError&) {
                continue; // screened out; only applied swaps count
            }
            ++res.cases;
            const bool swapped = column ? sc.eng.at(p1, line) == s2 && sc.eng.at(p2, line) == s1
                                        : sc.eng.at(line, p1) == s2 && sc.eng.at(line, p2) == s1;
            if (!oracle::is_latin(128, as_grid(sc.eng.square())) || !swapped || o.trade.size() > 16)
                res.fail(std::string(column ? "column" : "row") + " swap of size " + std::to_string(o.trade.size()));
        }
    }
    // whole cell fixes
    while (res.cases < cases) {
        Scenario sc(96, 0.05, 0.01, rng());
        for (Cell x : disagreement_cells(sc.P, sc.eng.square())) {
            if (res.cases >= cases) break;
            if (sc.eng.agrees(x.row, x.col)) continue;
            Trade t;
            try {
                t = sc.eng.fix_cell(x);
            } catch (const LatinError&) {
                break;
            }
            ++res.cases;
            if (!oracle::is_latin(96, as_grid(sc.eng.square())) || t.size() > 70)
                res.fail("fix at " + cell_text(x) + " footprint " + std::to_string(t.size()));
        }
    }
    return res;
}

Result agreement_untouched(std::uint64_t seed, long cases) {
    Result res;
    res.name = "agreement non-disturbance";
    std::mt19937_64 rng(seed);
    while (res.cases < cases) {
        const int n = std::uniform_int_distribution<int>(96, 160)(rng);
        Scenario sc(n, 0.05, 0.012, rng());
        // randomized route first: harvested 2x2 trades are applied through the engine too
        const HarvestReport h = harvest(sc.P, sc.eng.square());
        auto check_step = [&](const LatinSquare& before, const std::string& what) {
            const LatinSquare& after = sc.eng.square();
            ++res.cases;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    if (sc.P.at(r, c) != kBlank && before.at(r, c) == sc.P.at(r, c) && after.at(r, c) != before.at(r, c)) {
                        res.fail(what + " changed agreeing cell " + cell_text({r, c}));
                        return;
                    }
        };
        for (const HarvestTrade& ht : h.selected) {
            const LatinSquare before = sc.eng.square();
            sc.eng.apply(ht.trade);
            check_step(before, "harvested trade");
        }
        for (Cell x : disagreement_cells(sc.P, sc.eng.square())) {
            if (res.cases >= cases) break;
            if (sc.eng.agrees(x.row, x.col)) continue;
            const LatinSquare before = sc.eng.square();
            try {
                sc.eng.fix_cell(x);
            } catch (const LatinError&) {
                break;
            }
            check_step(before, "fix at " + cell_text(x));
            if (sc.eng.square().at(x) != sc.P.at(x)) res.fail("fix did not set " + cell_text(x));
        }
    }
    return res;
}

Result permutation_action(std::uint64_t seed, long cases) {
    Result res;
    res.name = "permutation group action";
    std::mt19937_64 rng(seed);
    for (; res.cases < cases; ++res.cases) {
        const int n = std::uniform_int_distribution<int>(1, 40)(rng);
        const double eps = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
        const double delta = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * eps;
        PartialLatinSquare P;
        try {
            P = gen_instance(n, eps, delta, rng());
        } catch (const LatinError&) {
            --res.cases; // the line cap cannot hold that many cells
            continue;
        }
        const PermutationTriple a = random_triple(n, rng), b = random_triple(n, rng);
        const SymbolGrid Pa = apply_permutations(P, a);
        // independent image: cell (r,c) = s lands at (row[r], col[c]) with sym[s-1]+1
        SymbolGrid expect(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (P.at(r, c)) expect.set(a.row[r], a.col[c], Symbol(a.sym[P.at(r, c) - 1] + 1));
        const std::string tag = "order " + std::to_string(n);
        if (Pa != expect) res.fail(tag + ": image differs from direct relabelling");
        if (apply_permutations(Pa, b) != apply_permutations(P, compose(a, b))) res.fail(tag + ": composition");
        if (apply_permutations(Pa, inverse(a)) != P) res.fail(tag + ": inverse");
        if (apply_permutations(P, identity_triple(n)) != P) res.fail(tag + ": identity");
        const DensityProfile d0 = density(P), d1 = density(Pa);
        if (d0.fill != d1.fill || d0.max_line != d1.max_line) res.fail(tag + ": density changed");
    }
    return res;
}

Result serialization_roundtrip(std::uint64_t seed, long cases) {
    Result res;
    res.name = "serialization round trip";
    std::mt19937_64 rng(seed);
    for (long k = 0; k < cases; ++k) {
        const int n = std::uniform_int_distribution<int>(1, 30)(rng);
        // partial square
        const PartialLatinSquare P = gen_instance(n, 1.0, std::uniform_real_distribution<double>(0, 1)(rng), rng());
        const std::string text = emit_square(P);
        if (parse_square(text) != P || emit_square(parse_square(text)) != text) res.fail("square of order " + std::to_string(n));
        ++res.cases;
        // improper walk state
        if (n >= 2) {
            ImproperSquare S = ImproperSquare::lift(build_structured(n).square);
            const int moves = std::uniform_int_distribution<int>(1, 20)(rng);
            for (int m = 0; m < moves; ++m) random_improper_move(S, rng);
            const std::string it = emit_improper(S);
            if (parse_improper(it) != S) res.fail("improper square of order " + std::to_string(n));
            ++res.cases;
        }
        // tripartite graph
        TripartiteGraph G(n, n, n);
        std::bernoulli_distribution coin(0.4);
        const Part parts[3] = {Part::R, Part::C, Part::S};
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        if (coin(rng)) G.set(parts[a], i, parts[b], j);
        if (!(parse_graph(emit_graph(G)) == G)) res.fail("graph of order " + std::to_string(n));
        ++res.cases;
    }
    return res;
}

} // namespace props
