#include "latin/probabilistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "latin/construction.hpp"
#include "latin/error.hpp"

namespace latin {

PermutationTriple identity_triple(int n) {
    PermutationTriple t;
    t.row.resize(n);
    std::iota(t.row.begin(), t.row.end(), 0);
    t.col = t.row;
    t.sym = t.row;
    return t;
}

PermutationTriple random_triple(int n, std::mt19937_64& rng) {
    PermutationTriple t = identity_triple(n);
    t.seed = rng();
    std::mt19937_64 g(t.seed);
    std::shuffle(t.row.begin(), t.row.end(), g);
    std::shuffle(t.col.begin(), t.col.end(), g);
    std::shuffle(t.sym.begin(), t.sym.end(), g);
    return t;
}

bool is_bijection(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || std::size_t(v) >= p.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

namespace {

void check_triple(const PermutationTriple& t, int n) {
    if (int(t.row.size()) != n || int(t.col.size()) != n || int(t.sym.size()) != n)
        throw LatinError(Errc::OrderMismatch, "permutation length differs from the square order");
    if (!is_bijection(t.row) || !is_bijection(t.col) || !is_bijection(t.sym))
        throw LatinError(Errc::NotABijection, "permutation triple has a non-bijective component");
}

std::vector<int> invert(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = int(i);
    return q;
}

std::vector<int> then(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) q[i] = b[a[i]];
    return q;
}

} // namespace

PermutationTriple inverse(const PermutationTriple& t) {
    check_triple(t, int(t.row.size()));
    return {invert(t.row), invert(t.col), invert(t.sym), t.seed};
}

PermutationTriple compose(const PermutationTriple& first, const PermutationTriple& second) {
    const int n = int(first.row.size());
    check_triple(first, n);
    check_triple(second, n);
    return {then(first.row, second.row), then(first.col, second.col), then(first.sym, second.sym), 0};
}

SymbolGrid apply_permutations(const SymbolGrid& P, const PermutationTriple& t) {
    const int n = P.order();
    check_triple(t, n);
    SymbolGrid Q(n);
    for (int r = 0; r < n; ++r) {
        const int rr = t.row[r];
        for (int c = 0; c < n; ++c) {
            Symbol s = P.at(r, c);
            if (s != kBlank) Q.set(rr, t.col[c], Symbol(t.sym[s - 1] + 1));
        }
    }
    return Q;
}

const char* conflict_name(ConflictClass c) {
    switch (c) {
    case ConflictClass::RowOverlap: return "row+overlap";
    case ConflictClass::ColOverlap: return "col+overlap";
    case ConflictClass::RowCol: return "row+col";
    case ConflictClass::SymOverlap: return "sym+overlap";
    case ConflictClass::SymSym: return "sym+sym";
    case ConflictClass::RowSym: return "row+sym";
    case ConflictClass::ColSym: return "col+sym";
    case ConflictClass::RowRow: return "row+row";
    case ConflictClass::ColCol: return "col+col";
    case ConflictClass::OverlapOverlap: return "overlap+overlap";
    }
    return "?";
}

namespace {

enum Role { Overlap = 0, RowDep = 1, ColDep = 2, SymDep = 3 };

ConflictClass classify(int a, int b) {
    if (a > b) std::swap(a, b);
    static const ConflictClass table[4][4] = {
        {ConflictClass::OverlapOverlap, ConflictClass::RowOverlap, ConflictClass::ColOverlap, ConflictClass::SymOverlap},
        {ConflictClass::RowOverlap, ConflictClass::RowRow, ConflictClass::RowCol, ConflictClass::RowSym},
        {ConflictClass::ColOverlap, ConflictClass::RowCol, ConflictClass::ColCol, ConflictClass::ColSym},
        {ConflictClass::SymOverlap, ConflictClass::RowSym, ConflictClass::ColSym, ConflictClass::SymSym},
    };
    return table[a][b];
}

struct Claim {
    std::uint64_t cell;
    std::uint32_t trade;
    int role;
};

} // namespace

HarvestReport harvest(const PartialLatinSquare& P, const LatinSquare& L) {
    const int n = P.order();
    if (L.order() != n) throw LatinError(Errc::OrderMismatch, "P and L differ in order");
    HarvestReport rep;
    std::vector<HarvestTrade> cand;
    auto key = [n](Cell x) { return std::uint64_t(x.row) * n + x.col; };
    auto agrees = [&](Cell x) { return P.at(x) != kBlank && P.at(x) == L.at(x); };

    for (int r1 = 0; r1 < n; ++r1)
        for (int c1 = 0; c1 < n; ++c1) {
            const Symbol s1 = P.at(r1, c1);
            if (s1 == kBlank || s1 == L.at(r1, c1)) continue;
            int c2 = 0, r2 = 0;
            while (L.at(r1, c2) != s1) ++c2;
            while (L.at(r2, c1) != s1) ++r2;
            if (L.at(r2, c2) != L.at(r1, c1)) continue;
            HarvestTrade h;
            h.overlap = {r1, c1};
            h.row_dep = {r1, c2};
            h.col_dep = {r2, c1};
            h.sym_dep = {r2, c2};
            h.trade = intercalate_trade(L, r1, r2, c1, c2);
            cand.push_back(std::move(h));
        }
    rep.eligible = cand.size();

    std::vector<Claim> claims;
    claims.reserve(cand.size() * 4);
    for (std::uint32_t i = 0; i < cand.size(); ++i) {
        claims.push_back({key(cand[i].overlap), i, Overlap});
        claims.push_back({key(cand[i].row_dep), i, RowDep});
        claims.push_back({key(cand[i].col_dep), i, ColDep});
        claims.push_back({key(cand[i].sym_dep), i, SymDep});
    }
    std::sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) { return a.cell < b.cell; });
    for (std::size_t i = 0; i < claims.size();) {
        std::size_t j = i;
        while (j < claims.size() && claims[j].cell == claims[i].cell) ++j;
        if (j - i > 1) {
            ++rep.conflicted_cells;
            for (std::size_t a = i; a < j; ++a)
                for (std::size_t b = a + 1; b < j; ++b)
                    ++rep.conflicts[int(classify(claims[a].role, claims[b].role))];
        }
        i = j;
    }

    // greedy, in row-major order of the overlap cell; a trade may not touch a cell
    // where P and L already agree, since the completion must keep those
    std::unordered_set<std::uint64_t> taken;
    for (auto& h : cand) {
        const Cell cells[4] = {h.overlap, h.row_dep, h.col_dep, h.sym_dep};
        bool ok = true;
        for (int k = 0; k < 4 && ok; ++k) ok = !taken.count(key(cells[k])) && (k == 0 || !agrees(cells[k]));
        if (!ok) continue;
        for (Cell x : cells) taken.insert(key(x));
        rep.selected.push_back(std::move(h));
    }
    return rep;
}

double harvest_expected(double n, double delta) { return delta * n * (std::floor(n / 2) - 2); }

double conflict_bound_statement(double n, double eps) { return 81 * eps * n + 0.39 * n + 97 * eps * eps * n * n; }

double conflict_bound_proof(double n, double eps) { return 81 * eps * n + 0.23 * n + 166 * eps * eps * n * n; }

double harvest_target(double n, double eps, double delta) {
    return harvest_expected(n, delta) - conflict_bound_statement(n, eps);
}

std::pair<PermutationTriple, HarvestReport> sample_good_triple(const PartialLatinSquare& P, const LatinSquare& L,
                                                               std::mt19937_64& rng, int max_tries, int* tries_used) {
    if (max_tries < 1) throw LatinError(Errc::PreconditionViolated, "max_tries must be at least 1");
    const int n = P.order();
    const DensityProfile dens = density(P);
    const double target = harvest_target(n, dens.eps, dens.delta);
    for (int t = 1; t <= max_tries; ++t) {
        PermutationTriple triple = random_triple(n, rng);
        HarvestReport rep = harvest(apply_permutations(P, triple), L);
        if (double(rep.selected.size()) >= target) {
            if (tries_used) *tries_used = t;
            return {std::move(triple), std::move(rep)};
        }
    }
    throw LatinError(Errc::TriesExhausted, "no permutation reached the harvest target " + std::to_string(target) +
                                               " in " + std::to_string(max_tries) + " tries");
}

namespace {

long double radicand(long double n, long double eps, long double delta) {
    return 36 * delta + 198 * delta / n + 5346 * eps / n + 1518.0L / (100 * n) + 10956 * eps * eps;
}

} // namespace

bool randomized_feasible(double n, double eps, double delta) {
    if (n <= 0) return false;
    const long double N = n;
    return 12 <= N - 12 * N * std::sqrt(radicand(N, eps, delta)) - 12 * (long double)eps * N;
}

double randomized_budget(double n, double eps, double delta) { return double(radicand(n, eps, delta) * n * n); }

ProbabilisticReport complete_probabilistic_report(const PartialLatinSquare& P, std::mt19937_64& rng, Mode mode,
                                                  int max_tries) {
    check_partial(P);
    const int n = P.order();
    const DensityProfile dens = density(P);
    if (mode == Mode::Strict && n >= 16 && !randomized_feasible(n, dens.eps, dens.delta))
        throw LatinError(Errc::Infeasible, "randomized completion bound fails: n=" + std::to_string(n) +
                                               " eps=" + std::to_string(dens.eps) +
                                               " delta=" + std::to_string(dens.delta));
    ProbabilisticReport out;
    if (n < 16) {
        out.triple = identity_triple(n);
        out.completion = run_completion(P, mode, {});
        return out;
    }
    {
        const LatinSquare L = build_structured(n).square;
        auto [triple, rep] = sample_good_triple(P, L, rng, max_tries, &out.tries);
        out.triple = std::move(triple);
        out.harvest = std::move(rep);
    }
    CompletionReport cr;
    {
        const PartialLatinSquare Pp = apply_permutations(P, out.triple);
        cr = run_completion(Pp, mode, [&](CompletionEngine& eng) {
            for (const auto& h : out.harvest.selected) {
                eng.apply(h.trade);
                ++eng.stats().harvested;
            }
        });
    }
    cr.square = apply_permutations(cr.square, inverse(out.triple));
    out.completion = std::move(cr);
    return out;
}

LatinSquare complete_probabilistic(const PartialLatinSquare& P, std::mt19937_64& rng, Mode mode) {
    return complete_probabilistic_report(P, rng, mode).completion.square;
}

} // namespace latin
