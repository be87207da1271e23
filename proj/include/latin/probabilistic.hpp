#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "latin/completion.hpp"
#include "latin/square.hpp"
#include "latin/trade.hpp"

namespace latin {

// 0-based images: row r goes to row[r], symbol s (1-based) goes to sym[s-1]+1
struct PermutationTriple {
    std::vector<int> row, col, sym;
    std::uint64_t seed = 0;
};

PermutationTriple identity_triple(int n);
PermutationTriple random_triple(int n, std::mt19937_64& rng);
PermutationTriple inverse(const PermutationTriple& t);
// acts as `first` then `second`
PermutationTriple compose(const PermutationTriple& first, const PermutationTriple& second);
bool is_bijection(const std::vector<int>& p);

// Q(row[r], col[c]) = sym(P(r,c)); works for full squares too
SymbolGrid apply_permutations(const SymbolGrid& P, const PermutationTriple& t);

enum class ConflictClass {
    RowOverlap,
    ColOverlap,
    RowCol,
    SymOverlap,
    SymSym,
    RowSym,
    ColSym,
    // the three below cannot happen; counted so that tests can assert it
    RowRow,
    ColCol,
    OverlapOverlap,
};
constexpr int kConflictClasses = 10;
const char* conflict_name(ConflictClass c);

// the 2x2 trade that makes L(overlap) = P(overlap)
struct HarvestTrade {
    Cell overlap, row_dep, col_dep, sym_dep;
    Trade trade;
};

struct HarvestReport {
    std::size_t eligible = 0;
    std::array<std::uint64_t, kConflictClasses> conflicts{}; // pairs of claims, by class
    std::size_t conflicted_cells = 0;                        // cells claimed by two or more trades
    std::vector<HarvestTrade> selected;                      // pairwise cell-disjoint
};

HarvestReport harvest(const PartialLatinSquare& P, const LatinSquare& L);

// delta n (floor(n/2) - 2)
double harvest_expected(double n, double delta);
// 81 eps n + 0.39 n + 97 eps^2 n^2, the stated conflict bound
double conflict_bound_statement(double n, double eps);
// 81 eps n + 0.23 n + 166 eps^2 n^2, what its argument ends with
double conflict_bound_proof(double n, double eps);
double harvest_target(double n, double eps, double delta);

// draws triples until the harvest reaches harvest_target for P's own density
std::pair<PermutationTriple, HarvestReport> sample_good_triple(const PartialLatinSquare& P, const LatinSquare& L,
                                                               std::mt19937_64& rng, int max_tries = 64,
                                                               int* tries_used = nullptr);

// 12 <= n - 12 n sqrt(36d + 198d/n + 5346e/n + 15.18/n + 10956 e^2) - 12 e n
bool randomized_feasible(double n, double eps, double delta);
// the radicand above times n^2: the disturbance budget of the randomized route
double randomized_budget(double n, double eps, double delta);

struct ProbabilisticReport {
    CompletionReport completion; // square is in the original coordinates
    PermutationTriple triple;
    HarvestReport harvest;
    int tries = 0;
};

ProbabilisticReport complete_probabilistic_report(const PartialLatinSquare& P, std::mt19937_64& rng, Mode mode,
                                                  int max_tries = 64);
LatinSquare complete_probabilistic(const PartialLatinSquare& P, std::mt19937_64& rng, Mode mode);

} // namespace latin
