#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "latin/square.hpp"

namespace latin {

// Exhaustive completion search with most-constrained-cell ordering. Orders up to 64.
// node_limit < 0 means unlimited; when the limit is hit `exhausted` is cleared.
struct BacktrackResult {
    std::uint64_t solutions = 0;
    std::uint64_t nodes = 0;
    bool exhausted = true; // false if the node limit cut the search short
};

// visit returns false to stop the search
BacktrackResult backtrack_search(const PartialLatinSquare& P, const std::function<bool(const LatinSquare&)>& visit,
                                 std::int64_t node_limit = -1);

std::optional<LatinSquare> backtrack_complete(const PartialLatinSquare& P, std::int64_t node_limit = -1);
// randomized branching with growing node budgets; stops early if a try exhausts the space
std::optional<LatinSquare> backtrack_complete_restarts(const PartialLatinSquare& P, std::mt19937_64& rng,
                                                      std::int64_t per_try, int tries);
// Fills rows in random order, each by a maximum bipartite matching of its blank cells
// to its missing symbols; symbols that P places later in a column are kept out of it.
// Incomplete: a dead row restarts the whole attempt. Orders up to 1024.
std::optional<LatinSquare> complete_by_row_matching(const PartialLatinSquare& P, std::mt19937_64& rng, int tries);

std::uint64_t count_completions(const PartialLatinSquare& P, std::uint64_t limit = UINT64_MAX);

} // namespace latin
