#include <doctest.h>

#include <random>

#include "latin/backtrack.hpp"
#include "latin/io.hpp"
#include "oracles.hpp"

using namespace latin;

namespace {

oracle::Grid as_grid(const SymbolGrid& g) { return oracle::Grid(g.raw().begin(), g.raw().end()); }

bool extends_oracle(const SymbolGrid& L, const SymbolGrid& P) {
    for (std::size_t i = 0; i < P.raw().size(); ++i)
        if (P.raw()[i] && P.raw()[i] != L.raw()[i]) return false;
    return true;
}

// row 0 is 1 2 . . and column 2 holds 3 and 4 below it: cell (0,2) has no symbol left
PartialLatinSquare stuck4() { return parse_square("pls 4\n1 2 . .\n. . 3 .\n. . 4 .\n. . . .\n"); }

} // namespace

TEST_CASE("completion counts agree with the plain search") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 60; ++k) {
        const int n = 3 + k % 3;
        const PartialLatinSquare P = gen_instance(n, 1.0, 0.25 + 0.05 * (k % 4), rng());
        CHECK(count_completions(P) == oracle::count_completions(n, as_grid(P)));
    }
    CHECK(count_completions(PartialLatinSquare(4)) == 576);
    CHECK(count_completions(stuck4()) == 0);
    CHECK(count_completions(PartialLatinSquare(5), 10) == 10);
}

TEST_CASE("backtracking finds completions or proves there are none") {
    const auto L = backtrack_complete(parse_square("pls 3\n1 2 .\n. 3 .\n. . 2\n"));
    REQUIRE(L);
    CHECK(*L == parse_square("pls 3\n1 2 3\n2 3 1\n3 1 2\n"));
    CHECK_FALSE(backtrack_complete(stuck4()));
    const BacktrackResult r = backtrack_search(stuck4(), [](const LatinSquare&) { return true; });
    CHECK(r.exhausted);
    CHECK(r.solutions == 0);
    const BacktrackResult cut = backtrack_search(PartialLatinSquare(8), [](const LatinSquare&) { return true; }, 50);
    CHECK_FALSE(cut.exhausted);
    CHECK_THROWS_AS(backtrack_complete(PartialLatinSquare(65)), LatinError);
}

TEST_CASE("restarting search stops early on impossible inputs") {
    std::mt19937_64 rng(5);
    CHECK_FALSE(backtrack_complete_restarts(stuck4(), rng, 1000, 50));
    const PartialLatinSquare P = gen_instance(40, 0.1, 0.02, 9);
    const auto L = backtrack_complete_restarts(P, rng, 20000, 60);
    REQUIRE(L);
    CHECK(oracle::is_latin(40, as_grid(*L)));
    CHECK(extends_oracle(*L, P));
}

TEST_CASE("row matching completes sparse inputs of many orders") {
    std::mt19937_64 rng(8);
    int done = 0;
    for (int n : {1, 2, 5, 16, 33, 64, 100, 128}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const PartialLatinSquare P = gen_instance(n, 0.1, 0.02, seed);
            const auto L = complete_by_row_matching(P, rng, 200);
            REQUIRE_MESSAGE(L, "order ", n);
            CHECK(oracle::is_latin(n, as_grid(*L)));
            CHECK(extends_oracle(*L, P));
            ++done;
        }
    }
    CHECK(done == 24);
    CHECK_FALSE(complete_by_row_matching(stuck4(), rng, 20));
    CHECK_THROWS_AS(complete_by_row_matching(PartialLatinSquare(1025), rng, 1), LatinError);
}
