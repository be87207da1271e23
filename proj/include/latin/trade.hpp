#pragma once

#include <random>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "latin/square.hpp"

namespace latin {

using SymbolList = boost::container::small_vector<Symbol, 2>;

struct TradeStep {
    Cell cell;
    SymbolList removed;
    SymbolList added;
    friend bool operator==(const TradeStep&, const TradeStep&) = default;
};

enum class TradeKind { Proper2x2, Improper2x2, Composite };

struct Trade {
    std::vector<TradeStep> steps;
    TradeKind kind = TradeKind::Composite;

    std::vector<Cell> footprint() const; // sorted, distinct
    std::size_t size() const { return footprint().size(); }
};

// the four-cell swap of an intercalate on rows {r1,r2} x cols {c1,c2} read from L
Trade intercalate_trade(const SymbolGrid& L, int r1, int r2, int c1, int c2);
// improper template: a b / b c  ->  b a / a (b+c-a); (r1,c1) holds a, (r2,c2) holds c
Trade improper_trade(Cell top_left, Cell bottom_right, Symbol a, Symbol b);

Trade reverse(const Trade& t);

// proper squares: every step removes at most one symbol and adds at most one
void apply_trade(SymbolGrid& sq, const Trade& t);
void apply_trade(ImproperSquare& sq, const Trade& t);

bool is_proper_trade(const PartialLatinSquare& P, const PartialLatinSquare& Q);

struct TradeRecord {
    std::vector<Trade> trades;
    std::vector<Cell> footprint;
    void add(Trade t);
};

// one move of the improper walk; at most one improper cell before and after
void random_improper_move(ImproperSquare& sq, std::mt19937_64& rng);
ImproperSquare random_improper_move(const ImproperSquare& sq, std::mt19937_64& rng);

LatinSquare sample_latin(int n, long burn_in, std::mt19937_64& rng);

} // namespace latin
