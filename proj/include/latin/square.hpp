#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "latin/error.hpp"

namespace latin {

// symbols are 1-based, 0 marks a blank cell
using Symbol = std::uint16_t;
inline constexpr Symbol kBlank = 0;
inline constexpr int kMaxOrder = 65535;

// rows and columns are 0-based in memory; files and messages use 1-based
struct Cell {
    int row = 0;
    int col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

class SymbolGrid {
public:
    SymbolGrid() = default;
    explicit SymbolGrid(int n) : n_(n), cells_(std::size_t(n) * std::size_t(n), kBlank) {}
    SymbolGrid(int n, std::vector<Symbol> cells);

    int order() const { return n_; }
    Symbol at(int r, int c) const { return cells_[idx(r, c)]; }
    Symbol at(Cell x) const { return at(x.row, x.col); }
    void set(int r, int c, Symbol s) { cells_[idx(r, c)] = s; }
    void set(Cell x, Symbol s) { set(x.row, x.col, s); }
    bool filled(int r, int c) const { return at(r, c) != kBlank; }
    bool in_bounds(int r, int c) const { return r >= 0 && c >= 0 && r < n_ && c < n_; }

    std::size_t fill() const;
    const std::vector<Symbol>& raw() const { return cells_; }
    std::vector<Symbol>& raw() { return cells_; }

    friend bool operator==(const SymbolGrid&, const SymbolGrid&) = default;

private:
    std::size_t idx(int r, int c) const { return std::size_t(r) * std::size_t(n_) + std::size_t(c); }
    int n_ = 0;
    std::vector<Symbol> cells_;
};

// same storage; the name documents which invariant the holder relies on
using PartialLatinSquare = SymbolGrid;
using LatinSquare = SymbolGrid;

// rows of optional entries; 0 or negative values are out of range, nullopt is blank
using RawGrid = std::vector<std::vector<std::optional<int>>>;

PartialLatinSquare validate_partial(const RawGrid& cells);
// checks an existing grid, throws on the first violation in row-major order
void check_partial(const SymbolGrid& g);
bool is_partial_latin(const SymbolGrid& g);
bool is_latin(const SymbolGrid& g);
bool extends(const LatinSquare& L, const PartialLatinSquare& P);

// signed multiset entry of an improper cell
struct Term {
    Symbol sym = 0;
    int coeff = 0;
    friend bool operator==(const Term&, const Term&) = default;
};
using CellContent = boost::container::small_vector<Term, 3>;

class ImproperSquare {
public:
    ImproperSquare() = default;
    explicit ImproperSquare(int n) : n_(n), cells_(std::size_t(n) * std::size_t(n)) {}
    static ImproperSquare lift(const SymbolGrid& g);

    int order() const { return n_; }
    const CellContent& at(int r, int c) const { return cells_[std::size_t(r) * n_ + c]; }
    CellContent& at(int r, int c) { return cells_[std::size_t(r) * n_ + c]; }
    // adds coeff copies of sym, merging and dropping zero coefficients
    void add(int r, int c, Symbol sym, int coeff);
    int coeff(int r, int c, Symbol sym) const;

    bool is_proper_cell(int r, int c) const;
    int improper_cell_count() const;
    std::optional<Cell> first_improper_cell() const;
    // nullopt if any cell is improper or empty
    std::optional<SymbolGrid> to_proper() const;

    // cells are formal sums, so term order does not matter
    friend bool operator==(const ImproperSquare& a, const ImproperSquare& b);

private:
    int n_ = 0;
    std::vector<CellContent> cells_;
};

bool validate_improper(const ImproperSquare& sq, bool partial);

struct DensityProfile {
    double eps = 0;
    std::size_t fill = 0;
    double delta = 0;
    int max_line = 0; // largest usage count over the 3n lines
};

DensityProfile density(const PartialLatinSquare& P);

std::vector<Cell> disagreement_cells(const PartialLatinSquare& P, const LatinSquare& L);

} // namespace latin
