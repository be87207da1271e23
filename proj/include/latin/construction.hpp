#pragma once

#include <optional>
#include <vector>

#include "latin/square.hpp"

namespace latin {

enum class Quadrant { A, B, BT, AT, Extra };

struct StructuredSquare {
    LatinSquare square;
    int half = 0;       // k, where the even core has order 2k
    int core_order = 0; // 2k; equals n for even n
    std::vector<Cell> flagged;

    int order() const { return square.order(); }
    Quadrant quadrant(Cell x) const;
    bool is_flagged(Cell x) const;
};

// value of the even block construction at 0-based (i, j), order 2k
inline Symbol even_formula(int k, int i, int j) {
    const bool top = i < k, left = j < k;
    int a = top ? i : i - k;
    int b = left ? j : j - k;
    int d = top ? b - a : a - b;
    d %= k;
    if (d < 0) d += k;
    return Symbol(d + 1 + (top == left ? 0 : k));
}

struct Transversal {
    std::vector<Cell> cells;
};

bool is_transversal(const LatinSquare& L, const Transversal& t);

StructuredSquare build_even(int n);
StructuredSquare build_odd(int n);
// dispatches on parity; n = 1 and n = 3 give cyclic squares with no structure
StructuredSquare build_structured(int n);

// the transversal of the core used by the odd constructions (before surgery)
Transversal odd_transversal(int n, const LatinSquare& core);

// 2x2 subsquare on rows {row, x} and columns {c1, c2}, or nullopt
std::optional<std::vector<Cell>> subsquare_partner(const StructuredSquare& S, Cell c1, Cell c2);

int count_subsquares(const LatinSquare& L, Cell x);
inline int count_subsquares(const StructuredSquare& S, Cell x) { return count_subsquares(S.square, x); }

} // namespace latin
