#include "latin/construction.hpp"

#include <algorithm>
#include <string>

namespace latin {

Quadrant StructuredSquare::quadrant(Cell x) const {
    if (x.row >= core_order || x.col >= core_order) return Quadrant::Extra;
    const bool top = x.row < half, left = x.col < half;
    if (top) return left ? Quadrant::A : Quadrant::B;
    return left ? Quadrant::BT : Quadrant::AT;
}

bool StructuredSquare::is_flagged(Cell x) const {
    return std::binary_search(flagged.begin(), flagged.end(), x);
}

bool is_transversal(const LatinSquare& L, const Transversal& t) {
    const int n = L.order();
    if (int(t.cells.size()) != n) return false;
    std::vector<char> rows(n), cols(n), syms(std::size_t(n) + 1);
    for (Cell x : t.cells) {
        if (!L.in_bounds(x.row, x.col)) return false;
        Symbol s = L.at(x);
        if (rows[x.row] || cols[x.col] || syms[s]) return false;
        rows[x.row] = cols[x.col] = syms[s] = 1;
    }
    return true;
}

namespace {

LatinSquare even_core(int m) {
    const int k = m / 2;
    LatinSquare L(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) L.set(i, j, even_formula(k, i, j));
    return L;
}

int col_of(const LatinSquare& L, int r, Symbol s) {
    for (int c = 0; c < L.order(); ++c)
        if (L.at(r, c) == s) return c;
    return -1;
}

int row_of(const LatinSquare& L, int c, Symbol s) {
    for (int r = 0; r < L.order(); ++r)
        if (L.at(r, c) == s) return r;
    return -1;
}

void swap_intercalate(LatinSquare& L, int r1, int r2, int c1, int c2) {
    Symbol a = L.at(r1, c1), b = L.at(r1, c2);
    if (L.at(r2, c1) != b || L.at(r2, c2) != a)
        throw LatinError(Errc::PreconditionViolated, "odd-order surgery expected an intercalate");
    L.set(r1, c1, b);
    L.set(r1, c2, a);
    L.set(r2, c1, a);
    L.set(r2, c2, b);
}

// the three preparatory intercalate swaps for n = 4k-1 (core order m = 4k-2)
void prepare_4k_minus_1(LatinSquare& L) {
    const int m = L.order(), h = m / 2;
    const Symbol big = Symbol(m);
    {
        const int r = m - 1;
        int ca = col_of(L, r, 2), cb = col_of(L, r, big);
        int p = row_of(L, ca, big);
        swap_intercalate(L, r, p, ca, cb);
    }
    {
        const int c = m - 1;
        int ra = row_of(L, c, Symbol(h)), rb = row_of(L, c, big);
        int q = col_of(L, ra, big);
        if (L.at(rb, q) != Symbol(h))
            throw LatinError(Errc::PreconditionViolated, "odd-order surgery expected an intercalate");
        swap_intercalate(L, ra, rb, c, q);
    }
    if (L.at(m - 2, m - 2) != 1 || L.at(m - 2, m - 1) != big || L.at(m - 1, m - 2) != big ||
        L.at(m - 1, m - 1) != 1)
        throw LatinError(Errc::PreconditionViolated, "bottom-right block is not [[1,m],[m,1]]");
    swap_intercalate(L, m - 2, m - 1, m - 2, m - 1);
}

} // namespace

Transversal odd_transversal(int n, const LatinSquare& core) {
    Transversal t;
    auto add = [&](int r1, int c1) { t.cells.push_back({r1 - 1, c1 - 1}); };
    if (n % 4 == 1) {
        const int k = (n - 1) / 4;
        for (int i = 1; i <= k; ++i) add(i, 2 * i - 1);
        for (int i = 1; i <= k; ++i) add(k + i, 2 * k + 2 * i - 1);
        for (int i = 1; i <= k; ++i) add(2 * k + i, 2 * k + 2 * i);
        for (int i = 1; i <= k; ++i) add(3 * k + i, 2 * i);
    } else {
        const int k = (n + 1) / 4;
        for (int i = 1; i <= k; ++i) add(i, 2 * i - 1);
        add(k + 1, 2 * k);
        for (int i = 1; i <= k - 2; ++i) add(k + 1 + i, 2 * k + 2 * i);
        for (int i = 0; i <= k - 2; ++i) add(2 * k + i, 2 * k + 1 + 2 * i);
        for (int i = 0; i <= k - 2; ++i) add(3 * k - 1 + i, 2 + 2 * i);
        add(4 * k - 2, 4 * k - 2);
    }
    if (!is_transversal(core, t))
        throw LatinError(Errc::PreconditionViolated, "transversal list is not a transversal of the core");
    return t;
}

StructuredSquare build_even(int n) {
    if (n < 2 || n % 2 != 0) throw LatinError(Errc::OddOrder, "build_even needs even n >= 2, got " + std::to_string(n));
    if (n > kMaxOrder) throw LatinError(Errc::UnsupportedOrder, "order exceeds 65535");
    StructuredSquare S;
    S.half = n / 2;
    S.core_order = n;
    S.square = even_core(n);
    return S;
}

StructuredSquare build_odd(int n) {
    if (n < 5 || n % 2 == 0)
        throw LatinError(Errc::UnsupportedOrder, "build_odd needs odd n >= 5, got " + std::to_string(n));
    if (n > kMaxOrder) throw LatinError(Errc::UnsupportedOrder, "order exceeds 65535");
    const int m = n - 1;
    LatinSquare core = even_core(m);
    if (n % 4 == 3) prepare_4k_minus_1(core);
    Transversal t = odd_transversal(n, core);

    LatinSquare L(n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) L.set(i, j, core.at(i, j));
    for (Cell x : t.cells) {
        Symbol s = core.at(x);
        L.set(x.row, m, s);
        L.set(m, x.col, s);
        L.set(x, Symbol(n));
    }
    L.set(m, m, Symbol(n));

    StructuredSquare S;
    S.half = m / 2;
    S.core_order = m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (L.at(i, j) != even_formula(S.half, i, j)) S.flagged.push_back({i, j});
    for (int j = 0; j < n; ++j) S.flagged.push_back({m, j});
    for (int i = 0; i < m; ++i) S.flagged.push_back({i, m});
    std::sort(S.flagged.begin(), S.flagged.end());
    if (int(S.flagged.size()) > 3 * n + 7)
        throw LatinError(Errc::PreconditionViolated, "flagged cell count " + std::to_string(S.flagged.size()) +
                                                         " exceeds 3n+7");
    S.square = std::move(L);
    return S;
}

StructuredSquare build_structured(int n) {
    if (n % 2 == 0) return build_even(n);
    if (n >= 5) return build_odd(n);
    // n = 1, 3: cyclic square, every cell flagged so nothing relies on structure
    StructuredSquare S;
    S.square = LatinSquare(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            S.square.set(i, j, Symbol((i + j) % n + 1));
            S.flagged.push_back({i, j});
        }
    return S;
}

std::optional<std::vector<Cell>> subsquare_partner(const StructuredSquare& S, Cell c1, Cell c2) {
    if (c1.row != c2.row) throw LatinError(Errc::RowMismatch, "cells must share a row");
    const int n = S.order();
    if (!S.square.in_bounds(c1.row, c1.col) || !S.square.in_bounds(c2.row, c2.col))
        throw LatinError(Errc::OutOfBounds, "cell outside the square");
    Quadrant q1 = S.quadrant(c1), q2 = S.quadrant(c2);
    if (q1 == Quadrant::Extra || q2 == Quadrant::Extra) return std::nullopt;
    if ((c1.col < S.half) == (c2.col < S.half))
        throw LatinError(Errc::SameQuadrant, "cells lie in the same column half");
    if (S.is_flagged(c1) || S.is_flagged(c2)) return std::nullopt;
    const Symbol s1 = S.square.at(c1), s2 = S.square.at(c2);
    for (int x = 0; x < n; ++x) {
        if (S.square.at(x, c1.col) != s2) continue;
        if (S.square.at(x, c2.col) != s1) return std::nullopt;
        std::vector<Cell> out{c1, c2, {x, c1.col}, {x, c2.col}};
        return out;
    }
    return std::nullopt;
}

int count_subsquares(const LatinSquare& L, Cell x) {
    const int n = L.order();
    const Symbol s1 = L.at(x);
    std::vector<int> row_in_col(std::size_t(n) + 1, -1);
    for (int r = 0; r < n; ++r) row_in_col[L.at(r, x.col)] = r;
    int count = 0;
    for (int c = 0; c < n; ++c) {
        if (c == x.col) continue;
        int r = row_in_col[L.at(x.row, c)];
        if (L.at(r, c) == s1) ++count;
    }
    return count;
}

} // namespace latin
