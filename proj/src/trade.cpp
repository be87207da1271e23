#include "latin/trade.hpp"

#include <algorithm>
#include <string>

#include "latin/construction.hpp"

namespace latin {

std::vector<Cell> Trade::footprint() const {
    std::vector<Cell> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.cell);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Trade intercalate_trade(const SymbolGrid& L, int r1, int r2, int c1, int c2) {
    const Symbol a = L.at(r1, c1), b = L.at(r1, c2);
    if (L.at(r2, c1) != b || L.at(r2, c2) != a)
        throw LatinError(Errc::MissingSymbolAtCell, "cells do not form an intercalate");
    Trade t;
    t.kind = TradeKind::Proper2x2;
    t.steps = {{{r1, c1}, {a}, {b}}, {{r1, c2}, {b}, {a}}, {{r2, c1}, {b}, {a}}, {{r2, c2}, {a}, {b}}};
    return t;
}

Trade improper_trade(Cell tl, Cell br, Symbol a, Symbol b) {
    Trade t;
    t.kind = TradeKind::Improper2x2;
    const Cell tr{tl.row, br.col}, bl{br.row, tl.col};
    t.steps.push_back({tl, {a}, {b}});
    t.steps.push_back({tr, {b}, {a}});
    t.steps.push_back({bl, {b}, {a}});
    // c becomes b + c - a; removing a leaves a negative entry unless c == a
    t.steps.push_back({br, {a}, {b}});
    return t;
}

Trade reverse(const Trade& t) {
    Trade r;
    r.kind = t.kind;
    r.steps.reserve(t.steps.size());
    for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) r.steps.push_back({it->cell, it->added, it->removed});
    return r;
}

namespace {
std::string where(Cell x) { return "(" + std::to_string(x.row + 1) + "," + std::to_string(x.col + 1) + ")"; }
} // namespace

void apply_trade(SymbolGrid& sq, const Trade& t) {
    for (const auto& st : t.steps)
        if (!sq.in_bounds(st.cell.row, st.cell.col)) throw LatinError(Errc::OutOfBounds, where(st.cell));
    // validate first so a failing trade leaves the square untouched
    std::vector<std::pair<Cell, Symbol>> pending;
    for (const auto& st : t.steps) {
        if (st.removed.size() > 1 || st.added.size() > 1)
            throw LatinError(Errc::ImproperResult, "multi-symbol step at " + where(st.cell));
        Symbol cur = sq.at(st.cell);
        for (auto& p : pending)
            if (p.first == st.cell) cur = p.second;
        Symbol want = st.removed.empty() ? kBlank : st.removed[0];
        if (cur != want)
            throw LatinError(Errc::MissingSymbolAtCell, "expected " + std::to_string(want) + " at " + where(st.cell));
        pending.push_back({st.cell, st.added.empty() ? kBlank : st.added[0]});
    }
    for (auto& p : pending) sq.set(p.first, p.second);
}

void apply_trade(ImproperSquare& sq, const Trade& t) {
    const int n = sq.order();
    for (const auto& st : t.steps)
        if (st.cell.row < 0 || st.cell.col < 0 || st.cell.row >= n || st.cell.col >= n)
            throw LatinError(Errc::OutOfBounds, where(st.cell));
    for (const auto& st : t.steps) {
        for (Symbol s : st.removed) sq.add(st.cell.row, st.cell.col, s, -1);
        for (Symbol s : st.added) sq.add(st.cell.row, st.cell.col, s, +1);
    }
}

bool is_proper_trade(const PartialLatinSquare& P, const PartialLatinSquare& Q) {
    if (P.order() != Q.order()) return false;
    const int n = P.order();
    std::vector<int> cnt(std::size_t(n) + 1);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if ((P.at(r, c) == kBlank) != (Q.at(r, c) == kBlank)) return false;
            if (P.at(r, c) != kBlank) {
                ++cnt[P.at(r, c)];
                --cnt[Q.at(r, c)];
            }
        }
        for (int& v : cnt) {
            if (v) return false;
        }
    }
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r)
            if (P.at(r, c) != kBlank) {
                ++cnt[P.at(r, c)];
                --cnt[Q.at(r, c)];
            }
        for (int& v : cnt)
            if (v) return false;
    }
    return true;
}

void TradeRecord::add(Trade t) {
    auto fp = t.footprint();
    std::vector<Cell> merged;
    std::set_union(footprint.begin(), footprint.end(), fp.begin(), fp.end(), std::back_inserter(merged));
    footprint = std::move(merged);
    trades.push_back(std::move(t));
}

namespace {

int rand_below(std::mt19937_64& rng, int k) { return int(std::uniform_int_distribution<int>(0, k - 1)(rng)); }

// the two (or one) positions in a line holding +s, excluding `skip`
template <class Get>
int pick_positive(int n, int skip, Symbol s, Get coeff_at, std::mt19937_64& rng, bool two) {
    int found[2] = {-1, -1}, k = 0;
    for (int i = 0; i < n && k < 2; ++i)
        if (i != skip && coeff_at(i, s) > 0) found[k++] = i;
    if (two && k == 2) return found[rand_below(rng, 2)];
    return found[0];
}

} // namespace

void random_improper_move(ImproperSquare& sq, std::mt19937_64& rng) {
    const int n = sq.order();
    if (n < 2) return;
    auto imp = sq.first_improper_cell();
    int r, c;
    Symbol out_sym, in_sym;
    if (!imp) {
        r = rand_below(rng, n);
        c = rand_below(rng, n);
        out_sym = sq.at(r, c)[0].sym;
        in_sym = Symbol(rand_below(rng, n - 1) + 1);
        if (in_sym >= out_sym) ++in_sym;
    } else {
        r = imp->row;
        c = imp->col;
        const auto& cell = sq.at(r, c);
        Symbol pos[2] = {0, 0};
        int k = 0;
        in_sym = 0;
        for (const auto& t : cell) {
            if (t.coeff < 0) in_sym = t.sym;
            else if (k < 2) pos[k++] = t.sym;
        }
        out_sym = pos[rand_below(rng, k)];
    }
    // in_sym goes into (r,c), out_sym leaves it
    const bool two = bool(imp);
    int r2 = pick_positive(n, r, in_sym, [&](int i, Symbol s) { return sq.coeff(i, c, s); }, rng, two);
    int c2 = pick_positive(n, c, in_sym, [&](int j, Symbol s) { return sq.coeff(r, j, s); }, rng, two);
    sq.add(r, c, in_sym, +1);
    sq.add(r, c, out_sym, -1);
    sq.add(r, c2, in_sym, -1);
    sq.add(r, c2, out_sym, +1);
    sq.add(r2, c, in_sym, -1);
    sq.add(r2, c, out_sym, +1);
    sq.add(r2, c2, in_sym, +1);
    sq.add(r2, c2, out_sym, -1);
}

ImproperSquare random_improper_move(const ImproperSquare& sq, std::mt19937_64& rng) {
    ImproperSquare out = sq;
    random_improper_move(out, rng);
    return out;
}

LatinSquare sample_latin(int n, long burn_in, std::mt19937_64& rng) {
    ImproperSquare sq = ImproperSquare::lift(build_structured(n).square);
    for (long i = 0; i < burn_in; ++i) random_improper_move(sq, rng);
    while (true) {
        if (auto p = sq.to_proper()) return *p;
        random_improper_move(sq, rng);
    }
}

} // namespace latin
