#include "latin/completion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "latin/backtrack.hpp"

namespace latin {

// ---- ledger ---------------------------------------------------------------

DisturbanceLedger::DisturbanceLedger(int n)
    : n_(n), bits_((std::size_t(n) * n + 63) / 64, 0), rows_(n, 0), cols_(n, 0), syms_(std::size_t(n) + 1, 0) {}

bool DisturbanceLedger::mark(int r, int c, Symbol original) {
    std::size_t i = std::size_t(r) * n_ + c;
    std::uint64_t bit = std::uint64_t(1) << (i & 63);
    if (bits_[i >> 6] & bit) return false;
    bits_[i >> 6] |= bit;
    ++rows_[r];
    ++cols_[c];
    ++syms_[original];
    ++total_;
    journal_.push_back({r, c, original});
    return true;
}

std::uint32_t DisturbanceLedger::count(Axis axis, int index) const {
    switch (axis) {
    case Axis::Row: return rows_[index];
    case Axis::Column: return cols_[index];
    case Axis::Symbol: return syms_[index];
    }
    return 0;
}

void DisturbanceLedger::rollback(std::size_t to) {
    while (journal_.size() > to) {
        Entry e = journal_.back();
        journal_.pop_back();
        std::size_t i = std::size_t(e.r) * n_ + e.c;
        bits_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
        --rows_[e.r];
        --cols_[e.c];
        --syms_[e.sym];
        --total_;
    }
}

std::uint32_t DisturbanceLedger::screen_count(Axis axis, int index) const {
    std::uint32_t v = count(axis, index);
    if (!frozen_) return v;
    for (std::size_t i = freeze_at_; i < journal_.size(); ++i) {
        const Entry& e = journal_[i];
        int k = axis == Axis::Row ? e.r : axis == Axis::Column ? e.c : e.sym;
        v -= (k == index);
    }
    return v;
}

bool is_overloaded(const DisturbanceLedger& ledger, Axis axis, int index, double d) {
    return double(ledger.screen_count(axis, index)) > d * ledger.order();
}

// ---- feasibility ----------------------------------------------------------

bool swap_feasible(const FeasibilityParams& p) {
    if (p.d <= 0) return false;
    const double n = p.n;
    bool one = 3 <= n - 4 * (p.kappa / p.d) * n - 6 * p.d * n - 6 * p.eps * n - 3 * p.a;
    bool two = 12 <= n - 12 * p.d * n - 12 * p.eps * n - 4 * p.a;
    return one && two;
}

bool completion_feasible(double n, double eps, double delta) {
    long double R = (long double)n - 20 - 12.0L * eps * n;
    if (R < 0) return false;
    long double rad = 69.0L * delta * n * n + 3.0L * n + 7;
    return 144 * rad <= R * R;
}

namespace {
using i128 = __int128;
bool root_test(std::int64_t n, std::int64_t radicand, std::int64_t max_line) {
    i128 R = i128(n) - 20 - i128(12) * max_line;
    if (R < 0) return false;
    return i128(144) * radicand <= R * R;
}
} // namespace

bool completion_feasible_exact(std::int64_t n, std::int64_t fill, std::int64_t max_line) {
    return root_test(n, 69 * fill + 3 * n + 7, max_line);
}

bool fix_feasible_exact(std::int64_t n, std::int64_t total, std::int64_t max_line) {
    return root_test(n, total + 48, max_line);
}

const char* shape_name(SwapShape s) {
    switch (s) {
    case SwapShape::Direct: return "direct";
    case SwapShape::SameHalf: return "same-half";
    case SwapShape::CrossHalf: return "cross-half";
    }
    return "?";
}

// ---- engine ---------------------------------------------------------------

struct CompletionEngine::View {
    const CompletionEngine& e;
    bool t; // true: lines are columns

    Symbol at(int a, int b) const { return t ? e.at(b, a) : e.at(a, b); }
    int pos(int a, Symbol s) const { return t ? e.row_of(a, s) : e.col_of(a, s); }
    int line(int b, Symbol s) const { return t ? e.col_of(b, s) : e.row_of(b, s); }
    Cell cell(int a, int b) const { return t ? Cell{b, a} : Cell{a, b}; }
    Axis line_axis() const { return t ? Axis::Column : Axis::Row; }
    Axis cross_axis() const { return t ? Axis::Row : Axis::Column; }
    bool disturbed(int a, int b) const {
        Cell x = cell(a, b);
        return e.ledger_.disturbed(x.row, x.col);
    }
    bool blocked(int a, int b) const {
        Cell x = cell(a, b);
        return e.agrees(x.row, x.col) || e.locked(x.row, x.col);
    }
};

namespace {

constexpr int kCrossAttempts = 32;
constexpr int kRelaxedCrossAttempts = 256;
// symbol pairs tried per (r4,c4) choice in the relaxed tier
constexpr int kRelaxedSymbolChoices = 6;

bool contains(const std::vector<Symbol>& v, Symbol s) { return std::find(v.begin(), v.end(), s) != v.end(); }

} // namespace

CompletionEngine::CompletionEngine(StructuredSquare S, const PartialLatinSquare* P)
    : n_(S.order()), L_(std::move(S.square)), P_(P), ledger_(n_) {
    const std::size_t nn = std::size_t(n_) * n_;
    col_of_.assign(nn, 0);
    row_of_.assign(nn, 0);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            Symbol s = L_.at(r, c);
            col_of_[std::size_t(r) * n_ + s - 1] = std::uint16_t(c);
            row_of_[std::size_t(c) * n_ + s - 1] = std::uint16_t(r);
        }
    stats_.steps += nn;
    for (Cell x : S.flagged) ledger_.mark(x.row, x.col, L_.at(x));
    ledger_.clear_journal();
    set_partial(P);
}

void CompletionEngine::set_partial(const PartialLatinSquare* P) {
    P_ = P;
    const std::size_t nn = std::size_t(n_) * n_;
    agree_.assign((nn + 63) / 64, 0);
    agree_count_ = 0;
    max_line_ = 0;
    if (!P_) return;
    if (P_->order() != n_) throw LatinError(Errc::OrderMismatch, "partial square and construction differ in order");
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c)
            if (P_->at(r, c) != kBlank && P_->at(r, c) == L_.at(r, c)) set_agree(r, c);
    max_line_ = density(*P_).max_line;
    stats_.steps += nn;
}

LatinSquare CompletionEngine::release_square() {
    col_of_.clear();
    col_of_.shrink_to_fit();
    row_of_.clear();
    row_of_.shrink_to_fit();
    return std::move(L_);
}

void CompletionEngine::set_agree(int r, int c) {
    std::size_t i = std::size_t(r) * n_ + c;
    std::uint64_t bit = std::uint64_t(1) << (i & 63);
    if (agree_[i >> 6] & bit) return;
    agree_[i >> 6] |= bit;
    ++agree_count_;
    if (in_txn_) agree_log_.push_back(i);
}

bool CompletionEngine::locked(int r, int c) const {
    for (Cell x : locked_)
        if (x.row == r && x.col == c) return true;
    return false;
}

double CompletionEngine::overload_d() const {
    double floor_total = 3.0 * n_ + 7;
    double kappa = std::max(double(ledger_.total()), floor_total) / (double(n_) * n_);
    return std::sqrt(kappa);
}

bool CompletionEngine::trade_allowed(const Trade& t, const std::vector<Symbol>& avoid) const {
    const auto& st = t.steps;
    // each cell once, old contents current, nothing protected
    for (std::size_t i = 0; i < st.size(); ++i) {
        const auto& s = st[i];
        if (s.removed.size() != 1 || s.added.size() != 1) return false;
        if (!L_.in_bounds(s.cell.row, s.cell.col)) return false;
        if (L_.at(s.cell) != s.removed[0]) return false;
        if (agrees(s.cell.row, s.cell.col) || locked(s.cell.row, s.cell.col)) return false;
        if (contains(avoid, s.removed[0]) || contains(avoid, s.added[0])) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (st[j].cell == s.cell) return false;
    }
    // every row and column keeps its symbol multiset
    auto balanced = [&](bool by_row) {
        for (std::size_t i = 0; i < st.size(); ++i) {
            int line = by_row ? st[i].cell.row : st[i].cell.col;
            Symbol sym = st[i].removed[0];
            int bal = 0;
            for (const auto& u : st) {
                if ((by_row ? u.cell.row : u.cell.col) != line) continue;
                bal += (u.removed[0] == sym) - (u.added[0] == sym);
            }
            if (bal != 0) return false;
            sym = st[i].added[0];
            bal = 0;
            for (const auto& u : st) {
                if ((by_row ? u.cell.row : u.cell.col) != line) continue;
                bal += (u.removed[0] == sym) - (u.added[0] == sym);
            }
            if (bal != 0) return false;
        }
        return true;
    };
    return balanced(true) && balanced(false);
}

void CompletionEngine::apply(const Trade& t) {
    if (!trade_allowed(t, {})) throw LatinError(Errc::PreconditionViolated, "trade is not an admissible proper trade");
    for (const auto& s : t.steps) {
        ledger_.mark(s.cell.row, s.cell.col, s.removed[0]);
        L_.set(s.cell, s.added[0]);
    }
    for (const auto& s : t.steps) {
        Symbol v = s.added[0];
        col_of_[std::size_t(s.cell.row) * n_ + v - 1] = std::uint16_t(s.cell.col);
        row_of_[std::size_t(s.cell.col) * n_ + v - 1] = std::uint16_t(s.cell.row);
        if (P_ && P_->at(s.cell) == v) set_agree(s.cell.row, s.cell.col);
    }
    stats_.steps += t.steps.size();
    if (in_txn_) applied_.push_back(t);
    else ledger_.clear_journal();
}

void CompletionEngine::undo_to(std::size_t applied_mark, std::size_t journal_mark, std::size_t agree_mark) {
    while (applied_.size() > applied_mark) {
        const Trade& t = applied_.back();
        for (const auto& s : t.steps) L_.set(s.cell, s.removed[0]);
        for (const auto& s : t.steps) {
            Symbol v = s.removed[0];
            col_of_[std::size_t(s.cell.row) * n_ + v - 1] = std::uint16_t(s.cell.col);
            row_of_[std::size_t(s.cell.col) * n_ + v - 1] = std::uint16_t(s.cell.row);
        }
        applied_.pop_back();
    }
    ledger_.rollback(journal_mark);
    while (agree_log_.size() > agree_mark) {
        std::size_t i = agree_log_.back();
        agree_log_.pop_back();
        agree_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
        --agree_count_;
    }
}

bool CompletionEngine::first_cell_ok(bool column, int line, int pos, const std::vector<Symbol>& avoid, double d) const {
    View v{*this, column};
    Symbol s1 = v.at(line, pos);
    if (contains(avoid, s1) || v.blocked(line, pos)) return false;
    if (is_overloaded(ledger_, Axis::Symbol, s1, d)) return false;
    if (is_overloaded(ledger_, v.cross_axis(), pos, d)) return false;
    return true;
}

bool CompletionEngine::second_cell_ok(bool column, int line, int c1, int c2, const std::vector<Symbol>& avoid,
                                      double d) const {
    View v{*this, column};
    if (c1 == c2) return false;
    Symbol s1 = v.at(line, c1), s2 = v.at(line, c2);
    if (contains(avoid, s2) || v.blocked(line, c2)) return false;
    int r3 = v.line(c1, s2), r4 = v.line(c2, s1);
    if (v.disturbed(r3, c1) || v.disturbed(r4, c2)) return false;
    if (v.blocked(r3, c1) || v.blocked(r4, c2)) return false;
    if (is_overloaded(ledger_, v.line_axis(), r3, d) || is_overloaded(ledger_, v.line_axis(), r4, d)) return false;
    if (is_overloaded(ledger_, Axis::Symbol, s2, d) || is_overloaded(ledger_, v.cross_axis(), c2, d)) return false;
    return true;
}

SwapOutcome CompletionEngine::swap_in_row(int r1, int c1, int c2, const std::vector<Symbol>& avoid, double d,
                                          bool screened) {
    return swap_in_line(View{*this, false}, r1, c1, c2, avoid, d, screened);
}

SwapOutcome CompletionEngine::swap_in_column(int c1, int r1, int r2, const std::vector<Symbol>& avoid, double d,
                                             bool screened) {
    return swap_in_line(View{*this, true}, c1, r1, r2, avoid, d, screened);
}

SwapOutcome CompletionEngine::swap_in_line(const View& v, int r1, int c1, int c2, const std::vector<Symbol>& avoid,
                                           double d, bool screened) {
    if (4 * avoid.size() + 12 > std::size_t(n_))
        throw LatinError(Errc::AvoidSetTooLarge, std::to_string(avoid.size()) + " avoided symbols at order " +
                                                     std::to_string(n_));
    if (r1 < 0 || c1 < 0 || c2 < 0 || r1 >= n_ || c1 >= n_ || c2 >= n_ || c1 == c2)
        throw LatinError(Errc::IneligibleCell, "bad swap positions");
    const Symbol s1 = v.at(r1, c1), s2 = v.at(r1, c2);
    if (screened) {
        if (!first_cell_ok(v.t, r1, c1, avoid, d)) throw LatinError(Errc::IneligibleCell, "first cell fails screens");
        if (!second_cell_ok(v.t, r1, c1, c2, avoid, d))
            throw LatinError(Errc::IneligibleCell, "second cell fails screens");
    } else if (contains(avoid, s1) || contains(avoid, s2) || v.blocked(r1, c1) || v.blocked(r1, c2)) {
        throw LatinError(Errc::IneligibleCell, "swap would move a protected cell");
    }
    const int r3 = v.line(c1, s2), r4 = v.line(c2, s1);

    SwapOutcome out;
    out.first = v.cell(r1, c1);
    out.second = v.cell(r1, c2);
    auto put = [&](Trade& t, int a, int b, Symbol s) { t.steps.push_back({v.cell(a, b), {v.at(a, b)}, {s}}); };
    auto accept = [&](Trade&& t, SwapShape shape, bool relaxed) {
        t.kind = t.steps.size() == 4 ? TradeKind::Proper2x2 : TradeKind::Composite;
        out.trade = std::move(t);
        out.shape = shape;
        ++stats_.swaps[int(shape)];
        if (relaxed) ++stats_.relaxed_swaps;
        return out;
    };

    if (r3 == r4) {
        Trade t;
        put(t, r1, c1, s2);
        put(t, r1, c2, s1);
        put(t, r3, c1, s1);
        put(t, r3, c2, s2);
        if (trade_allowed(t, avoid)) return accept(std::move(t), SwapShape::Direct, false);
    }

    // (r3,c4) is the failing corner; the other side is a direct intercalate
    auto cross = [&](int r2, int c1x, int c2x, Symbol s1x, Symbol s2x, int r3x, int r4x, Symbol s3x, Symbol s4x,
                     int c3x, int c4x, bool strict, Trade& res) {
        const Symbol s5 = v.at(r3x, c4x);
        if (contains(avoid, s5)) return false;
        if (strict && is_overloaded(ledger_, Axis::Symbol, s5, d)) return false;
        for (int s = 1; s <= n_; ++s) {
            ++stats_.steps;
            const Symbol s6 = Symbol(s);
            if (s6 == s1x || s6 == s2x || s6 == s3x || s6 == s4x || s6 == s5 || contains(avoid, s6)) continue;
            const int c6 = v.pos(r2, s6), r5 = v.line(c1x, s6);
            if (v.at(r5, c6) != s3x) continue;
            const int c5 = v.pos(r3x, s6), r6 = v.line(c4x, s6);
            if (v.at(r6, c5) != s5) continue;
            if (strict) {
                if (v.disturbed(r5, c1x) || v.disturbed(r6, c4x) || v.disturbed(r2, c6) || v.disturbed(r3x, c5) ||
                    v.disturbed(r5, c6) || v.disturbed(r6, c5))
                    continue;
                if (is_overloaded(ledger_, Axis::Symbol, s6, d) || is_overloaded(ledger_, v.line_axis(), r5, d) ||
                    is_overloaded(ledger_, v.line_axis(), r6, d) || is_overloaded(ledger_, v.cross_axis(), c5, d) ||
                    is_overloaded(ledger_, v.cross_axis(), c6, d))
                    continue;
            }
            Trade t;
            put(t, r1, c1x, s2x);
            put(t, r1, c2x, s1x);
            put(t, r2, c1x, s1x);
            put(t, r2, c2x, s2x);
            put(t, r2, c3x, s4x);
            put(t, r2, c4x, s6);
            put(t, r2, c6, s3x);
            put(t, r3x, c1x, s6);
            put(t, r3x, c4x, s2x);
            put(t, r3x, c5, s5);
            put(t, r4x, c2x, s4x);
            put(t, r4x, c3x, s1x);
            put(t, r5, c1x, s3x);
            put(t, r5, c6, s6);
            put(t, r6, c4x, s5);
            put(t, r6, c5, s6);
            if (trade_allowed(t, avoid)) {
                res = std::move(t);
                return true;
            }
        }
        return false;
    };

    for (int tier = screened ? 0 : 1; tier < 2; ++tier) {
        const bool strict = tier == 0;
        int cross_left = strict ? kCrossAttempts : kRelaxedCrossAttempts;
        for (int r2 = 0; r2 < n_; ++r2) {
            ++stats_.steps;
            if (r2 == r1 || r2 == r3 || r2 == r4) continue;
            const Symbol s3 = v.at(r2, c1), s4 = v.at(r2, c2);
            if (contains(avoid, s3) || contains(avoid, s4)) continue;
            const int c4 = v.pos(r2, s2), c3 = v.pos(r2, s1);
            const bool sideA = v.at(r3, c4) == s3, sideB = v.at(r4, c3) == s4;
            if (!sideA && !sideB) continue;
            if (strict) {
                if (v.disturbed(r2, c1) || v.disturbed(r2, c2) || v.disturbed(r2, c3) || v.disturbed(r2, c4) ||
                    v.disturbed(r3, c4) || v.disturbed(r4, c3))
                    continue;
                if (is_overloaded(ledger_, v.line_axis(), r2, d) || is_overloaded(ledger_, Axis::Symbol, s3, d) ||
                    is_overloaded(ledger_, Axis::Symbol, s4, d) || is_overloaded(ledger_, v.cross_axis(), c3, d) ||
                    is_overloaded(ledger_, v.cross_axis(), c4, d))
                    continue;
            }
            if (sideA && sideB) {
                Trade t;
                put(t, r1, c1, s2);
                put(t, r1, c2, s1);
                put(t, r2, c1, s1);
                put(t, r2, c2, s2);
                put(t, r2, c3, s4);
                put(t, r2, c4, s3);
                put(t, r3, c1, s3);
                put(t, r3, c4, s2);
                put(t, r4, c2, s4);
                put(t, r4, c3, s1);
                if (trade_allowed(t, avoid)) return accept(std::move(t), SwapShape::SameHalf, !strict);
                continue;
            }
            if (cross_left <= 0) continue;
            --cross_left;
            Trade t;
            bool found = sideB ? cross(r2, c1, c2, s1, s2, r3, r4, s3, s4, c3, c4, strict, t)
                               : cross(r2, c2, c1, s2, s1, r4, r3, s4, s3, c4, c3, strict, t);
            if (found) return accept(std::move(t), SwapShape::CrossHalf, !strict);
        }
    }
    throw LatinError(Errc::ChoicesExhausted, "no swap trade found for " + std::to_string(r1 + 1) + ":" +
                                                 std::to_string(c1 + 1) + "<->" + std::to_string(c2 + 1));
}

bool CompletionEngine::try_fix(Cell target, int r4, Symbol s3, Symbol s4, double d, bool screened, Trade& out) {
    const int r1 = target.row, c1 = target.col;
    const Symbol s1 = L_.at(r1, c1), s2 = P_->at(r1, c1);
    const int r2 = row_of(c1, s2), c2 = col_of(r1, s2);
    const int c4 = col_of(r4, s1), r3 = row_of(c4, s2), c3 = col_of(r4, s2);
    const std::vector<Symbol> avoid{s1, s2};

    in_txn_ = true;
    const std::size_t a_mark = applied_.size(), j_mark = ledger_.journal_size(), g_mark = agree_log_.size();
    ledger_.freeze();
    locked_.clear();
    auto ensure = [&](bool column, int line, int pos, Symbol s) {
        View v{*this, column};
        if (v.at(line, pos) == s) return true;
        try {
            SwapOutcome o = swap_in_line(v, line, pos, v.pos(line, s), avoid, d, screened);
            apply(o.trade);
        } catch (const LatinError&) {
            return false;
        }
        return true;
    };
    auto quad = [&](int ra, int rb, int ca, int cb) {
        Symbol a = L_.at(ra, ca), b = L_.at(ra, cb);
        if (L_.at(rb, ca) != b || L_.at(rb, cb) != a) return false;
        Trade t = intercalate_trade(L_, ra, rb, ca, cb);
        if (!trade_allowed(t, {})) return false;
        apply(t);
        return true;
    };

    bool ok = ensure(false, r1, c4, s3);
    if (ok) {
        locked_ = {{r1, c4}};
        ok = ensure(false, r3, c2, s3);
    }
    locked_.clear();
    ok = ok && L_.at(r1, c2) == s2 && L_.at(r1, c4) == s3 && L_.at(r3, c2) == s3 && L_.at(r3, c4) == s2 &&
         quad(r1, r3, c2, c4);
    ok = ok && ensure(true, c1, r4, s4);
    if (ok) {
        locked_ = {{r4, c1}};
        ok = ensure(true, c3, r2, s4);
    }
    locked_.clear();
    ok = ok && L_.at(r2, c1) == s2 && L_.at(r4, c3) == s2 && L_.at(r4, c1) == s4 && L_.at(r2, c3) == s4 &&
         quad(r2, r4, c1, c3);
    ok = ok && L_.at(r1, c4) == s2 && L_.at(r4, c4) == s1 && quad(r1, r4, c1, c4);

    ledger_.unfreeze();
    if (!ok) {
        undo_to(a_mark, j_mark, g_mark);
        in_txn_ = false;
        ++stats_.rollbacks;
        return false;
    }
    out = Trade{};
    out.kind = TradeKind::Composite;
    for (std::size_t i = a_mark; i < applied_.size(); ++i)
        out.steps.insert(out.steps.end(), applied_[i].steps.begin(), applied_[i].steps.end());
    applied_.resize(a_mark);
    agree_log_.resize(g_mark);
    ledger_.clear_journal();
    in_txn_ = false;
    return true;
}

Trade CompletionEngine::fix_cell(Cell target, bool enforce_feasibility) {
    if (!P_) throw LatinError(Errc::PreconditionViolated, "no partial square attached");
    const int r1 = target.row, c1 = target.col;
    if (!L_.in_bounds(r1, c1)) throw LatinError(Errc::OutOfBounds, "target outside the square");
    const Symbol s1 = L_.at(r1, c1), s2 = P_->at(r1, c1);
    if (s2 == kBlank || s2 == s1)
        throw LatinError(Errc::PreconditionViolated, "target must be a filled cell where P and L disagree");
    if (enforce_feasibility && !fix_feasible_exact(n_, std::int64_t(ledger_.total()), max_line_))
        throw LatinError(Errc::Infeasible, "disturbed total " + std::to_string(ledger_.total()) +
                                               " leaves no room for another fix at order " + std::to_string(n_));
    const double d = overload_d();
    const std::uint64_t before = ledger_.total();
    const int r2 = row_of(c1, s2), c2 = col_of(r1, s2);
    const std::vector<Symbol> avoid{s1, s2};

    for (int tier = 0; tier < 2; ++tier) {
        const bool screened = tier == 0;
        auto first_ok = [&](bool column, int line, int pos) {
            if (screened) return first_cell_ok(column, line, pos, avoid, d);
            View v{*this, column};
            return !v.blocked(line, pos) && !contains(avoid, v.at(line, pos));
        };
        auto second_ok = [&](bool column, int line, int pos, Symbol s) {
            View v{*this, column};
            if (v.at(line, pos) == s) return true;
            int pos2 = v.pos(line, s);
            if (screened) return second_cell_ok(column, line, pos, pos2, avoid, d);
            return !v.blocked(line, pos2);
        };
        for (int r4 = 0; r4 < n_; ++r4) {
            ++stats_.steps;
            if (r4 == r1 || r4 == r2) continue;
            const int c4 = col_of(r4, s1);
            if (c4 == c2) continue;
            const int r3 = row_of(c4, s2), c3 = col_of(r4, s2);
            if (agrees(r4, c4) || agrees(r3, c4) || agrees(r4, c3)) continue;
            if (!first_ok(false, r1, c4) || !first_ok(false, r3, c2) || !first_ok(true, c1, r4) ||
                !first_ok(true, c3, r2))
                continue;
            const std::size_t want = screened ? 1 : kRelaxedSymbolChoices;
            std::vector<Symbol> s3s, s4s;
            for (int s = 1; s <= n_ && s3s.size() < want; ++s) {
                ++stats_.steps;
                if (s == s1 || s == s2) continue;
                if (second_ok(false, r1, c4, Symbol(s)) && second_ok(false, r3, c2, Symbol(s))) s3s.push_back(Symbol(s));
            }
            for (int s = 1; s <= n_ && s4s.size() < want; ++s) {
                ++stats_.steps;
                if (s == s1 || s == s2) continue;
                if (second_ok(true, c1, r4, Symbol(s)) && second_ok(true, c3, r2, Symbol(s))) s4s.push_back(Symbol(s));
            }
            for (std::size_t i = 0; i < s3s.size() * s4s.size(); ++i) {
                const Symbol s3 = s3s[i / s4s.size()], s4 = s4s[i % s4s.size()];
                Trade out;
                if (try_fix(target, r4, s3, s4, d, screened, out)) {
                    ++stats_.fixes;
                    if (!screened) ++stats_.relaxed_fixes;
                    const std::uint64_t added = ledger_.total() - before;
                    ++stats_.fix_histogram[int(added)];
                    stats_.max_fix_footprint = std::max<std::uint64_t>(stats_.max_fix_footprint, out.size());
                    return out;
                }
            }
        }
    }
    throw LatinError(Errc::ChoicesExhausted, "no fix found for cell (" + std::to_string(r1 + 1) + "," +
                                                 std::to_string(c1 + 1) + ")");
}

// ---- driver ---------------------------------------------------------------

constexpr int kSearchFallbackMax = 64;
constexpr int kMatchingFallbackMax = 128;

CompletionReport run_completion(const PartialLatinSquare& P, Mode mode,
                                const std::function<void(CompletionEngine&)>& preamble) {
    check_partial(P);
    const int n = P.order();
    CompletionReport rep;
    rep.fill = P.fill();
    if (n < 16) {
        BacktrackResult res;
        std::optional<LatinSquare> found;
        res = backtrack_search(
            P,
            [&](const LatinSquare& L) {
                found = L;
                return false;
            },
            std::int64_t(2) * 1000 * 1000 * 1000);
        if (!found) {
            if (res.exhausted)
                throw LatinError(Errc::TinyOrderFallbackFailed, "exhaustive search found no completion");
            throw LatinError(Errc::ChoicesExhausted, "tiny-order search hit its node limit");
        }
        rep.square = std::move(*found);
        rep.stats.steps = res.nodes;
        rep.used_fallback = true;
        return rep;
    }
    CompletionEngine eng(build_structured(n), &P);
    rep.initial_flagged = eng.ledger().total();
    try {
        if (preamble) preamble(eng);
        for (Cell x : disagreement_cells(P, eng.square())) {
            if (eng.agrees(x.row, x.col)) continue;
            eng.fix_cell(x, mode == Mode::Strict);
        }
    } catch (const LatinError& e) {
        // dense instances run the trade templates dry once most of the square is
        // disturbed; hand them to the row-matching search, and at small orders to
        // a restarting backtrack that can also prove there is no completion
        if (mode != Mode::Practical || n > kMatchingFallbackMax || e.code() != Errc::ChoicesExhausted) throw;
        std::mt19937_64 rng(0x5eed0000u + unsigned(n));
        auto found = complete_by_row_matching(P, rng, 50);
        if (!found && n <= kSearchFallbackMax) found = backtrack_complete_restarts(P, rng, 20000, 60);
        if (!found) throw;
        rep.stats = eng.stats();
        rep.ledger_total = eng.ledger().total();
        rep.square = std::move(*found);
        rep.used_fallback = true;
        return rep;
    }
    rep.stats = eng.stats();
    rep.ledger_total = eng.ledger().total();
    rep.square = eng.release_square();
    return rep;
}

CompletionReport complete_with_report(const PartialLatinSquare& P, Mode mode) {
    check_partial(P);
    const int n = P.order();
    if (mode == Mode::Strict && n >= 16) {
        const DensityProfile dens = density(P);
        if (!completion_feasible_exact(n, std::int64_t(dens.fill), dens.max_line))
            throw LatinError(Errc::Infeasible, "completion bound fails: n=" + std::to_string(n) + " fill=" +
                                                   std::to_string(dens.fill) +
                                                   " max line=" + std::to_string(dens.max_line));
    }
    return run_completion(P, mode, {});
}

LatinSquare complete(const PartialLatinSquare& P, Mode mode) { return complete_with_report(P, mode).square; }

} // namespace latin
