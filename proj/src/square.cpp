#include "latin/square.hpp"

#include <algorithm>
#include <string>

namespace latin {

const char* errc_name(Errc e) {
    switch (e) {
    case Errc::NonSquareInput: return "NonSquareInput";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::DuplicateInRow: return "DuplicateInRow";
    case Errc::DuplicateInColumn: return "DuplicateInColumn";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::OddOrder: return "OddOrder";
    case Errc::UnsupportedOrder: return "UnsupportedOrder";
    case Errc::SameQuadrant: return "SameQuadrant";
    case Errc::RowMismatch: return "RowMismatch";
    case Errc::MissingSymbolAtCell: return "MissingSymbolAtCell";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::ImproperResult: return "ImproperResult";
    case Errc::IneligibleCell: return "IneligibleCell";
    case Errc::ChoicesExhausted: return "ChoicesExhausted";
    case Errc::AvoidSetTooLarge: return "AvoidSetTooLarge";
    case Errc::Infeasible: return "Infeasible";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::TinyOrderFallbackFailed: return "TinyOrderFallbackFailed";
    case Errc::NotABijection: return "NotABijection";
    case Errc::TriesExhausted: return "TriesExhausted";
    case Errc::OverlappingTriangles: return "OverlappingTriangles";
    case Errc::NotUniform: return "NotUniform";
    case Errc::MatchingFailed: return "MatchingFailed";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BalanceViolated: return "BalanceViolated";
    case Errc::OverloadedSegment: return "OverloadedSegment";
    case Errc::ParseError: return "ParseError";
    case Errc::InfeasibleDensities: return "InfeasibleDensities";
    }
    return "Unknown";
}

SymbolGrid::SymbolGrid(int n, std::vector<Symbol> cells) : n_(n), cells_(std::move(cells)) {
    if (cells_.size() != std::size_t(n) * std::size_t(n))
        throw LatinError(Errc::NonSquareInput, "cell count does not match order");
}

std::size_t SymbolGrid::fill() const {
    return std::size_t(std::count_if(cells_.begin(), cells_.end(), [](Symbol s) { return s != kBlank; }));
}

namespace {

std::string pos(int r, int c) {
    return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
}

// row-major scan shared by validate_partial and check_partial
template <class Get>
void scan_duplicates(int n, Get get) {
    std::vector<std::uint32_t> row_seen(std::size_t(n) + 1, 0);
    std::vector<std::uint64_t> col_seen((std::size_t(n) * (std::size_t(n) + 1) + 63) / 64, 0);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            Symbol s = get(r, c);
            if (s == kBlank) continue;
            if (row_seen[s] == std::uint32_t(r) + 1)
                throw LatinError(Errc::DuplicateInRow, "row " + std::to_string(r + 1) + ", symbol " +
                                                           std::to_string(s) + " at " + pos(r, c));
            row_seen[s] = std::uint32_t(r) + 1;
            std::size_t bit = std::size_t(c) * (std::size_t(n) + 1) + s;
            if (col_seen[bit >> 6] >> (bit & 63) & 1)
                throw LatinError(Errc::DuplicateInColumn, "col " + std::to_string(c + 1) + ", symbol " +
                                                              std::to_string(s) + " at " + pos(r, c));
            col_seen[bit >> 6] |= std::uint64_t(1) << (bit & 63);
        }
    }
}

} // namespace

PartialLatinSquare validate_partial(const RawGrid& cells) {
    const int n = int(cells.size());
    if (n == 0) throw LatinError(Errc::NonSquareInput, "empty grid");
    if (n > kMaxOrder) throw LatinError(Errc::NonSquareInput, "order exceeds 65535");
    for (int r = 0; r < n; ++r)
        if (int(cells[r].size()) != n)
            throw LatinError(Errc::NonSquareInput, "row " + std::to_string(r + 1) + " has " +
                                                       std::to_string(cells[r].size()) + " entries, expected " +
                                                       std::to_string(n));
    SymbolGrid g(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const auto& v = cells[r][c];
            if (!v) continue;
            if (*v < 1 || *v > n)
                throw LatinError(Errc::SymbolOutOfRange, "symbol " + std::to_string(*v) + " at " + pos(r, c));
            g.set(r, c, Symbol(*v));
        }
    // range errors take precedence over duplicates
    scan_duplicates(n, [&](int r, int c) { return g.at(r, c); });
    return g;
}

void check_partial(const SymbolGrid& g) {
    const int n = g.order();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (g.at(r, c) > n)
                throw LatinError(Errc::SymbolOutOfRange,
                                 "symbol " + std::to_string(g.at(r, c)) + " at " + pos(r, c));
    scan_duplicates(n, [&](int r, int c) { return g.at(r, c); });
}

bool is_partial_latin(const SymbolGrid& g) {
    try {
        check_partial(g);
        return true;
    } catch (const LatinError&) {
        return false;
    }
}

bool is_latin(const SymbolGrid& g) {
    const int n = g.order();
    if (n == 0) return false;
    for (Symbol s : g.raw())
        if (s == kBlank || s > n) return false;
    return is_partial_latin(g);
}

bool extends(const LatinSquare& L, const PartialLatinSquare& P) {
    if (L.order() != P.order()) return false;
    const auto& a = L.raw();
    const auto& b = P.raw();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != kBlank && a[i] != b[i]) return false;
    return true;
}

ImproperSquare ImproperSquare::lift(const SymbolGrid& g) {
    ImproperSquare sq(g.order());
    for (int r = 0; r < g.order(); ++r)
        for (int c = 0; c < g.order(); ++c)
            if (g.at(r, c) != kBlank) sq.add(r, c, g.at(r, c), 1);
    return sq;
}

void ImproperSquare::add(int r, int c, Symbol sym, int coeff) {
    auto& cell = at(r, c);
    for (auto it = cell.begin(); it != cell.end(); ++it) {
        if (it->sym == sym) {
            it->coeff += coeff;
            if (it->coeff == 0) cell.erase(it);
            return;
        }
    }
    if (coeff != 0) cell.push_back({sym, coeff});
}

bool operator==(const ImproperSquare& a, const ImproperSquare& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.cells_.size(); ++i) {
        const CellContent &x = a.cells_[i], &y = b.cells_[i];
        if (x.size() != y.size()) return false;
        for (const Term& t : x)
            if (std::find(y.begin(), y.end(), t) == y.end()) return false;
    }
    return true;
}

int ImproperSquare::coeff(int r, int c, Symbol sym) const {
    for (const auto& t : at(r, c))
        if (t.sym == sym) return t.coeff;
    return 0;
}

bool ImproperSquare::is_proper_cell(int r, int c) const {
    const auto& cell = at(r, c);
    return cell.empty() || (cell.size() == 1 && cell[0].coeff == 1);
}

int ImproperSquare::improper_cell_count() const {
    int k = 0;
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) k += !is_proper_cell(r, c);
    return k;
}

std::optional<Cell> ImproperSquare::first_improper_cell() const {
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c)
            if (!is_proper_cell(r, c)) return Cell{r, c};
    return std::nullopt;
}

std::optional<SymbolGrid> ImproperSquare::to_proper() const {
    SymbolGrid g(n_);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            const auto& cell = at(r, c);
            if (cell.size() != 1 || cell[0].coeff != 1) return std::nullopt;
            g.set(r, c, cell[0].sym);
        }
    return g;
}

bool validate_improper(const ImproperSquare& sq, bool partial) {
    const int n = sq.order();
    std::vector<int> sum(std::size_t(n) + 1);
    auto line_ok = [&]() {
        for (int s = 1; s <= n; ++s) {
            if (partial ? (sum[s] != 0 && sum[s] != 1) : sum[s] != 1) return false;
        }
        return true;
    };
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            for (const auto& t : sq.at(r, c))
                if (t.sym < 1 || t.sym > n) return false;
    for (int r = 0; r < n; ++r) {
        std::fill(sum.begin(), sum.end(), 0);
        for (int c = 0; c < n; ++c)
            for (const auto& t : sq.at(r, c)) sum[t.sym] += t.coeff;
        if (!line_ok()) return false;
    }
    for (int c = 0; c < n; ++c) {
        std::fill(sum.begin(), sum.end(), 0);
        for (int r = 0; r < n; ++r)
            for (const auto& t : sq.at(r, c)) sum[t.sym] += t.coeff;
        if (!line_ok()) return false;
    }
    return true;
}

DensityProfile density(const PartialLatinSquare& P) {
    const int n = P.order();
    DensityProfile d;
    if (n == 0) return d;
    std::vector<int> rows(n), cols(n), syms(std::size_t(n) + 1);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Symbol s = P.at(r, c);
            if (s == kBlank) continue;
            ++rows[r];
            ++cols[c];
            ++syms[s];
            ++d.fill;
        }
    int m = 0;
    for (int v : rows) m = std::max(m, v);
    for (int v : cols) m = std::max(m, v);
    for (int v : syms) m = std::max(m, v);
    d.max_line = m;
    d.eps = double(m) / n;
    d.delta = double(d.fill) / (double(n) * n);
    return d;
}

std::vector<Cell> disagreement_cells(const PartialLatinSquare& P, const LatinSquare& L) {
    if (P.order() != L.order()) throw LatinError(Errc::OrderMismatch, "P and L differ in order");
    std::vector<Cell> out;
    const int n = P.order();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (P.at(r, c) != kBlank && P.at(r, c) != L.at(r, c)) out.push_back({r, c});
    return out;
}

} // namespace latin
