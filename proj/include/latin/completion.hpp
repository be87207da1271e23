#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latin/construction.hpp"
#include "latin/square.hpp"
#include "latin/trade.hpp"

namespace latin {

enum class Axis { Row, Column, Symbol };

class DisturbanceLedger {
public:
    DisturbanceLedger() = default;
    explicit DisturbanceLedger(int n);

    int order() const { return n_; }
    bool disturbed(int r, int c) const {
        std::size_t i = std::size_t(r) * n_ + c;
        return bits_[i >> 6] >> (i & 63) & 1;
    }
    // no-op if already disturbed; `original` is the symbol the cell held before
    bool mark(int r, int c, Symbol original);
    // rows and columns are 0-based, symbols are indexed by their value
    std::uint32_t count(Axis axis, int index) const;
    // count used by overload screens: while frozen, cells disturbed since the
    // freeze are not charged, so one composite is judged against one snapshot
    std::uint32_t screen_count(Axis axis, int index) const;
    void freeze() {
        frozen_ = true;
        freeze_at_ = journal_.size();
    }
    void unfreeze() { frozen_ = false; }
    std::uint64_t total() const { return total_; }
    double kappa() const { return double(total_) / (double(n_) * n_); }

    // journal support for rolling back a failed composite
    struct Entry {
        int r, c;
        Symbol sym;
    };
    std::size_t journal_size() const { return journal_.size(); }
    void rollback(std::size_t to);
    void clear_journal() { journal_.clear(); }

private:
    int n_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> rows_, cols_, syms_;
    std::uint64_t total_ = 0;
    std::vector<Entry> journal_;
    bool frozen_ = false;
    std::size_t freeze_at_ = 0;
};

// counter > d*n
bool is_overloaded(const DisturbanceLedger& ledger, Axis axis, int index, double d);

struct FeasibilityParams {
    double n = 0;
    double eps = 0;
    double delta = 0;
    double d = 0;
    double a = 0;
    double kappa = 0;
};

bool swap_feasible(const FeasibilityParams& p);
// 20 <= n - 12 sqrt(69 delta n^2 + 3n + 7) - 12 eps n, rearranged to avoid the root
bool completion_feasible(double n, double eps, double delta);
// the same test with integer data: max line count m = eps n, fill = delta n^2
bool completion_feasible_exact(std::int64_t n, std::int64_t fill, std::int64_t max_line);
// 20 <= n - 12 sqrt(total + 48) - 12 m, the headroom a single cell fix needs
bool fix_feasible_exact(std::int64_t n, std::int64_t total, std::int64_t max_line);

enum class SwapShape { Direct, SameHalf, CrossHalf };
const char* shape_name(SwapShape s);

struct SwapOutcome {
    Trade trade;
    SwapShape shape = SwapShape::SameHalf;
    Cell first, second;
};

enum class Mode { Strict, Practical };

struct EngineStats {
    std::uint64_t steps = 0;
    std::uint64_t fixes = 0;
    std::uint64_t swaps[3] = {0, 0, 0}; // by shape
    std::uint64_t relaxed_swaps = 0;    // swaps that needed the relaxed screening tier
    std::uint64_t relaxed_fixes = 0;
    std::uint64_t rollbacks = 0;
    std::uint64_t harvested = 0;
    std::uint64_t max_fix_footprint = 0;
    std::map<int, std::uint64_t> fix_histogram; // newly disturbed cells per fix -> count
};

// Owns the working square L with inverse indices, the agreement mask against P,
// and the disturbance ledger. P is borrowed and must outlive the engine.
class CompletionEngine {
public:
    CompletionEngine(StructuredSquare S, const PartialLatinSquare* P);

    int order() const { return n_; }
    const LatinSquare& square() const { return L_; }
    LatinSquare release_square(); // engine is unusable afterwards
    const DisturbanceLedger& ledger() const { return ledger_; }
    const EngineStats& stats() const { return stats_; }
    EngineStats& stats() { return stats_; }
    const PartialLatinSquare& partial() const { return *P_; }
    void set_partial(const PartialLatinSquare* P);

    Symbol at(int r, int c) const { return L_.at(r, c); }
    int col_of(int r, Symbol s) const { return col_of_[std::size_t(r) * n_ + s - 1]; }
    int row_of(int c, Symbol s) const { return row_of_[std::size_t(c) * n_ + s - 1]; }
    bool agrees(int r, int c) const {
        std::size_t i = std::size_t(r) * n_ + c;
        return agree_[i >> 6] >> (i & 63) & 1;
    }
    std::size_t agreement_count() const { return agree_count_; }

    // exchanges (r1,c1) and (r1,c2); the trade is returned, not applied
    SwapOutcome swap_in_row(int r1, int c1, int c2, const std::vector<Symbol>& avoid, double d, bool screened = true);
    // exchanges (r1,c1) and (r2,c1) within column c1
    SwapOutcome swap_in_column(int c1, int r1, int r2, const std::vector<Symbol>& avoid, double d,
                               bool screened = true);

    // eligibility screens used by swap and by fix_cell's candidate selection
    bool first_cell_ok(bool column, int line, int pos, const std::vector<Symbol>& avoid, double d) const;
    bool second_cell_ok(bool column, int line, int pos1, int pos2, const std::vector<Symbol>& avoid, double d) const;

    // checks balance, agreement/lock/avoid constraints and old contents, then applies
    void apply(const Trade& t);
    bool trade_allowed(const Trade& t, const std::vector<Symbol>& avoid) const;

    // makes L(target) = P(target); returns the composite trade that was applied
    Trade fix_cell(Cell target, bool enforce_feasibility = false);

    double overload_d() const;
    int max_line() const { return max_line_; }

private:
    struct View;
    SwapOutcome swap_in_line(const View& v, int r1, int c1, int c2, const std::vector<Symbol>& avoid, double d,
                             bool screened);
    bool try_fix(Cell target, int r4, Symbol s3, Symbol s4, double d, bool screened, Trade& out);
    void undo_to(std::size_t applied_mark, std::size_t journal_mark, std::size_t agree_mark);
    bool locked(int r, int c) const;
    void set_agree(int r, int c);

    int n_;
    LatinSquare L_;
    std::vector<std::uint16_t> col_of_, row_of_;
    std::vector<std::uint64_t> agree_;
    std::size_t agree_count_ = 0;
    const PartialLatinSquare* P_;
    int max_line_ = 0;
    DisturbanceLedger ledger_;
    EngineStats stats_;
    std::vector<Cell> locked_;
    std::vector<Trade> applied_;        // journal of the open transaction
    std::vector<std::size_t> agree_log_; // cells that became agreement in the open transaction
    bool in_txn_ = false;
};

struct CompletionReport {
    LatinSquare square;
    EngineStats stats;
    std::uint64_t ledger_total = 0;
    std::uint64_t initial_flagged = 0;
    std::size_t fill = 0;
    bool used_fallback = false;
};

// below order 16 this is an exhaustive search; otherwise the engine runs `preamble`
// (if any) and then fixes every remaining disagreement in row-major order.
// No density gate is applied here.
CompletionReport run_completion(const PartialLatinSquare& P, Mode mode,
                                const std::function<void(CompletionEngine&)>& preamble);
// Strict mode rejects inputs outside the proven bound with Infeasible
CompletionReport complete_with_report(const PartialLatinSquare& P, Mode mode);
LatinSquare complete(const PartialLatinSquare& P, Mode mode);

} // namespace latin
