#include "latin/backtrack.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include <algorithm>
#include <bit>
#include <random>
#include <vector>

namespace latin {

namespace {

class Searcher {
public:
    Searcher(const PartialLatinSquare& P, const std::function<bool(const LatinSquare&)>& visit, std::int64_t limit,
             std::mt19937_64* rng = nullptr)
        : n_(P.order()), grid_(P), visit_(visit), limit_(limit), rng_(rng), row_(n_, 0), col_(n_, 0) {
        if (n_ > 64) throw LatinError(Errc::TooLarge, "backtracking handles orders up to 64");
        full_ = n_ == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n_) - 1;
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
                Symbol s = P.at(r, c);
                if (s == kBlank) {
                    blanks_.push_back({r, c});
                    continue;
                }
                std::uint64_t b = std::uint64_t(1) << (s - 1);
                if ((row_[r] & b) || (col_[c] & b)) consistent_ = false;
                row_[r] |= b;
                col_[c] |= b;
            }
    }

    BacktrackResult run() {
        if (consistent_) dfs(int(blanks_.size()));
        return res_;
    }

private:
    // blanks_[0..left) are still empty
    bool dfs(int left) {
        ++res_.nodes;
        if (limit_ >= 0 && std::int64_t(res_.nodes) > limit_) {
            res_.exhausted = false;
            return false;
        }
        if (left == 0) {
            ++res_.solutions;
            return visit_(grid_);
        }
        int best = -1, best_count = 65;
        std::uint64_t best_mask = 0;
        for (int i = 0; i < left; ++i) {
            Cell x = blanks_[i];
            std::uint64_t m = full_ & ~(row_[x.row] | col_[x.col]);
            int k = std::popcount(m);
            // random tie-breaking when restarting
            if (k < best_count || (rng_ && k == best_count && ((*rng_)() & 1))) {
                best = i;
                best_count = k;
                best_mask = m;
                if (k <= 1) break;
            }
        }
        if (best_count == 0) return true;
        std::swap(blanks_[best], blanks_[left - 1]);
        Cell x = blanks_[left - 1];
        while (best_mask) {
            std::uint64_t b = best_mask & (~best_mask + 1);
            if (rng_) {
                int skip = int((*rng_)() % unsigned(std::popcount(best_mask)));
                std::uint64_t m = best_mask;
                for (int t = 0; t < skip; ++t) m &= m - 1;
                b = m & (~m + 1);
            }
            best_mask ^= b;
            row_[x.row] |= b;
            col_[x.col] |= b;
            grid_.set(x, Symbol(std::countr_zero(b) + 1));
            bool go = dfs(left - 1);
            row_[x.row] &= ~b;
            col_[x.col] &= ~b;
            grid_.set(x, kBlank);
            if (!go) {
                std::swap(blanks_[best], blanks_[left - 1]);
                return false;
            }
        }
        std::swap(blanks_[best], blanks_[left - 1]);
        return true;
    }

    int n_;
    SymbolGrid grid_;
    const std::function<bool(const LatinSquare&)>& visit_;
    std::int64_t limit_;
    std::mt19937_64* rng_;
    std::vector<std::uint64_t> row_, col_;
    std::vector<Cell> blanks_;
    std::uint64_t full_ = 0;
    bool consistent_ = true;
    BacktrackResult res_;
};

} // namespace

BacktrackResult backtrack_search(const PartialLatinSquare& P, const std::function<bool(const LatinSquare&)>& visit,
                                 std::int64_t node_limit) {
    return Searcher(P, visit, node_limit).run();
}

std::optional<LatinSquare> backtrack_complete(const PartialLatinSquare& P, std::int64_t node_limit) {
    std::optional<LatinSquare> out;
    backtrack_search(
        P,
        [&](const LatinSquare& L) {
            out = L;
            return false;
        },
        node_limit);
    return out;
}

std::optional<LatinSquare> backtrack_complete_restarts(const PartialLatinSquare& P, std::mt19937_64& rng,
                                                      std::int64_t per_try, int tries) {
    std::optional<LatinSquare> out;
    const std::int64_t first = per_try;
    auto keep = [&](const LatinSquare& L) {
        out = L;
        return false;
    };
    for (int t = 0; t < tries && !out; ++t) {
        auto res = Searcher(P, keep, per_try, &rng).run();
        if (res.exhausted && !out) break; // proven impossible
        per_try = std::min(per_try + per_try / 2, 8 * first);
    }
    return out;
}

std::optional<LatinSquare> complete_by_row_matching(const PartialLatinSquare& P, std::mt19937_64& rng, int tries) {
    check_partial(P);
    const int n = P.order();
    if (n > 1024) throw LatinError(Errc::TooLarge, "row matching handles orders up to 1024");
    const std::size_t w = std::size_t(n) + 1;
    // later[c*w+s]: P still has s in column c in a row not yet filled
    std::vector<int> pending(std::size_t(n) * w, 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (P.at(r, c)) ++pending[c * w + P.at(r, c)];
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    std::vector<int> order(n);
    for (int t = 0; t < tries; ++t) {
        LatinSquare L = P;
        std::vector<int> later = pending;
        std::vector<char> used(std::size_t(n) * w, 0);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        bool ok = true;
        for (int r : order) {
            std::vector<char> in_row(w, 0);
            std::vector<int> cells, syms;
            for (int c = 0; c < n; ++c) {
                const Symbol s = P.at(r, c);
                if (!s) {
                    cells.push_back(c);
                    continue;
                }
                in_row[s] = 1;
                used[c * w + s] = 1;
                --later[c * w + s];
            }
            for (int s = 1; s <= n; ++s)
                if (!in_row[s]) syms.push_back(s);
            std::shuffle(cells.begin(), cells.end(), rng);
            std::shuffle(syms.begin(), syms.end(), rng);
            const int k = int(cells.size());
            Graph g(2 * k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    const std::size_t key = cells[i] * w + syms[j];
                    if (!used[key] && !later[key]) boost::add_edge(i, k + j, g);
                }
            std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(2 * k);
            // the default entry point also re-verifies maximality on every call; skip that
            boost::matching<Graph, decltype(mate.data()), boost::property_map<Graph, boost::vertex_index_t>::type,
                            boost::edmonds_augmenting_path_finder, boost::extra_greedy_matching,
                            boost::no_matching_verifier>(g, mate.data(), boost::get(boost::vertex_index, g));
            if (int(boost::matching_size(g, mate.data())) < k) {
                ok = false;
                break;
            }
            for (int i = 0; i < k; ++i) {
                const int s = syms[int(mate[i]) - k];
                L.set(r, cells[i], Symbol(s));
                used[cells[i] * w + s] = 1;
            }
        }
        if (ok) return L;
    }
    return std::nullopt;
}

std::uint64_t count_completions(const PartialLatinSquare& P, std::uint64_t limit) {
    std::uint64_t k = 0;
    backtrack_search(P, [&](const LatinSquare&) { return ++k < limit; });
    return k;
}

} // namespace latin
