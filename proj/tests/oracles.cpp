#include "oracles.hpp"

#include <bit>
#include <functional>

namespace oracle {

namespace {

bool line_ok(const std::vector<int>& vals, int n, bool allow_blank) {
    std::vector<char> seen(n + 1, 0);
    for (int v : vals) {
        if (v == 0) {
            if (!allow_blank) return false;
            continue;
        }
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool check(int n, const Grid& g, bool allow_blank) {
    if (int(g.size()) != n * n) return false;
    for (int i = 0; i < n; ++i) {
        std::vector<int> row(g.begin() + i * n, g.begin() + (i + 1) * n), col;
        for (int r = 0; r < n; ++r) col.push_back(g[r * n + i]);
        if (!line_ok(row, n, allow_blank) || !line_ok(col, n, allow_blank)) return false;
    }
    return true;
}

} // namespace

bool is_latin(int n, const Grid& g) { return check(n, g, false); }
bool is_partial(int n, const Grid& g) { return check(n, g, true); }

std::vector<Grid> all_latin_squares(int n) {
    std::vector<Grid> out;
    Grid g(n * n, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n * n) {
            out.push_back(g);
            return;
        }
        const int r = pos / n, c = pos % n;
        for (int v = 1; v <= n; ++v) {
            bool ok = true;
            for (int k = 0; k < c && ok; ++k) ok = g[r * n + k] != v;
            for (int k = 0; k < r && ok; ++k) ok = g[k * n + c] != v;
            if (!ok) continue;
            g[pos] = v;
            rec(pos + 1);
            g[pos] = 0;
        }
    };
    rec(0);
    return out;
}

std::vector<int> intercalates_per_cell(int n, const Grid& g) {
    std::vector<int> cnt(n * n, 0);
    for (int r1 = 0; r1 < n; ++r1)
        for (int r2 = r1 + 1; r2 < n; ++r2)
            for (int c1 = 0; c1 < n; ++c1)
                for (int c2 = c1 + 1; c2 < n; ++c2) {
                    const int a = g[r1 * n + c1], b = g[r1 * n + c2];
                    if (g[r2 * n + c1] == b && g[r2 * n + c2] == a) {
                        ++cnt[r1 * n + c1];
                        ++cnt[r1 * n + c2];
                        ++cnt[r2 * n + c1];
                        ++cnt[r2 * n + c2];
                    }
                }
    return cnt;
}

std::uint64_t count_completions(int n, const Grid& start, std::uint64_t limit) {
    if (!is_partial(n, start)) return 0;
    Grid g = start;
    std::vector<std::uint64_t> row(n, 0), col(n, 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (int v = g[r * n + c]) {
                row[r] |= std::uint64_t(1) << (v - 1);
                col[c] |= std::uint64_t(1) << (v - 1);
            }
    std::uint64_t found = 0;
    std::function<void(int)> rec = [&](int pos) {
        if (found >= limit) return;
        while (pos < n * n && g[pos]) ++pos;
        if (pos == n * n) {
            ++found;
            return;
        }
        const int r = pos / n, c = pos % n;
        for (int v = 1; v <= n; ++v) {
            const std::uint64_t bit = std::uint64_t(1) << (v - 1);
            if ((row[r] | col[c]) & bit) continue;
            row[r] |= bit;
            col[c] |= bit;
            g[pos] = v;
            rec(pos + 1);
            g[pos] = 0;
            row[r] &= ~bit;
            col[c] &= ~bit;
        }
    };
    rec(0);
    return found;
}

int block_formula(int n, int i, int j) {
    const int k = n / 2;
    auto mod1 = [k](int x) { return ((x % k) + k) % k + 1; };
    const bool top = i <= k, left = j <= k;
    const int a = top ? i : i - k, b = left ? j : j - k;
    if (top && left) return mod1(b - a);
    if (top) return mod1(b - a) + k;
    if (left) return mod1(a - b) + k;
    return mod1(a - b);
}

std::size_t Graph::edges() const {
    std::size_t e = 0;
    for (int i = 0; i < n * n; ++i) e += rc[i] + rs[i] + cs[i];
    return e;
}

bool Graph::uniform() const {
    for (int v = 0; v < n; ++v) {
        int rC = 0, rS = 0, cR = 0, cS = 0, sR = 0, sC = 0;
        for (int u = 0; u < n; ++u) {
            rC += rc[v * n + u];
            rS += rs[v * n + u];
            cR += rc[u * n + v];
            cS += cs[v * n + u];
            sR += rs[u * n + v];
            sC += cs[u * n + v];
        }
        if (rC != rS || cR != cS || sR != sC) return false;
    }
    return true;
}

std::uint64_t count_triangulations(const Graph& g0, std::uint64_t limit) {
    Graph g = g0;
    const int n = g.n;
    std::uint64_t found = 0;
    std::function<void()> rec = [&]() {
        if (found >= limit) return;
        int at = -1;
        for (int i = 0; i < n * n; ++i)
            if (g.rc[i]) {
                at = i;
                break;
            }
        if (at < 0) {
            for (int i = 0; i < n * n; ++i)
                if (g.rs[i] || g.cs[i]) return;
            ++found;
            return;
        }
        const int r = at / n, c = at % n;
        for (int s = 0; s < n; ++s) {
            if (!g.rs[r * n + s] || !g.cs[c * n + s]) continue;
            g.rc[at] = g.rs[r * n + s] = g.cs[c * n + s] = 0;
            rec();
            g.rc[at] = g.rs[r * n + s] = g.cs[c * n + s] = 1;
        }
    };
    rec();
    return found;
}

bool partitions_edges(const Graph& g, const std::vector<Tri>& tris) {
    const int n = g.n;
    std::vector<int> rc(n * n, 0), rs(n * n, 0), cs(n * n, 0);
    for (const Tri& t : tris) {
        if (t.r < 0 || t.c < 0 || t.s < 0 || t.r >= n || t.c >= n || t.s >= n) return false;
        ++rc[t.r * n + t.c];
        ++rs[t.r * n + t.s];
        ++cs[t.c * n + t.s];
    }
    for (int i = 0; i < n * n; ++i)
        if (rc[i] != g.rc[i] || rs[i] != g.rs[i] || cs[i] != g.cs[i]) return false;
    return true;
}

std::vector<Graph> all_uniform_graphs(int n) {
    std::vector<Graph> out;
    const int full = 1 << n;
    // subsets of {0..n-1} grouped by size
    std::vector<std::vector<int>> by_size(n + 1);
    for (int m = 0; m < full; ++m) by_size[std::popcount(unsigned(m))].push_back(m);

    for (long rcm = 0; rcm < (1L << (n * n)); ++rcm) {
        Graph g(n);
        std::vector<int> dr(n, 0), dc(n, 0);
        for (int i = 0; i < n * n; ++i)
            if (rcm >> i & 1) {
                g.rc[i] = 1;
                ++dr[i / n];
                ++dc[i % n];
            }
        // rows pick symbol sets of their R-C degree
        std::vector<int> rsrow(n);
        std::function<void(int)> pick_rs = [&](int r) {
            if (r == n) {
                std::vector<int> dsr(n, 0);
                for (int i = 0; i < n; ++i)
                    for (int s = 0; s < n; ++s) dsr[s] += rsrow[i] >> s & 1;
                std::vector<int> csrow(n);
                std::function<void(int)> pick_cs = [&](int c) {
                    if (c == n) {
                        for (int s = 0; s < n; ++s) {
                            int cnt = 0;
                            for (int j = 0; j < n; ++j) cnt += csrow[j] >> s & 1;
                            if (cnt != dsr[s]) return;
                        }
                        Graph h = g;
                        for (int i = 0; i < n; ++i)
                            for (int s = 0; s < n; ++s) h.rs[i * n + s] = rsrow[i] >> s & 1;
                        for (int j = 0; j < n; ++j)
                            for (int s = 0; s < n; ++s) h.cs[j * n + s] = csrow[j] >> s & 1;
                        out.push_back(std::move(h));
                        return;
                    }
                    for (int m : by_size[dc[c]]) {
                        csrow[c] = m;
                        pick_cs(c + 1);
                    }
                };
                pick_cs(0);
                return;
            }
            for (int m : by_size[dr[r]]) {
                rsrow[r] = m;
                pick_rs(r + 1);
            }
        };
        pick_rs(0);
    }
    return out;
}

} // namespace oracle
