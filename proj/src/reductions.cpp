#include "latin/reductions.hpp"

#include <algorithm>
#include <functional>

#include "latin/error.hpp"

namespace latin {

const char* part_name(Part p) {
    switch (p) {
    case Part::R: return "R";
    case Part::C: return "C";
    case Part::S: return "S";
    }
    return "?";
}

TripartiteGraph::TripartiteGraph(int nr, int nc, int ns) : size_{nr, nc, ns} {
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a != b) adj_[a][b].assign(size_[a], boost::dynamic_bitset<>(size_[b]));
}

TripartiteGraph TripartiteGraph::complete(int n) {
    TripartiteGraph g(n, n, n);
    for (auto& row : g.adj_)
        for (auto& fam : row)
            for (auto& bits : fam) bits.set();
    return g;
}

void TripartiteGraph::set(Part a, int i, Part b, int j, bool on) {
    if (a == b) throw LatinError(Errc::PreconditionViolated, "edges join distinct parts");
    if (i < 0 || j < 0 || i >= size_[int(a)] || j >= size_[int(b)])
        throw LatinError(Errc::OutOfBounds, "edge endpoint outside its part");
    adj_[int(a)][int(b)][i][j] = on;
    adj_[int(b)][int(a)][j][i] = on;
}

std::size_t TripartiteGraph::edge_count(Part a, Part b) const {
    std::size_t k = 0;
    for (const auto& bits : adj_[int(a)][int(b)]) k += bits.count();
    return k;
}

std::size_t TripartiteGraph::edge_count() const {
    return edge_count(Part::R, Part::C) + edge_count(Part::C, Part::S) + edge_count(Part::R, Part::S);
}

bool TripartiteGraph::uniform() const {
    for (int a = 0; a < 3; ++a) {
        const int up = (a + 1) % 3, down = (a + 2) % 3;
        for (int i = 0; i < size_[a]; ++i)
            if (adj_[a][up][i].count() != adj_[a][down][i].count()) return false;
    }
    return true;
}

bool TripartiteGraph::has_triangle(const Triangle& t) const {
    return has(Part::R, t.r, Part::C, t.c) && has(Part::C, t.c, Part::S, t.s) && has(Part::R, t.r, Part::S, t.s);
}

void TripartiteGraph::add_triangle(const Triangle& t) {
    set(Part::R, t.r, Part::C, t.c);
    set(Part::C, t.c, Part::S, t.s);
    set(Part::R, t.r, Part::S, t.s);
}

void TripartiteGraph::remove_triangle(const Triangle& t) {
    if (!has_triangle(t))
        throw LatinError(Errc::OverlappingTriangles, "triangle (R" + std::to_string(t.r + 1) + ",C" +
                                                         std::to_string(t.c + 1) + ",S" + std::to_string(t.s + 1) +
                                                         ") is not in the graph");
    reset(Part::R, t.r, Part::C, t.c);
    reset(Part::C, t.c, Part::S, t.s);
    reset(Part::R, t.r, Part::S, t.s);
}

TripartiteGraph defect(const PartialLatinSquare& P) {
    check_partial(P);
    const int n = P.order();
    TripartiteGraph g = TripartiteGraph::complete(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (P.at(r, c) != kBlank) g.remove_triangle({r, c, P.at(r, c) - 1});
    return g;
}

std::vector<Triangle> square_to_triangulation(const PartialLatinSquare& P) {
    std::vector<Triangle> out;
    for (int r = 0; r < P.order(); ++r)
        for (int c = 0; c < P.order(); ++c)
            if (P.at(r, c) != kBlank) out.push_back({r, c, P.at(r, c) - 1});
    return out;
}

PartialLatinSquare triangulation_to_square(const std::vector<Triangle>& T, int n) {
    PartialLatinSquare P(n);
    std::vector<char> rs(std::size_t(n) * n, 0), cs(std::size_t(n) * n, 0);
    for (const auto& t : T) {
        if (t.r < 0 || t.c < 0 || t.s < 0 || t.r >= n || t.c >= n || t.s >= n)
            throw LatinError(Errc::OutOfBounds, "triangle vertex outside the parts");
        char& a = rs[std::size_t(t.r) * n + t.s];
        char& b = cs[std::size_t(t.c) * n + t.s];
        if (P.at(t.r, t.c) != kBlank || a || b)
            throw LatinError(Errc::OverlappingTriangles, "two triangles share an edge at (R" + std::to_string(t.r + 1) +
                                                             ",C" + std::to_string(t.c + 1) + ",S" +
                                                             std::to_string(t.s + 1) + ")");
        a = b = 1;
        P.set(t.r, t.c, Symbol(t.s + 1));
    }
    return P;
}

bool is_triangle_decomposition(const TripartiteGraph& G, const std::vector<Triangle>& T) {
    TripartiteGraph rest = G;
    for (const auto& t : T) {
        if (t.r < 0 || t.c < 0 || t.s < 0 || t.r >= G.part_size(Part::R) || t.c >= G.part_size(Part::C) ||
            t.s >= G.part_size(Part::S))
            return false;
        if (!rest.has_triangle(t)) return false;
        rest.remove_triangle(t);
    }
    return rest.edge_count() == 0;
}

namespace {

// visit gets the current triangle stack and returns false to stop
void search_triangulations(const TripartiteGraph& G, const std::function<bool(const std::vector<Triangle>&)>& visit) {
    if (G.edge_count(Part::R, Part::C) != G.edge_count(Part::C, Part::S) ||
        G.edge_count(Part::R, Part::C) != G.edge_count(Part::R, Part::S))
        return;
    TripartiteGraph g = G;
    std::vector<Triangle> stack;
    bool stop = false;
    const int nr = g.part_size(Part::R);
    // each R-C edge lies in exactly one triangle; take the first remaining one
    std::function<void(int)> go = [&](int r0) {
        int r = r0;
        while (r < nr && g.neighbors(Part::R, r, Part::C).none()) {
            if (g.neighbors(Part::R, r, Part::S).any()) return;
            ++r;
        }
        if (r == nr) {
            if (g.edge_count() == 0) stop = !visit(stack);
            return;
        }
        const int c = int(g.neighbors(Part::R, r, Part::C).find_first());
        boost::dynamic_bitset<> cand = g.neighbors(Part::R, r, Part::S) & g.neighbors(Part::C, c, Part::S);
        for (auto s = cand.find_first(); s != cand.npos && !stop; s = cand.find_next(s)) {
            Triangle t{r, c, int(s)};
            g.remove_triangle(t);
            stack.push_back(t);
            go(r);
            stack.pop_back();
            g.add_triangle(t);
        }
    };
    go(0);
}

} // namespace

std::uint64_t count_triangulations(const TripartiteGraph& G, std::uint64_t limit) {
    std::uint64_t found = 0;
    if (limit == 0) return 0;
    search_triangulations(G, [&](const std::vector<Triangle>&) { return ++found < limit; });
    return found;
}

std::optional<std::vector<Triangle>> find_triangulation(const TripartiteGraph& G) {
    std::optional<std::vector<Triangle>> out;
    search_triangulations(G, [&](const std::vector<Triangle>& t) {
        out = t;
        return false;
    });
    return out;
}

bool is_latin_framework(const LatinFramework& F, const TripartiteGraph& G) {
    const int gr = G.part_size(Part::R), gc = G.part_size(Part::C), gs = G.part_size(Part::S);
    if (F.rows < gr || F.cols < gc || F.syms < gs) return false;
    std::vector<char> seen;
    for (int i = 0; i < F.rows; ++i) {
        seen.assign(F.syms + 1, 0);
        for (int j = 0; j < F.cols; ++j) {
            const Symbol v = F.at(i, j);
            const bool edge = i < gr && j < gc && G.has(Part::R, i, Part::C, j);
            if (edge != (v == kBlank)) return false;
            if (v == kBlank) continue;
            if (v > F.syms || seen[v]) return false;
            seen[v] = 1;
            if (i < gr && v <= gs && G.has(Part::R, i, Part::S, v - 1)) return false;
        }
    }
    for (int j = 0; j < F.cols; ++j) {
        seen.assign(F.syms + 1, 0);
        for (int i = 0; i < F.rows; ++i) {
            const Symbol v = F.at(i, j);
            if (v == kBlank) continue;
            if (seen[v]) return false;
            seen[v] = 1;
            if (j < gc && v <= gs && G.has(Part::C, j, Part::S, v - 1)) return false;
        }
    }
    return true;
}

namespace {

// Splits a k-regular bipartite multigraph (left and right both of size m, given by
// edge multiplicities) into k perfect matchings; match[t][left] = right.
std::vector<std::vector<int>> peel_matchings(std::vector<std::vector<int>> mult, int k) {
    const int m = int(mult.size());
    std::vector<std::vector<int>> out;
    for (int round = 0; round < k; ++round) {
        std::vector<int> right_of(m, -1), left_of(m, -1);
        std::vector<char> seen;
        std::function<bool(int)> augment = [&](int u) {
            for (int v = 0; v < m; ++v) {
                if (!mult[u][v] || seen[v]) continue;
                seen[v] = 1;
                if (left_of[v] < 0 || augment(left_of[v])) {
                    left_of[v] = u;
                    right_of[u] = v;
                    return true;
                }
            }
            return false;
        };
        for (int u = 0; u < m; ++u) {
            seen.assign(m, 0);
            if (!augment(u)) throw LatinError(Errc::MatchingFailed, "regular multigraph has no perfect matching");
        }
        for (int u = 0; u < m; ++u) --mult[u][right_of[u]];
        out.push_back(std::move(right_of));
    }
    return out;
}

} // namespace

ReductionStages reduction_stages(const TripartiteGraph& G) {
    const int n = G.part_size(Part::R);
    if (G.part_size(Part::C) != n || G.part_size(Part::S) != n)
        throw LatinError(Errc::PreconditionViolated, "parts must have equal size");
    if (!G.uniform()) throw LatinError(Errc::NotUniform, "graph is not uniform");
    const int m = 2 * n;
    ReductionStages st;

    // stage 1: formula fill; 1-based i, j in the formula
    LatinFramework& F = st.first;
    F.rows = n;
    F.cols = n;
    F.syms = m;
    F.cells.assign(std::size_t(n) * n, kBlank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!G.has(Part::R, i, Part::C, j)) F.set(i, j, Symbol(1 + n + ((i + 1 + j + 1) % n)));

    // stage 2: n new columns. Row i still needs every symbol it lacks except the
    // small ones its blanks will take. Dummy rows top the symbol side up to degree n.
    std::vector<std::vector<int>> mult(m, std::vector<int>(m, 0));
    std::vector<int> need(m, n);
    for (int i = 0; i < n; ++i) {
        std::vector<char> present(m + 1, 0);
        for (int j = 0; j < n; ++j) present[F.at(i, j)] = 1;
        for (int s = 1; s <= m; ++s) {
            if (present[s] || (s <= n && G.has(Part::R, i, Part::S, s - 1))) continue;
            mult[i][s - 1] = 1;
            --need[s - 1];
        }
    }
    {
        int row = n, room = n;
        for (int s = 0; s < m; ++s)
            while (need[s] > 0) {
                if (row >= m) throw LatinError(Errc::MatchingFailed, "row demands are not regular");
                int take = std::min(need[s], room);
                mult[row][s] += take;
                need[s] -= take;
                room -= take;
                if (room == 0) {
                    ++row;
                    room = n;
                }
            }
        for (int i = 0; i < n; ++i) {
            int deg = 0;
            for (int v : mult[i]) deg += v;
            if (deg != n) throw LatinError(Errc::MatchingFailed, "row " + std::to_string(i + 1) + " lacks n symbols");
        }
    }
    const auto cols = peel_matchings(mult, n);
    LatinFramework& F2 = st.second;
    F2.rows = n;
    F2.cols = m;
    F2.syms = m;
    F2.cells.assign(std::size_t(n) * m, kBlank);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) F2.set(i, j, F.at(i, j));
        for (int t = 0; t < n; ++t) F2.set(i, n + t, Symbol(cols[t][i] + 1));
    }

    // stage 3: n new rows; column j still needs what it lacks minus the small symbols
    // its blanks will take. Every symbol is short in exactly n columns.
    for (auto& v : mult) std::fill(v.begin(), v.end(), 0);
    for (int j = 0; j < m; ++j) {
        std::vector<char> present(m + 1, 0);
        for (int i = 0; i < n; ++i) present[F2.at(i, j)] = 1;
        for (int s = 1; s <= m; ++s) {
            if (present[s] || (j < n && s <= n && G.has(Part::C, j, Part::S, s - 1))) continue;
            mult[j][s - 1] = 1;
        }
    }
    for (int j = 0; j < m; ++j) {
        int deg = 0, sdeg = 0;
        for (int s = 0; s < m; ++s) deg += mult[j][s], sdeg += mult[s][j];
        if (deg != n || sdeg != n) throw LatinError(Errc::MatchingFailed, "column demands are not regular");
    }
    const auto rows = peel_matchings(mult, n);
    st.square = PartialLatinSquare(m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) st.square.set(i, j, F2.at(i, j));
    for (int t = 0; t < n; ++t)
        for (int j = 0; j < m; ++j) st.square.set(n + t, j, Symbol(rows[t][j] + 1));
    return st;
}

PartialLatinSquare reduce_to_square(const TripartiteGraph& G) { return reduction_stages(G).square; }

GadgetReport dense_gadget(const TripartiteGraph& G) {
    const int n = G.part_size(Part::R);
    if (G.part_size(Part::C) != n || G.part_size(Part::S) != n)
        throw LatinError(Errc::PreconditionViolated, "parts must have equal size");
    if (n > 6) throw LatinError(Errc::TooLarge, "gadget order 2n^3 is only built for n <= 6");
    if (!G.uniform()) throw LatinError(Errc::NotUniform, "graph is not uniform");
    const int N = n * n * n, m = 2 * N;

    // pad every part with isolated vertices
    TripartiteGraph H(N, N, N);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (G.has(Part(a), i, Part(b), j)) H.set(Part(a), i, Part(b), j);
    PartialLatinSquare P = reduce_to_square(H);

    std::vector<char> excluded(m + 1, 0);
    for (int s = 1; s <= n; ++s) excluded[s] = 1;
    for (int i = 0; i < n; ++i) {
        std::vector<char> row(m + 1, 0), col(m + 1, 0);
        for (int j = 0; j < m; ++j) row[P.at(i, j)] = 1, col[P.at(j, i)] = 1;
        for (int s = 1; s <= m; ++s)
            if (!row[s] || !col[s]) excluded[s] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) excluded[P.at(i, j)] = 1;
    std::vector<char> in_a1(m + 1, 0), in_a2(m + 1, 0);
    GadgetReport rep;
    for (int s = 1; s <= m; ++s) {
        if (excluded[s]) continue;
        (rep.free_symbols % 2 == 0 ? in_a1 : in_a2)[s] = 1;
        ++rep.free_symbols;
    }
    if (rep.free_symbols + 3 * n * n + n < std::size_t(m))
        throw LatinError(Errc::PreconditionViolated, "free symbol set is smaller than the construction allows");

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const Symbol s = P.at(i, j);
            if (s == kBlank) continue;
            if ((i < n && in_a1[s]) || (j < n && in_a2[s]) || (i >= n && j >= n)) P.set(i, j, kBlank);
        }
    for (int i = 0; i < n; ++i) {
        int rf = 0, cf = 0;
        for (int j = 0; j < m; ++j) rf += P.at(i, j) != kBlank, cf += P.at(j, i) != kBlank;
        rep.max_line_fill = std::max({rep.max_line_fill, rf, cf});
    }
    rep.square = std::move(P);
    return rep;
}

} // namespace latin
