#include "latin/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "latin/error.hpp"

namespace latin {

namespace {

Part next_part(Part p) { return Part((int(p) + 1) % 3); }

std::string show(Vertex v) { return std::string(part_name(v.part)) + std::to_string(v.index + 1); }

} // namespace

TriParams measure_params(const TripartiteGraph& G) {
    TriParams p;
    const int n = G.part_size(Part::R);
    p.n = n;
    if (n == 0) return p;
    int worst = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a != b)
                for (int i = 0; i < G.part_size(Part(a)); ++i)
                    worst = std::max(worst, n - G.degree(Part(a), i, Part(b)));
    p.eps = double(worst) / n;
    p.delta = (3.0 * n * n - double(G.edge_count())) / (3.0 * n * n);
    p.gamma = 3.3 * p.eps;
    return p;
}

Triangle make_triangle(Vertex a, Vertex b, Vertex c) {
    int idx[3] = {-1, -1, -1};
    for (Vertex v : {a, b, c}) {
        if (idx[int(v.part)] >= 0) throw LatinError(Errc::PreconditionViolated, "triangle needs one vertex per part");
        idx[int(v.part)] = v.index;
    }
    return {idx[0], idx[1], idx[2]};
}

VertexLedger::VertexLedger(int n, double gamma) : limit_(gamma * n) {
    for (auto& u : uses_) u.assign(n, 0);
}

int VertexLedger::max_uses() const {
    int m = 0;
    for (const auto& u : uses_)
        for (int v : u) m = std::max(m, v);
    return m;
}

bool check_input(const TripartiteGraph& G, const TriParams& p) {
    const int n = G.part_size(Part::R);
    if (G.part_size(Part::C) != n || G.part_size(Part::S) != n || p.n != n || n == 0) return false;
    if (!(p.eps < 1.0 / 132)) return false;
    const double lim = (1 - 132 * p.eps) * (1 - 132 * p.eps) / 83272;
    if (!(p.delta < lim)) return false;
    if (!G.uniform()) return false;
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < n; ++i)
            if (G.degree(Part(a), i, next_part(Part(a))) < (1 - p.eps) * n) return false;
    return double(G.edge_count()) >= (1 - p.delta) * 3.0 * n * n;
}

bool tri_feasible(const TriParams& p) {
    const double n = p.n;
    double overloaded = 0;
    if (p.delta > 0) {
        if (p.gamma <= 0) return false;
        overloaded = 2 * p.delta * n / p.gamma;
    }
    if (n - overloaded - 12 * p.eps * n - 12 * p.gamma * n < 5) return false;
    const double e = p.eps + 3 * p.gamma;
    if (!(e < 1.0 / 12)) return false;
    return 8 * p.delta < (1 - 12 * e) * (1 - 12 * e) / 10409;
}

TripartiteGraph tripartite_complement(const TripartiteGraph& G) {
    const int n = G.part_size(Part::R);
    if (G.part_size(Part::C) != n || G.part_size(Part::S) != n)
        throw LatinError(Errc::PreconditionViolated, "parts must have equal size");
    TripartiteGraph H = TripartiteGraph::complete(n);
    for (int a = 0; a < 3; ++a) {
        const Part pa = Part(a), pb = next_part(pa);
        for (int i = 0; i < n; ++i) {
            const auto& nb = G.neighbors(pa, i, pb);
            for (auto j = nb.find_first(); j != nb.npos; j = nb.find_next(j)) H.reset(pa, i, pb, int(j));
        }
    }
    return H;
}

std::vector<std::vector<Vertex>> cycle_decompose(const TripartiteGraph& Gbar) {
    const int n = Gbar.part_size(Part::R);
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < n; ++i)
            if (Gbar.degree(Part(a), i, next_part(Part(a))) != Gbar.degree(Part(a), i, next_part(next_part(Part(a)))))
                throw LatinError(Errc::BalanceViolated,
                                 "vertex " + show({Part(a), i}) + " has unequal degrees into the other parts");
    TripartiteGraph g = Gbar;
    std::vector<std::vector<Vertex>> out;
    std::array<std::vector<int>, 3> pos;
    for (auto& p : pos) p.assign(n, -1);
    int start = 0;
    while (true) {
        while (start < n && g.neighbors(Part::R, start, Part::C).none()) ++start;
        if (start == n) break;
        std::vector<Vertex> walk{{Part::R, start}};
        pos[0][start] = 0;
        while (true) {
            const Vertex cur = walk.back();
            const Part np = next_part(cur.part);
            const auto& nb = g.neighbors(cur.part, cur.index, np);
            const auto j = nb.find_first();
            if (j == nb.npos) throw LatinError(Errc::BalanceViolated, "walk stuck at " + show(cur));
            const Vertex nxt{np, int(j)};
            const int seen = pos[int(np)][nxt.index];
            if (seen >= 0) {
                std::vector<Vertex> cyc(walk.begin() + seen, walk.end());
                for (std::size_t k = 0; k < cyc.size(); ++k) {
                    const Vertex u = cyc[k], v = cyc[(k + 1) % cyc.size()];
                    g.reset(u.part, u.index, v.part, v.index);
                }
                auto first_r = std::find_if(cyc.begin(), cyc.end(), [](Vertex v) { return v.part == Part::R; });
                std::rotate(cyc.begin(), first_r, cyc.end());
                out.push_back(std::move(cyc));
                break;
            }
            pos[int(np)][nxt.index] = int(walk.size());
            walk.push_back(nxt);
        }
        for (Vertex v : walk) pos[int(v.part)][v.index] = -1;
    }
    return out;
}

std::vector<std::vector<Vertex>> cycle_decompose_complement(const TripartiteGraph& G) {
    return cycle_decompose(tripartite_complement(G));
}

SevenTrade seven_triangle_trade(TripartiteGraph& pool, const std::array<Vertex, 6>& w, bool closes_hexagon,
                                VertexLedger& ledger) {
    for (int i = 0; i < 6; ++i) {
        if (i < 5 && w[i + 1].part != next_part(w[i].part))
            throw LatinError(Errc::PreconditionViolated, "segment does not follow the part order");
        if (ledger.overloaded(w[i])) throw LatinError(Errc::OverloadedSegment, "segment vertex " + show(w[i]) + " is overloaded");
    }
    // x numbering: x[0] = x1 ... x[5] = x6; each lives in the part shown and must be
    // joined in the pool to the listed w's and earlier x's
    struct Need {
        int x;
        Part part;
        std::vector<int> ws, xs; // 0-based w and x numbers
    };
    const Part p1 = w[0].part, p2 = w[1].part, p3 = w[2].part;
    const std::array<Need, 6> order{{
        {0, p3, {0, 1}, {}},
        {2, p2, {2, 3}, {0}},
        {4, p1, {4, 5}, {0, 2}},
        {1, p1, {1, 2}, {0, 2}},
        {3, p3, {3, 4}, {2, 4}},
        {5, p2, {5, 0}, {4, 0}},
    }};
    const int n = pool.part_size(Part::R);
    std::array<Vertex, 6> x{};
    std::int64_t nodes = 0;
    const std::int64_t node_cap = 200000;

    std::function<bool(int)> pick = [&](int k) {
        if (k == 6) return true;
        if (++nodes > node_cap) return false;
        const Need& nd = order[k];
        boost::dynamic_bitset<> cand(n);
        cand.set();
        for (int wi : nd.ws) cand &= pool.neighbors(w[wi].part, w[wi].index, nd.part);
        for (int xi : nd.xs) cand &= pool.neighbors(x[xi].part, x[xi].index, nd.part);
        for (auto j = cand.find_first(); j != cand.npos; j = cand.find_next(j)) {
            const Vertex v{nd.part, int(j)};
            bool clash = !ledger.can_use(v);
            for (int i = 0; i < 6 && !clash; ++i) clash = w[i] == v;
            for (int i = 0; i < k && !clash; ++i) clash = x[order[i].x] == v;
            if (clash) continue;
            x[nd.x] = v;
            if (pick(k + 1)) return true;
            if (nodes > node_cap) return false;
        }
        return false;
    };
    if (!pick(0))
        throw LatinError(Errc::ChoicesExhausted, "no seven-triangle configuration around " + show(w[0]) + ".." +
                                                     show(w[5]));

    SevenTrade t;
    t.w = w;
    t.x = x;
    const auto& X = x;
    t.removed = {make_triangle(X[0], X[2], X[4]), make_triangle(X[1], X[0], w[1]), make_triangle(X[1], X[2], w[2]),
                 make_triangle(X[3], X[2], w[3]), make_triangle(X[3], X[4], w[4]), make_triangle(X[5], X[4], w[5]),
                 make_triangle(X[5], X[0], w[0])};
    const std::size_t before = pool.edge_count();
    for (const auto& tri : t.removed) pool.remove_triangle(tri);
    t.edges_consumed = int(before - pool.edge_count());
    for (int i = 0; i < 5; ++i) t.formed.push_back(make_triangle(w[i], w[i + 1], X[i]));
    if (closes_hexagon) t.formed.push_back(make_triangle(w[5], w[0], X[5]));
    t.formed.push_back(make_triangle(X[0], X[1], X[2]));
    t.formed.push_back(make_triangle(X[2], X[3], X[4]));
    t.formed.push_back(make_triangle(X[4], X[5], X[0]));
    for (Vertex v : X) ledger.use(v);
    return t;
}

TriReport triangulate_report(const TripartiteGraph& G, Mode mode) { return triangulate_report(G, mode, measure_params(G)); }

namespace {
TriReport run_pipeline(const TripartiteGraph& G, Mode mode, const TriParams& p);
}

TriReport triangulate_report(const TripartiteGraph& G, Mode mode, const TriParams& p) {
    const int n = G.part_size(Part::R);
    if (G.part_size(Part::C) != n || G.part_size(Part::S) != n)
        throw LatinError(Errc::PreconditionViolated, "parts must have equal size");
    if (mode == Mode::Strict && (!check_input(G, p) || !tri_feasible(p)))
        throw LatinError(Errc::Infeasible, "graph or parameters outside the proven regime (eps=" + std::to_string(p.eps) +
                                               " delta=" + std::to_string(p.delta) + ")");
    try {
        return run_pipeline(G, mode, p);
    } catch (const LatinError& e) {
        // tiny graphs leave the trades no room; search for a decomposition directly
        const bool recoverable = e.code() == Errc::ChoicesExhausted || e.code() == Errc::OverloadedSegment ||
                                 e.code() == Errc::TinyOrderFallbackFailed;
        if (mode != Mode::Practical || n >= 16 || !recoverable) throw;
    }
    auto found = find_triangulation(G);
    if (!found) throw LatinError(Errc::TinyOrderFallbackFailed, "exhaustive search found no triangle decomposition");
    TriReport rep;
    rep.params = p;
    rep.triangles = std::move(*found);
    rep.completion.used_fallback = true;
    return rep;
}

namespace {

TriReport run_pipeline(const TripartiteGraph& G, Mode mode, const TriParams& p) {
    const int n = G.part_size(Part::R);
    TriReport rep;
    rep.params = p;
    auto cycles = cycle_decompose_complement(G);
    rep.cycles = cycles.size();
    TripartiteGraph pool = G;
    VertexLedger ledger(n, p.gamma);
    std::vector<Triangle> gbar; // triangulation of the grown complement
    std::vector<Triangle> kept; // triangles taken out of G

    for (auto& cyc : cycles) {
        rep.cycle_edges += cyc.size();
        while (cyc.size() > 3) {
            const int len = int(cyc.size());
            const bool hex = len == 6;
            bool done = false;
            LatinError last(Errc::ChoicesExhausted, "no segment of a cycle admits a trade");
            // the preferred segment starts at offset 0; the rest are fallbacks
            for (int off = 0; off < len && !done; ++off) {
                std::array<Vertex, 6> seg;
                for (int i = 0; i < 6; ++i) seg[i] = cyc[(off + i) % len];
                try {
                    SevenTrade t = seven_triangle_trade(pool, seg, hex, ledger);
                    gbar.insert(gbar.end(), t.formed.begin(), t.formed.end());
                    kept.insert(kept.end(), t.removed.begin(), t.removed.end());
                    if (!hex) {
                        // w1, x6, w6 replace w1..w6; restart one vertex before w1
                        std::vector<Vertex> next;
                        next.reserve(len - 3);
                        next.push_back(seg[0]);
                        next.push_back(t.x[5]);
                        for (int i = 5; i < len; ++i) next.push_back(cyc[(off + i) % len]);
                        std::rotate(next.rbegin(), next.rbegin() + 1, next.rend());
                        cyc = std::move(next);
                    } else {
                        cyc.clear();
                    }
                    rep.trades.push_back(std::move(t));
                    done = true;
                } catch (const LatinError& e) {
                    if (e.code() != Errc::ChoicesExhausted && e.code() != Errc::OverloadedSegment) throw;
                    last = e;
                }
            }
            if (!done) throw last;
        }
        if (cyc.size() == 3) gbar.push_back(make_triangle(cyc[0], cyc[1], cyc[2]));
    }

    const PartialLatinSquare P = triangulation_to_square(gbar, n);
    rep.completion = complete_with_report(P, mode);
    const LatinSquare& L = rep.completion.square;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (P.at(r, c) == kBlank) rep.triangles.push_back({r, c, L.at(r, c) - 1});
    rep.triangles.insert(rep.triangles.end(), kept.begin(), kept.end());
    if (!is_triangle_decomposition(G, rep.triangles))
        throw LatinError(Errc::PreconditionViolated, "assembled triangles do not partition the graph");
    rep.max_vertex_uses = ledger.max_uses();
    return rep;
}

} // namespace

std::vector<Triangle> triangulate(const TripartiteGraph& G, Mode mode) { return triangulate_report(G, mode).triangles; }

} // namespace latin
