#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "latin/completion.hpp"
#include "latin/reductions.hpp"

namespace latin {

struct TriParams {
    int n = 0;
    double eps = 0;   // largest missing-degree fraction
    double delta = 0; // missing edges over 3n^2
    double gamma = 0; // a vertex is overloaded after gamma*n uses
};

// eps and delta as measured on G, gamma = 3.3 eps
TriParams measure_params(const TripartiteGraph& G);

struct Vertex {
    Part part = Part::R;
    int index = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

Triangle make_triangle(Vertex a, Vertex b, Vertex c);

class VertexLedger {
public:
    VertexLedger() = default;
    VertexLedger(int n, double gamma);
    int uses(Vertex v) const { return uses_[int(v.part)][v.index]; }
    // used at least gamma*n times
    bool overloaded(Vertex v) const { return uses(v) >= limit_; }
    // one more use keeps it at or below gamma*n
    bool can_use(Vertex v) const { return uses(v) + 1 <= limit_; }
    void use(Vertex v) { ++uses_[int(v.part)][v.index]; }
    int max_uses() const;
    double limit() const { return limit_; }

private:
    std::array<std::vector<int>, 3> uses_;
    double limit_ = 0;
};

// balance, degree and edge-count conditions plus the parameter bounds
bool check_input(const TripartiteGraph& G, const TriParams& p);
// (n - 2 delta n / gamma - 12 eps n - 12 gamma n >= 5) together with the completion
// step's needs: eps + 3 gamma < 1/12 and 8 delta < (1 - 12 (eps + 3 gamma))^2 / 10409
bool tri_feasible(const TriParams& p);

// complement within K_{n,n,n}
TripartiteGraph tripartite_complement(const TripartiteGraph& G);

// each cycle is listed in walk order R -> C -> S -> R and starts in R
std::vector<std::vector<Vertex>> cycle_decompose_complement(const TripartiteGraph& G);
// same, on a graph that already is the complement
std::vector<std::vector<Vertex>> cycle_decompose(const TripartiteGraph& Gbar);

struct SevenTrade {
    std::array<Vertex, 6> w, x;
    std::array<Triangle, 7> removed;
    std::vector<Triangle> formed; // 9 when the segment closes a hexagon, else 8
    int edges_consumed = 0;       // always 21
};

// pool holds the edges of G still available; on success the 7 triangles are removed
// from it and the ledger is charged for the six x vertices
SevenTrade seven_triangle_trade(TripartiteGraph& pool, const std::array<Vertex, 6>& segment, bool closes_hexagon,
                                VertexLedger& ledger);

struct TriReport {
    std::vector<Triangle> triangles;
    std::vector<SevenTrade> trades;
    std::size_t cycles = 0;
    std::size_t cycle_edges = 0;
    TriParams params;
    int max_vertex_uses = 0;
    CompletionReport completion;
};

TriReport triangulate_report(const TripartiteGraph& G, Mode mode);
TriReport triangulate_report(const TripartiteGraph& G, Mode mode, const TriParams& p);
std::vector<Triangle> triangulate(const TripartiteGraph& G, Mode mode);

} // namespace latin
