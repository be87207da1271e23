#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "latin/square.hpp"

namespace latin {

enum class Part : int { R = 0, C = 1, S = 2 };
const char* part_name(Part p);

// row r, column c, symbol s, all 0-based
struct Triangle {
    int r = 0, c = 0, s = 0;
    friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

class TripartiteGraph {
public:
    TripartiteGraph() = default;
    TripartiteGraph(int nr, int nc, int ns);
    static TripartiteGraph complete(int n);

    int part_size(Part p) const { return size_[int(p)]; }
    bool has(Part a, int i, Part b, int j) const { return adj_[int(a)][int(b)][i][j]; }
    void set(Part a, int i, Part b, int j, bool on = true);
    void reset(Part a, int i, Part b, int j) { set(a, i, b, j, false); }
    // neighbours of vertex i of part a inside part b
    const boost::dynamic_bitset<>& neighbors(Part a, int i, Part b) const { return adj_[int(a)][int(b)][i]; }
    int degree(Part a, int i, Part b) const { return int(neighbors(a, i, b).count()); }

    std::size_t edge_count(Part a, Part b) const;
    std::size_t edge_count() const;
    // every vertex has the same degree into both other parts
    bool uniform() const;

    bool has_triangle(const Triangle& t) const;
    void add_triangle(const Triangle& t);
    void remove_triangle(const Triangle& t); // throws OverlappingTriangles if an edge is missing

    friend bool operator==(const TripartiteGraph& a, const TripartiteGraph& b) {
        return a.size_ == b.size_ && a.adj_ == b.adj_;
    }

private:
    std::array<int, 3> size_{0, 0, 0};
    // adj_[a][b][i] is a bitset over part b; the diagonal a == b is unused
    std::array<std::array<std::vector<boost::dynamic_bitset<>>, 3>, 3> adj_;
};

// edges not covered by a filled cell
TripartiteGraph defect(const PartialLatinSquare& P);

std::vector<Triangle> square_to_triangulation(const PartialLatinSquare& P);
PartialLatinSquare triangulation_to_square(const std::vector<Triangle>& T, int n);
// T partitions the edge set of G exactly
bool is_triangle_decomposition(const TripartiteGraph& G, const std::vector<Triangle>& T);

// exhaustive; stops at `limit`
std::uint64_t count_triangulations(const TripartiteGraph& G, std::uint64_t limit = UINT64_MAX);
std::optional<std::vector<Triangle>> find_triangulation(const TripartiteGraph& G);

struct LatinFramework {
    int rows = 0, cols = 0, syms = 0;
    std::vector<Symbol> cells; // row-major, kBlank for empty
    Symbol at(int r, int c) const { return cells[std::size_t(r) * cols + c]; }
    void set(int r, int c, Symbol s) { cells[std::size_t(r) * cols + c] = s; }
};

// checks the framework conditions against G, whose parts index the first rows/cols/syms
bool is_latin_framework(const LatinFramework& F, const TripartiteGraph& G);

// stage outputs are kept so tests can check the framework invariants per stage
struct ReductionStages {
    LatinFramework first;  // n x n over 2n symbols
    LatinFramework second; // n x 2n
    PartialLatinSquare square;
};

ReductionStages reduction_stages(const TripartiteGraph& G);
PartialLatinSquare reduce_to_square(const TripartiteGraph& G);

struct GadgetReport {
    PartialLatinSquare square; // order 2n^3
    std::size_t free_symbols = 0; // |A|
    int max_line_fill = 0;        // most filled cells in any of the first n rows/columns
};

// n <= 6
GadgetReport dense_gadget(const TripartiteGraph& G);

} // namespace latin
