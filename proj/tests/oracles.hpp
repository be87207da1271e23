#pragma once

// Reference implementations used to check the library. They work on plain
// row-major int vectors (0 = blank) and share no code with src/.

#include <cstdint>
#include <vector>

namespace oracle {

using Grid = std::vector<int>;

bool is_latin(int n, const Grid& g);
bool is_partial(int n, const Grid& g);

// every Latin square of order n, in lexicographic order of the row-major cells
std::vector<Grid> all_latin_squares(int n);

// for each cell, the number of 2x2 subsquares through it (scan of all rectangles)
std::vector<int> intercalates_per_cell(int n, const Grid& g);

// completions by plain row-major search; stops at limit
std::uint64_t count_completions(int n, const Grid& g, std::uint64_t limit = UINT64_MAX);

// value of the even block construction at 1-based (i, j): A B / B^T A^T with
// A(i,j) = ((j - i) mod k) + 1 and B = A + k
int block_formula(int n, int i, int j);

// tripartite graph as three 0/1 incidence matrices
struct Graph {
    int n = 0;
    std::vector<char> rc, rs, cs; // n*n each, index a*n+b
    explicit Graph(int n_ = 0) : n(n_), rc(n_ * n_, 0), rs(n_ * n_, 0), cs(n_ * n_, 0) {}
    std::size_t edges() const;
    bool uniform() const;
};

std::uint64_t count_triangulations(const Graph& g, std::uint64_t limit = UINT64_MAX);

// true iff the triangles (r, c, s) use every edge of g exactly once
struct Tri {
    int r, c, s;
};
bool partitions_edges(const Graph& g, const std::vector<Tri>& tris);

// every uniform tripartite graph with parts of size n
std::vector<Graph> all_uniform_graphs(int n);

} // namespace oracle
