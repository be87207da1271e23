#include <doctest.h>

#include <random>

#include "latin/completion.hpp"
#include "latin/construction.hpp"
#include "latin/io.hpp"
#include "latin/reductions.hpp"
#include "oracles.hpp"

using namespace latin;

namespace {

oracle::Grid as_grid(const SymbolGrid& g) { return oracle::Grid(g.raw().begin(), g.raw().end()); }

oracle::Graph to_oracle(const TripartiteGraph& G) {
    const int n = G.part_size(Part::R);
    oracle::Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.rc[i * n + j] = G.has(Part::R, i, Part::C, j);
            g.rs[i * n + j] = G.has(Part::R, i, Part::S, j);
            g.cs[i * n + j] = G.has(Part::C, i, Part::S, j);
        }
    return g;
}

TripartiteGraph from_edges(int n, std::initializer_list<std::tuple<Part, int, Part, int>> edges) {
    TripartiteGraph G(n, n, n);
    for (auto [a, i, b, j] : edges) G.set(a, i, b, j);
    return G;
}

// r0-c0-s0-r1-c1-s1-r0
TripartiteGraph hexagon(int n) {
    return from_edges(n, {{Part::R, 0, Part::C, 0},
                          {Part::C, 0, Part::S, 0},
                          {Part::S, 0, Part::R, 1},
                          {Part::R, 1, Part::C, 1},
                          {Part::C, 1, Part::S, 1},
                          {Part::S, 1, Part::R, 0}});
}

} // namespace

TEST_CASE("defect of the 4x4 example with two blanks is a hexagon") {
    const PartialLatinSquare L = parse_square("pls 4\n1 2 3 .\n2 1 4 3\n3 4 1 2\n. 3 2 4\n");
    const TripartiteGraph D = defect(L);
    CHECK(D.edge_count() == 6);
    CHECK(D.uniform());
    CHECK(D.has(Part::R, 0, Part::C, 3));
    CHECK(D.has(Part::C, 3, Part::S, 0));
    CHECK(D.has(Part::S, 0, Part::R, 3));
    CHECK(D.has(Part::R, 3, Part::C, 0));
    CHECK(D.has(Part::C, 0, Part::S, 3));
    CHECK(D.has(Part::S, 3, Part::R, 0));
    CHECK(count_triangulations(D) == 0);
    CHECK(oracle::count_triangulations(to_oracle(D)) == 0);

    CHECK(defect(build_even(6).square).edge_count() == 0);
    CHECK(defect(PartialLatinSquare(5)) == TripartiteGraph::complete(5));
}

TEST_CASE("squares and triangle sets correspond") {
    PartialLatinSquare one(4);
    one.set(1, 2, 4);
    const auto t1 = square_to_triangulation(one);
    REQUIRE(t1.size() == 1);
    CHECK(t1[0].r == 1);
    CHECK(t1[0].c == 2);
    CHECK(t1[0].s == 3);

    const LatinSquare cyc = parse_square("pls 3\n1 2 3\n2 3 1\n3 1 2\n");
    const auto t9 = square_to_triangulation(cyc);
    CHECK(t9.size() == 9);
    std::vector<oracle::Tri> ot;
    for (auto t : t9) ot.push_back({t.r, t.c, t.s});
    CHECK(oracle::partitions_edges(to_oracle(TripartiteGraph::complete(3)), ot));
    CHECK(is_triangle_decomposition(TripartiteGraph::complete(3), t9));

    std::mt19937_64 rng(6);
    for (int k = 0; k < 100; ++k) {
        const PartialLatinSquare P = gen_instance(10, 1.0, std::uniform_real_distribution<double>(0, 1)(rng), rng());
        CHECK(triangulation_to_square(square_to_triangulation(P), 10) == P);
    }
    // two triangles sharing the edge (r0, c0)
    CHECK_THROWS_AS(triangulation_to_square({{0, 0, 0}, {0, 0, 1}}, 3), LatinError);
    CHECK_THROWS_AS(triangulation_to_square({{0, 0, 0}, {0, 1, 0}}, 3), LatinError);
    CHECK_THROWS_AS(triangulation_to_square({{3, 0, 0}}, 3), LatinError);
}

TEST_CASE("completions of P match triangulations of its defect") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 150; ++k) {
        const int n = 2 + k % 3;
        const PartialLatinSquare P = gen_instance(n, 1.0, std::uniform_real_distribution<double>(0, 0.7)(rng), rng());
        const std::uint64_t comp = oracle::count_completions(n, as_grid(P));
        CHECK(comp == oracle::count_triangulations(to_oracle(defect(P))));
        CHECK(comp == count_triangulations(defect(P)));
    }
    // an arbitrary non-completable square too
    const PartialLatinSquare bad = parse_square("pls 3\n1 . .\n. 1 .\n. . 2\n");
    CHECK(count_triangulations(defect(bad)) == 0);
}

TEST_CASE("reduction of K333") {
    const TripartiteGraph K = TripartiteGraph::complete(3);
    const ReductionStages st = reduction_stages(K);
    CHECK(is_latin_framework(st.first, K));
    CHECK(is_latin_framework(st.second, K));
    const PartialLatinSquare& P = st.square;
    CHECK(P.order() == 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(P.at(i, j) == kBlank);
    CHECK(P.fill() == 36 - 9);
    CHECK(oracle::count_completions(6, as_grid(P)) == 12);
    CHECK(oracle::count_triangulations(to_oracle(K)) == 12);
    CHECK(count_triangulations(K) == 12);
    CHECK(oracle::all_latin_squares(3).size() == 12);
}

TEST_CASE("reduction of the edgeless graph fills the corner by formula") {
    const TripartiteGraph E(3, 3, 3);
    const PartialLatinSquare P = reduce_to_square(E);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(P.at(i, j) == 1 + 3 + (i + 1 + j + 1) % 3);
    CHECK(oracle::count_completions(6, as_grid(P)) >= 1);
}

TEST_CASE("reduction of a hexagon has no completion") {
    for (int n : {2, 3}) {
        const TripartiteGraph H = hexagon(n);
        CHECK(H.uniform());
        const ReductionStages st = reduction_stages(H);
        CHECK(is_latin_framework(st.first, H));
        CHECK(is_latin_framework(st.second, H));
        CHECK(oracle::count_completions(2 * n, as_grid(st.square)) == 0);
        CHECK(count_triangulations(H) == 0);
    }
}

TEST_CASE("reduction rejects non-uniform graphs") {
    const TripartiteGraph G = from_edges(3, {{Part::R, 0, Part::C, 0}});
    try {
        reduce_to_square(G);
        FAIL("accepted");
    } catch (const LatinError& e) {
        CHECK(e.code() == Errc::NotUniform);
    }
}

TEST_CASE("framework checker catches a filled edge cell") {
    const TripartiteGraph H = hexagon(3);
    LatinFramework F = reduction_stages(H).first;
    CHECK(is_latin_framework(F, H));
    F.set(0, 0, 4); // (r0, c0) is an edge, so the cell must stay empty
    CHECK_FALSE(is_latin_framework(F, H));
}

TEST_CASE("dense gadget on small graphs") {
    const TripartiteGraph E(2, 2, 2);
    const GadgetReport g = dense_gadget(E);
    CHECK(g.square.order() == 16);
    CHECK(g.free_symbols >= std::size_t(16 - 12 - 2));
    CHECK(g.max_line_fill <= 15);
    CHECK(is_partial_latin(g.square));
    // no edges: the gadget completes
    CHECK(is_latin(complete(g.square, Mode::Practical)));

    const GadgetReport k = dense_gadget(TripartiteGraph::complete(2));
    CHECK(k.max_line_fill <= 15);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(k.square.at(i, j) == kBlank);
    for (int i = 2; i < 16; ++i)
        for (int j = 2; j < 16; ++j) CHECK(k.square.at(i, j) == kBlank);

    CHECK_THROWS_AS(dense_gadget(TripartiteGraph(7, 7, 7)), LatinError);
    CHECK_THROWS_AS(dense_gadget(from_edges(2, {{Part::R, 0, Part::C, 0}})), LatinError);
}
