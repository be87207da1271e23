#include <doctest.h>

#include <sstream>

#include "latin/construction.hpp"
#include "latin/io.hpp"

using namespace latin;

namespace {

// line and column of the parse error, or {0, 0} when the text parses
std::pair<int, int> error_at(const std::string& text, bool graph = false, bool improper = false) {
    try {
        if (graph)
            parse_graph(text);
        else if (improper)
            parse_improper(text);
        else
            parse_square(text);
    } catch (const ParseError& e) {
        return {e.line(), e.column()};
    }
    return {0, 0};
}

} // namespace

TEST_CASE("square text format") {
    PartialLatinSquare P(3);
    P.set(0, 0, 1);
    P.set(0, 1, 2);
    P.set(1, 1, 3);
    P.set(2, 2, 2);
    CHECK(emit_square(P) == "pls 3\n1 2 .\n. 3 .\n. . 2\n");
    CHECK(parse_square("pls 3\n1 2 .\n. 3 .\n. . 2\n") == P);
    // comments, blank lines and extra spaces are fine
    CHECK(parse_square("# example\npls 3\n\n1  2 .\n. 3 .   \n. . 2") == P);
}

TEST_CASE("square parse errors carry positions") {
    CHECK(error_at("") == std::pair{1, 1});
    CHECK(error_at("sq 3\n") == std::pair{1, 1});
    CHECK(error_at("pls x\n").first == 1);
    CHECK(error_at("pls 2\n1 2\n").first == 3);
    CHECK(error_at("pls 2\n1 2\n2\n") == std::pair{3, 2});
    CHECK(error_at("pls 2\n1 2\n2 1 1\n") == std::pair{3, 5});
    CHECK(error_at("pls 2\n1 3\n2 1\n") == std::pair{2, 3});
    CHECK(error_at("pls 2\n1 1\n2 .\n") == std::pair{2, 3});
    CHECK(error_at("pls 2\n1 2\n1 .\n") == std::pair{3, 1});
    CHECK(error_at("pls 2\n1 y\n. .\n") == std::pair{2, 3});
    CHECK(error_at("pls 2\n1 2\n2 1\n7\n") == std::pair{4, 1});
}

TEST_CASE("improper tokens") {
    const ImproperSquare S = parse_improper("pls 4\n1 2 3 4\n4 1 1 3+2-1\n3 4 2 1\n2 3 4 1\n");
    CHECK(S.at(1, 3).size() == 3);
    CHECK(S.coeff(1, 3, 3) == 1);
    CHECK(S.coeff(1, 3, 2) == 1);
    CHECK(S.coeff(1, 3, 1) == -1);
    CHECK(parse_improper(emit_improper(S)) == S);
    CHECK(emit_improper(S).find("3+2-1") != std::string::npos);
    CHECK(error_at("pls 2\n1+ 2\n2 1\n", false, true).first == 2);
    CHECK(error_at("pls 2\n1 2+3\n2 1\n", false, true) == std::pair{2, 5});
    CHECK(error_at("pls 2\n+1 2\n2 1\n", false, true).first == 2);
}

TEST_CASE("graph text format") {
    TripartiteGraph G(3, 3, 3);
    G.set(Part::R, 0, Part::C, 2);
    G.set(Part::C, 1, Part::S, 0);
    G.set(Part::R, 2, Part::S, 2);
    const std::string text = emit_graph(G);
    CHECK(text.rfind("tri 3\n", 0) == 0);
    CHECK(parse_graph(text) == G);
    // either endpoint order
    CHECK(parse_graph("tri 3\nC3 R1\nS1 C2\nS3 R3\n") == G);
    CHECK(error_at("tri 3\nR1 R2\n", true).first == 2);
    CHECK(error_at("tri 3\nR1 C2\nC2 R1\n", true).first == 3);
    CHECK(error_at("tri 3\nR4 C1\n", true) == std::pair{2, 2});
    CHECK(error_at("tri 3\nX1 C1\n", true) == std::pair{2, 1});
    CHECK(error_at("tri 3\nR1\n", true).first == 2);
}

TEST_CASE("triangle and trade output") {
    std::ostringstream os;
    write_triangles(os, {{0, 1, 2}});
    CHECK(os.str() == "R1 C2 S3\n");
    std::ostringstream ts;
    const LatinSquare L = build_even(4).square;
    write_trade(ts, intercalate_trade(L, 0, 2, 0, 2));
    CHECK(ts.str().rfind("1 1 -1 +", 0) == 0);
}

TEST_CASE("instance generator") {
    CHECK(gen_instance(50, 0.2, 0, 1).fill() == 0);
    CHECK(gen_instance(200, 0.05, 0.01, 77) == gen_instance(200, 0.05, 0.01, 77));
    CHECK_FALSE(gen_instance(200, 0.05, 0.01, 77) == gen_instance(200, 0.05, 0.01, 78));
    const PartialLatinSquare P = gen_instance(8192, 1e-4, 9e-5, 1);
    const DensityProfile d = density(P);
    CHECK(d.fill == std::size_t(9e-5 * 8192.0 * 8192.0));
    CHECK(d.max_line <= line_cap(8192, 1e-4));
    CHECK(line_cap(8192, 1e-4) == 1);
    CHECK(is_partial_latin(P));
    try {
        gen_instance(100, 0.01, 0.5, 1);
        FAIL("accepted");
    } catch (const LatinError& e) {
        CHECK(e.code() == Errc::InfeasibleDensities);
    }
}
