#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "latin/reductions.hpp"
#include "latin/square.hpp"
#include "latin/trade.hpp"

namespace latin {

// "pls <n>" then n lines of n tokens; '.' is blank
void write_square(std::ostream& os, const SymbolGrid& sq);
std::string emit_square(const SymbolGrid& sq);
// validates the partial-Latin property as well; errors carry the file position
SymbolGrid read_square(std::istream& is);
SymbolGrid parse_square(const std::string& text);

// improper entries are signed lists such as 3+2-1
void write_improper(std::ostream& os, const ImproperSquare& sq);
std::string emit_improper(const ImproperSquare& sq);
ImproperSquare read_improper(std::istream& is);
ImproperSquare parse_improper(const std::string& text);

// "tri <n>" then one edge per line: "R<i> C<j>", "C<j> S<k>" or "R<i> S<k>"
void write_graph(std::ostream& os, const TripartiteGraph& g);
std::string emit_graph(const TripartiteGraph& g);
TripartiteGraph read_graph(std::istream& is);
TripartiteGraph parse_graph(const std::string& text);

// one line per triangle: "R<i> C<j> S<k>"
void write_triangles(std::ostream& os, const std::vector<Triangle>& tris);

// one line per trade step: "r c -old +new", 1-based
void write_trade(std::ostream& os, const Trade& t);

// Random partial square with every row, column and symbol used at most ceil(eps n)
// times and floor(delta n^2) cells, cut from a randomly relabelled cyclic square.
PartialLatinSquare gen_instance(int n, double eps, double delta, std::uint64_t seed);
int line_cap(int n, double eps);

} // namespace latin
