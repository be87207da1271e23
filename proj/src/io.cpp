#include "latin/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>
#include <vector>

#include "latin/error.hpp"

namespace latin {

namespace {

struct Token {
    std::string_view text;
    int col; // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        out.push_back({line.substr(i, j - i), int(i) + 1});
        i = j;
    }
    return out;
}

bool parse_int(std::string_view s, long& v) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
}

// reads lines, skipping blank ones and '#' comments, and remembers line numbers
class LineReader {
public:
    explicit LineReader(std::istream& is) : is_(is) {}
    bool next(std::vector<Token>& toks) {
        while (std::getline(is_, buf_)) {
            ++line_;
            toks = tokenize(buf_);
            if (toks.empty() || toks[0].text[0] == '#') continue;
            return true;
        }
        ++line_;
        return false;
    }
    int line() const { return line_; }
    int end_col() const { return int(buf_.size()) + 1; }

private:
    std::istream& is_;
    std::string buf_;
    int line_ = 0;
};

int read_header(LineReader& in, std::string_view word) {
    std::vector<Token> t;
    if (!in.next(t)) throw ParseError(in.line(), 1, "missing '" + std::string(word) + " <n>' header");
    if (t[0].text != word) throw ParseError(in.line(), t[0].col, "expected '" + std::string(word) + "'");
    if (t.size() < 2) throw ParseError(in.line(), in.end_col(), "missing order");
    long n = 0;
    if (!parse_int(t[1].text, n) || n < 1 || n > kMaxOrder)
        throw ParseError(in.line(), t[1].col, "order must be an integer in 1.." + std::to_string(kMaxOrder));
    if (t.size() > 2) throw ParseError(in.line(), t[2].col, "unexpected token after the order");
    return int(n);
}

void put_uint(std::string& out, unsigned v) {
    char b[16];
    auto [p, ec] = std::to_chars(b, b + sizeof b, v);
    out.append(b, p);
}

// rows of tokens, checked for count; the callback parses one token into cell (r, c)
template <class F>
void read_body(LineReader& in, int n, F&& cell) {
    std::vector<Token> t;
    for (int r = 0; r < n; ++r) {
        if (!in.next(t)) throw ParseError(in.line(), 1, "expected " + std::to_string(n) + " rows, found " + std::to_string(r));
        if (int(t.size()) < n) throw ParseError(in.line(), in.end_col(), "row has " + std::to_string(t.size()) + " entries, expected " + std::to_string(n));
        if (int(t.size()) > n) throw ParseError(in.line(), t[n].col, "row has more than " + std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c) cell(r, c, t[c], in.line());
    }
    if (in.next(t)) throw ParseError(in.line(), t[0].col, "unexpected content after the last row");
}

} // namespace

void write_square(std::ostream& os, const SymbolGrid& sq) {
    const int n = sq.order();
    os << "pls " << n << '\n';
    std::string line;
    for (int r = 0; r < n; ++r) {
        line.clear();
        for (int c = 0; c < n; ++c) {
            if (c) line.push_back(' ');
            Symbol s = sq.at(r, c);
            if (s == kBlank) line.push_back('.');
            else put_uint(line, s);
        }
        line.push_back('\n');
        os << line;
    }
}

std::string emit_square(const SymbolGrid& sq) {
    std::ostringstream os;
    write_square(os, sq);
    return os.str();
}

SymbolGrid read_square(std::istream& is) {
    LineReader in(is);
    const int n = read_header(in, "pls");
    SymbolGrid g(n);
    std::vector<std::uint64_t> rows(std::size_t(n) * ((n + 64) / 64), 0), cols(rows.size(), 0);
    const std::size_t words = (std::size_t(n) + 64) / 64;
    read_body(in, n, [&](int r, int c, const Token& tok, int line) {
        if (tok.text == ".") return;
        long v = 0;
        if (!parse_int(tok.text, v)) throw ParseError(line, tok.col, "expected a symbol or '.'");
        if (v < 1 || v > n) throw ParseError(line, tok.col, "symbol " + std::string(tok.text) + " outside 1.." + std::to_string(n));
        const std::uint64_t bit = std::uint64_t(1) << (v & 63);
        std::uint64_t& rw = rows[std::size_t(r) * words + (v >> 6)];
        std::uint64_t& cw = cols[std::size_t(c) * words + (v >> 6)];
        if (rw & bit) throw ParseError(line, tok.col, "symbol " + std::to_string(v) + " repeats in row " + std::to_string(r + 1));
        if (cw & bit) throw ParseError(line, tok.col, "symbol " + std::to_string(v) + " repeats in column " + std::to_string(c + 1));
        rw |= bit;
        cw |= bit;
        g.set(r, c, Symbol(v));
    });
    return g;
}

SymbolGrid parse_square(const std::string& text) {
    std::istringstream is(text);
    return read_square(is);
}

void write_improper(std::ostream& os, const ImproperSquare& sq) {
    const int n = sq.order();
    os << "pls " << n << '\n';
    std::string line;
    for (int r = 0; r < n; ++r) {
        line.clear();
        for (int c = 0; c < n; ++c) {
            if (c) line.push_back(' ');
            const auto& cell = sq.at(r, c);
            if (cell.empty()) {
                line.push_back('.');
                continue;
            }
            bool first = true;
            for (const auto& t : cell)
                for (int k = 0; k < std::abs(t.coeff); ++k) {
                    if (t.coeff < 0) line.push_back('-');
                    else if (!first) line.push_back('+');
                    put_uint(line, t.sym);
                    first = false;
                }
        }
        line.push_back('\n');
        os << line;
    }
}

std::string emit_improper(const ImproperSquare& sq) {
    std::ostringstream os;
    write_improper(os, sq);
    return os.str();
}

ImproperSquare read_improper(std::istream& is) {
    LineReader in(is);
    const int n = read_header(in, "pls");
    ImproperSquare sq(n);
    read_body(in, n, [&](int r, int c, const Token& tok, int line) {
        if (tok.text == ".") return;
        std::string_view s = tok.text;
        std::size_t i = 0;
        while (i < s.size()) {
            int sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                sign = s[i] == '-' ? -1 : 1;
                if (s[i] == '+' && i == 0) throw ParseError(line, tok.col, "leading '+'");
                ++i;
            }
            std::size_t j = i;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
            long v = 0;
            if (!parse_int(s.substr(i, j - i), v))
                throw ParseError(line, tok.col + int(i), "expected a symbol");
            if (v < 1 || v > n) throw ParseError(line, tok.col + int(i), "symbol outside 1.." + std::to_string(n));
            sq.add(r, c, Symbol(v), sign);
            i = j;
            if (i < s.size() && s[i] != '+' && s[i] != '-')
                throw ParseError(line, tok.col + int(i), "expected '+' or '-'");
            if (i + 1 == s.size()) throw ParseError(line, tok.col + int(i), "dangling sign");
        }
    });
    return sq;
}

ImproperSquare parse_improper(const std::string& text) {
    std::istringstream is(text);
    return read_improper(is);
}

void write_graph(std::ostream& os, const TripartiteGraph& g) {
    const int n = g.part_size(Part::R);
    if (g.part_size(Part::C) != n || g.part_size(Part::S) != n)
        throw LatinError(Errc::PreconditionViolated, "graph files hold equal parts");
    os << "tri " << n << '\n';
    const std::pair<Part, Part> kinds[3] = {{Part::R, Part::C}, {Part::C, Part::S}, {Part::R, Part::S}};
    std::string line;
    for (auto [a, b] : kinds)
        for (int i = 0; i < n; ++i) {
            const auto& nb = g.neighbors(a, i, b);
            for (auto j = nb.find_first(); j != nb.npos; j = nb.find_next(j)) {
                line.clear();
                line += part_name(a);
                put_uint(line, unsigned(i + 1));
                line.push_back(' ');
                line += part_name(b);
                put_uint(line, unsigned(j + 1));
                line.push_back('\n');
                os << line;
            }
        }
}

std::string emit_graph(const TripartiteGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

TripartiteGraph read_graph(std::istream& is) {
    LineReader in(is);
    const int n = read_header(in, "tri");
    TripartiteGraph g(n, n, n);
    std::vector<Token> t;
    auto vertex = [&](const Token& tok) {
        Part p;
        switch (tok.text[0]) {
        case 'R': p = Part::R; break;
        case 'C': p = Part::C; break;
        case 'S': p = Part::S; break;
        default: throw ParseError(in.line(), tok.col, "vertex must start with R, C or S");
        }
        long v = 0;
        if (!parse_int(tok.text.substr(1), v)) throw ParseError(in.line(), tok.col + 1, "expected a vertex number");
        if (v < 1 || v > n) throw ParseError(in.line(), tok.col + 1, "vertex outside 1.." + std::to_string(n));
        return std::pair<Part, int>{p, int(v - 1)};
    };
    while (in.next(t)) {
        if (t.size() != 2) throw ParseError(in.line(), t.size() < 2 ? in.end_col() : t[2].col, "an edge line has two vertices");
        auto [a, i] = vertex(t[0]);
        auto [b, j] = vertex(t[1]);
        if (a == b) throw ParseError(in.line(), t[1].col, "edge endpoints lie in the same part");
        if (g.has(a, i, b, j)) throw ParseError(in.line(), t[0].col, "duplicate edge");
        g.set(a, i, b, j);
    }
    return g;
}

TripartiteGraph parse_graph(const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
}

void write_triangles(std::ostream& os, const std::vector<Triangle>& tris) {
    for (const auto& t : tris) os << 'R' << t.r + 1 << " C" << t.c + 1 << " S" << t.s + 1 << '\n';
}

void write_trade(std::ostream& os, const Trade& t) {
    for (const auto& s : t.steps) {
        os << s.cell.row + 1 << ' ' << s.cell.col + 1;
        for (Symbol v : s.removed) os << " -" << v;
        for (Symbol v : s.added) os << " +" << v;
        os << '\n';
    }
}

int line_cap(int n, double eps) {
    if (eps <= 0) return 0;
    // tolerate rounding noise when eps n is meant to be an integer
    return int(std::ceil(eps * n - 1e-9));
}

PartialLatinSquare gen_instance(int n, double eps, double delta, std::uint64_t seed) {
    if (n < 1 || n > kMaxOrder) throw LatinError(Errc::UnsupportedOrder, "order must be in 1.." + std::to_string(kMaxOrder));
    if (eps < 0 || delta < 0) throw LatinError(Errc::InfeasibleDensities, "densities must be non-negative");
    const int cap = std::min(line_cap(n, eps), n);
    const std::size_t fill = std::size_t(std::floor(delta * double(n) * n));
    if (fill > std::size_t(n) * cap)
        throw LatinError(Errc::InfeasibleDensities, "fill " + std::to_string(fill) + " exceeds n * ceil(eps n) = " +
                                                        std::to_string(std::size_t(n) * cap));
    std::mt19937_64 rng(seed);
    std::vector<int> pr(n), pc(n), ps(n);
    std::iota(pr.begin(), pr.end(), 0);
    pc = ps = pr;
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    std::shuffle(ps.begin(), ps.end(), rng);
    auto scratch = [&](int r, int c) { return Symbol(ps[(pr[r] + pc[c]) % n] + 1); };

    PartialLatinSquare P(n);
    std::vector<int> ur(n, 0), uc(n, 0), us(n + 1, 0);
    std::size_t placed = 0;
    auto try_place = [&](int r, int c) {
        if (P.at(r, c) != kBlank) return;
        const Symbol s = scratch(r, c);
        if (ur[r] >= cap || uc[c] >= cap || us[s] >= cap) return;
        ++ur[r], ++uc[c], ++us[s];
        P.set(r, c, s);
        ++placed;
    };
    std::uniform_int_distribution<int> pick(0, n - 1);
    const std::uint64_t budget = 200 * std::uint64_t(fill) + 1000000;
    for (std::uint64_t a = 0; a < budget && placed < fill; ++a) try_place(pick(rng), pick(rng));
    // nearly saturated caps: finish with a sweep
    for (int r = 0; r < n && placed < fill; ++r)
        for (int c = 0; c < n && placed < fill; ++c) try_place(pr[r], (c + r) % n);
    if (placed < fill)
        throw LatinError(Errc::InfeasibleDensities, "could only place " + std::to_string(placed) + " of " +
                                                        std::to_string(fill) + " cells under the line cap");
    return P;
}

} // namespace latin
