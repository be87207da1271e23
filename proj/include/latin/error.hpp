#pragma once

#include <stdexcept>
#include <string>

namespace latin {

enum class Errc {
    NonSquareInput,
    SymbolOutOfRange,
    DuplicateInRow,
    DuplicateInColumn,
    OrderMismatch,
    OddOrder,
    UnsupportedOrder,
    SameQuadrant,
    RowMismatch,
    MissingSymbolAtCell,
    OutOfBounds,
    ImproperResult,
    IneligibleCell,
    ChoicesExhausted,
    AvoidSetTooLarge,
    Infeasible,
    PreconditionViolated,
    TinyOrderFallbackFailed,
    NotABijection,
    TriesExhausted,
    OverlappingTriangles,
    NotUniform,
    MatchingFailed,
    TooLarge,
    BalanceViolated,
    OverloadedSegment,
    ParseError,
    InfeasibleDensities,
};

const char* errc_name(Errc e);

class LatinError : public std::runtime_error {
public:
    LatinError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// parse errors carry a position; line and column are 1-based
class ParseError : public LatinError {
public:
    ParseError(int line, int column, const std::string& reason)
        : LatinError(Errc::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": " + reason),
          line_(line), column_(column), reason_(reason) {}
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& reason() const { return reason_; }

private:
    int line_, column_;
    std::string reason_;
};

} // namespace latin
