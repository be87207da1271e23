#pragma once

// Randomized property suites shared by the unit tests and the acceptance run.

#include <cstdint>
#include <string>

namespace props {

struct Result {
    std::string name;
    long cases = 0;
    long failures = 0;
    std::string first_failure;
    void fail(const std::string& why) {
        if (failures++ == 0) first_failure = why;
    }
};

// apply(apply(S, t), reverse(t)) == S for 2x2, improper and composite trades
Result trade_involution(std::uint64_t seed, long cases);
// proper trades (2x2 and engine composites) keep a Latin square Latin
Result proper_closure(std::uint64_t seed, long cases);
// no applied trade touches a cell where P and L already agreed
Result agreement_untouched(std::uint64_t seed, long cases);
// triple actions compose, invert, and keep the density profile
Result permutation_action(std::uint64_t seed, long cases);
// emit then parse gives back the same square, improper square or graph
Result serialization_roundtrip(std::uint64_t seed, long cases);

} // namespace props
