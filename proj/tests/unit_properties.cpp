#include <doctest.h>

#include "properties.hpp"

namespace {
void expect(const props::Result& r, long min_cases) {
    INFO(r.name, ": ", r.first_failure);
    CHECK(r.cases >= min_cases);
    CHECK(r.failures == 0);
}
} // namespace

TEST_CASE("property: trade involution") { expect(props::trade_involution(101, 1000), 1000); }
TEST_CASE("property: proper trades keep squares Latin") { expect(props::proper_closure(102, 1000), 1000); }
TEST_CASE("property: agreeing cells are never touched") { expect(props::agreement_untouched(103, 1000), 1000); }
TEST_CASE("property: permutation triples form a group action") { expect(props::permutation_action(104, 1000), 1000); }
TEST_CASE("property: text formats round trip") { expect(props::serialization_roundtrip(105, 1000), 1000); }
