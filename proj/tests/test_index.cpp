#include <doctest.h>

#include "condense/index.hpp"

using namespace condense;

TEST_CASE("parse_index") {
  CHECK(parse_index("0") == 0);
  CHECK(parse_index("1234") == 1234);
  CHECK(to_string(parse_index("1e40")) == "1" + std::string(40, '0'));
  CHECK(parse_index("5e3") == 5000);
  CHECK_THROWS_AS(parse_index(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_index("-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_index("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_index("12x"), std::invalid_argument);
}

TEST_CASE("ceil_to_index is exact past 2^64") {
  CHECK(ceil_to_index(7.3) == 8);
  CHECK(ceil_to_index(8.0) == 8);
  CHECK(ceil_to_index(-0.5) == 0);
  const double big = 0x1p80 + 0x1p28;
  Index expected = Index(1) << 80;
  expected += Index(1) << 28;
  CHECK(ceil_to_index(big) == expected);
  CHECK(to_double(expected) == big);
}

TEST_CASE("cantor pairing") {
  CHECK(cantor_pair(1, 1) == 1);
  CHECK(cantor_pair(1, 2) == 2);
  CHECK(cantor_pair(2, 1) == 3);
  // bijective onto 1..N on the first diagonals
  std::vector<int> seen(56, 0);
  for (int s = 2; s <= 11; ++s)
    for (int n = 1; n < s; ++n) ++seen[cantor_pair(n, s - n).convert_to<std::size_t>()];
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] == 1);
  CHECK_THROWS_AS(cantor_pair(0, 1), std::invalid_argument);
}
