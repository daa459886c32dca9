#include <doctest.h>

#include <stdexcept>

#include "cobord2/surface.hpp"

using namespace cobord2;

TEST_CASE("item text round trip") {
  const Item it = parse_item("[out=c] [h=2,1 in=b,a out=d]");
  REQUIRE(it.size() == 2);
  CHECK(to_string(it) == to_string(parse_item(to_string(it))));
  CHECK(in_labels(it) == std::vector<std::string>{"a", "b"});
  CHECK(max_handle(it) == 2);
  CHECK(find_component(it, "c") >= 0);
  CHECK(find_component(it, "zz") == -1);
  CHECK_THROWS_AS(parse_item("[h=x]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_item("h=1"), std::invalid_argument);
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(parse_item("[out=a]")) == 1);
  CHECK(euler_characteristic(parse_item("[in=a out=b]")) == 0);
  CHECK(euler_characteristic(parse_item("[in=a out=b,c]")) == -1);
  CHECK(euler_characteristic(parse_item("[h=1 in=a]")) == -1);
}

TEST_CASE("gluing items") {
  const Item pants = parse_item("[in=a out=b,c]");
  const Item copants = parse_item("[in=b,c out=d]");
  const auto both = glue(pants, copants, {"b", "c"});
  REQUIRE(both.has_value());
  REQUIRE(both->size() == 1);
  CHECK((*both)[0].genus() == 1);  // two circles between one pair of components
  CHECK(euler_characteristic(*both) == euler_characteristic(pants) + euler_characteristic(copants));

  const auto one = glue(pants, copants, {"b"});
  REQUIRE(one.has_value());
  CHECK((*one)[0].genus() == 0);

  // Closing every boundary is refused.
  CHECK_FALSE(glue(parse_item("[h=1 out=a]"), parse_item("[in=a]"), {"a"}).has_value());

  // Colliding handle ids on the right are renumbered.
  const auto h = glue(parse_item("[h=1 in=x out=a]"), parse_item("[h=1 in=a out=y]"), {"a"});
  REQUIRE(h.has_value());
  CHECK((*h)[0].handles == std::vector<int>{1, 2});
}
