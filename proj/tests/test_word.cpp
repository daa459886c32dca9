#include <doctest.h>

#include "cobord2/word.hpp"

using namespace cobord2;

TEST_CASE("word parse and print") {
  const Word w = Word::parse("a1 b1 a1^-1 b1^-1");
  REQUIRE(w.letters.size() == 4);
  CHECK(w.letters[2] == Letter{"a1", -1});
  CHECK(w.str() == "a1 b1 a1^-1 b1^-1");
  CHECK(Word::parse("  dx   gy^-1 ").str() == "dx gy^-1");
  CHECK(Word::parse("").empty());
  CHECK_THROWS(Word::parse("a1^2"));
  CHECK_THROWS(Word::parse("z1"));
}

TEST_CASE("inverse and free reduction") {
  const Word w = Word::parse("a1 b2^-1 dx");
  CHECK(w.inverse().str() == "dx^-1 b2 a1^-1");
  CHECK(free_reduce(Word::parse("a1 b1 b1^-1 a1^-1")).empty());
  CHECK(free_reduce(Word::parse("a1 b1 b1^-1 a2")).str() == "a1 a2");
  CHECK(free_reduce(w.inverse()).inverse() == w);
}

TEST_CASE("canonical circles: rotation, inversion, cyclic reduction") {
  const Word c = canonical_circle(Word::parse("a1 b1 a1^-1 b1^-1"));
  CHECK(canonical_circle(Word::parse("b1 a1^-1 b1^-1 a1")) == c);
  CHECK(canonical_circle(Word::parse("b1 a1 b1^-1 a1^-1")) == c);  // inverse
  CHECK(canonical_circle(Word::parse("a2 a1 b1 a1^-1 b1^-1 a2^-1")) == c);
  CHECK_FALSE(canonical_circle(Word::parse("a1")) == canonical_circle(Word::parse("b1")));
  CHECK(canonical_circle(Word::parse("a1^-1")) == canonical_circle(Word::parse("a1")));
  CHECK(canonical_circle_set({Word::parse("a1"), Word::parse("a1^-1"), Word::parse("b1")}).size() == 2);
}

TEST_CASE("handle curves") {
  HandleCurve hc;
  REQUIRE(as_handle_curve(Word::parse("b3^-1"), hc));
  CHECK(hc.handle == 3);
  CHECK_FALSE(hc.is_a);
  CHECK(as_handle_curve(Word::parse("a2 b2 b2^-1"), hc));
  CHECK(hc.is_a);
  CHECK_FALSE(as_handle_curve(Word::parse("a1 b1"), hc));
  CHECK_FALSE(as_handle_curve(Word::parse("dx"), hc));
}

TEST_CASE("separating words round trip") {
  const Word w = separating_word({2, 1}, {"y", "x"});
  CHECK(w.str() == "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1 dx dy");
  std::vector<int> hs;
  std::vector<std::string> ls;
  REQUIRE(as_separating(w, hs, ls));
  CHECK(hs == std::vector<int>{1, 2});
  CHECK(ls == std::vector<std::string>{"x", "y"});
  CHECK_FALSE(as_separating(Word::parse("a1 b1"), hs, ls));
  CHECK_FALSE(as_separating(Word::parse("dx dx"), hs, ls));
}
