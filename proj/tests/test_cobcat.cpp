#include <doctest.h>

#include <filesystem>
#include <stdexcept>

#include "cobord2/cdf.hpp"
#include "cobord2/cobcat.hpp"

using namespace cobord2;
using namespace cobord2::cob;

namespace {

CobSeq seq(const std::vector<std::string>& items, const std::vector<std::string>& steps) {
  CobSeq y;
  for (const auto& i : items) y.source.push_back(parse_item(i));
  for (const auto& s : steps) y.steps.push_back(parse_step(s));
  return y;
}

const std::vector<std::string> kTwo{"[h=1 in=x out=m]", "[h=1 in=m out=y]"};

}  // namespace

TEST_CASE("step text round trip") {
  for (const std::string t : {"cylinder", "zero 1 c", "three 2 c", "remove 1 m", "split 1 c | [in=m out=c] | [h=1 in=c out=y]",
                              "repart 1 c | [out=c] [in=x out=m] | [in=c,m out=y]", "h2 0 x a1; 0 x a2", "h1 0 self x 1",
                              "h1 1 join m c"}) {
    const auto s = parse_step(t);
    CHECK(parse_step(format_step(s)) == s);
  }
  CHECK_THROWS_AS(parse_step("h7 0 x a1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_step("zero"), std::invalid_argument);
}

TEST_CASE("surgery changes the euler characteristic") {
  const auto y = seq(kTwo, {"h2 0 x a1", "h1 0 self x 1", "zero 1 c", "three 1 c"});
  const auto ss = surfaces(y);
  REQUIRE(ss.size() == 5);
  CHECK(euler_characteristic(ss[1]) == euler_characteristic(ss[0]) + 2);
  CHECK(euler_characteristic(ss[2]) == euler_characteristic(ss[1]) - 2);
  // a 0-handle adds a cap pair, glued: a sphere
  CHECK(euler_characteristic(ss[3]) == euler_characteristic(ss[2]) + 2);
  CHECK(euler_characteristic(ss[4]) == euler_characteristic(ss[3]) - 2);
  for (const auto& s : ss) CHECK(end_labels(s) == end_labels(ss[0]));
  CHECK(validate(y).empty());
}

TEST_CASE("circle insertion and removal keep the glued surface") {
  const auto y = seq(kTwo, {"split 1 c | [in=m out=c] | [h=1 in=c out=y]", "remove 2 c", "remove 1 m"});
  const auto ss = surfaces(y);
  CHECK(ss[1].size() == 3);
  CHECK(ss[3].size() == 1);
  for (const auto& s : ss) CHECK(euler_characteristic(s) == euler_characteristic(ss[0]));
  CHECK(ss[3][0][0].genus() == 2);
}

TEST_CASE("invalid steps are located") {
  // Closing off the last boundary of a component is refused.
  CHECK_THROWS_AS(surfaces(seq({"[in=x out=y]"}, {"h2 0 x a1"})), InvalidStep);
  // Anchor absent.
  CHECK_THROWS_AS(surfaces(seq(kTwo, {"h2 0 q a1"})), InvalidStep);
  // Handle id collides.
  CHECK_THROWS_AS(surfaces(seq(kTwo, {"h1 0 self x 1"})), InvalidStep);
  try {
    surfaces(seq(kTwo, {"cylinder", "h2 0 x a9"}));
    FAIL("expected InvalidStep");
  } catch (const InvalidStep& e) {
    CHECK(std::string(e.what()).find('1') != std::string::npos);
  }
  CHECK_FALSE(check_surface({parse_item("[h=1]")}).empty());
  CHECK_FALSE(check_surface({parse_item("[in=x out=m]"), parse_item("[in=n out=y]")}).empty());
}

TEST_CASE("concatenation") {
  const auto a = seq(kTwo, {"h2 0 x a1"});
  CobSeq b{target(a), {parse_step("h2 1 y a1")}};
  const auto c = concat(a, b);
  CHECK(c.steps.size() == 2);
  CHECK(target(c) == target(b));
  CHECK_THROWS(concat(b, a));
}

TEST_CASE("standard decomposition") {
  Component closed;
  closed.handles = {1, 2};
  const auto s = standard_decomposition(closed, "z");
  REQUIRE(s.size() == 2);
  CHECK(check_surface(s).empty());
  CHECK(s[0][0].genus() + s[1][0].genus() == 2);
  CHECK(euler_characteristic(s) == -2 - 0);  // each piece keeps one boundary: chi = 2 - 2g - 2

  const auto open = parse_item("[h=1 in=x]")[0];
  CHECK(standard_decomposition(open, "z").size() == 1);
}

TEST_CASE("every move is undone by its inverse") {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"h2 0 x a1"}, "cylinder+ 1"},
      {{"h2 0 x a1", "cylinder"}, "cylinder- 1"},
      {{"h2 0 x a1"}, "circles+ 0 split 1 c | [in=m out=c] | [h=1 in=c out=y]"},
      {{"h2 0 x a1", "h2 1 y a1"}, "imbricate 0"},
      {{"h2 0 x a1; 1 y a1"}, "unimbricate 0 1"},
      {{"h2 0 x a1", "h2 1 y a1"}, "switch 0"},
      {{"h2 0 x a1", "cylinder"}, "create01 1 1 c m"},
      {{"h2 0 x a1", "cylinder"}, "create23 1 1 c y"},
      {{"h2 0 x a1", "cylinder"}, "create12 1 1 y 5"},
      {{"zero 1 c", "h1 1 join m c", "remove 1 c"}, "cancel01 0"},
      {{"h1 1 self y 5", "h2 1 y b5"}, "cancel12 0"},
      {{"split 1 c | [in=m out=c] | [h=1 in=c out=y]"}, "relabel c e"},
  };
  for (const auto& [steps, m] : cases) {
    CAPTURE(m);
    const auto y = seq(kTwo, steps);
    REQUIRE(validate(y).empty());
    const auto z = apply_move(y, m);
    CHECK(validate(z).empty());
    if (m.rfind("relabel", 0) == 0)
      CHECK(end_labels(target(z)) == end_labels(target(y)));  // interior circle renamed
    else
      CHECK(target(z) == target(y));
    CHECK(apply_move(z, inverse_move(y, m)) == y);
  }
}

TEST_CASE("cancellation needs the dual curve") {
  const auto y = seq(kTwo, {"h1 1 self y 5", "h2 1 y a5"});
  CHECK_THROWS(apply_move(y, "cancel12 0"));
  const auto ok = seq(kTwo, {"h1 1 self y 5", "h2 1 y b5"});
  const auto z = apply_move(ok, "cancel12 0");
  CHECK(z.steps.size() == 1);
  CHECK(z.steps[0].kind == CobStep::Kind::Cylinder);
}

TEST_CASE("relabel leaves the source alone") {
  const auto y = seq(kTwo, {"split 1 c | [in=m out=c] | [h=1 in=c out=y]"});
  CHECK_THROWS(apply_move(y, "relabel m q"));
  const auto z = apply_move(y, "relabel c q");
  CHECK(surfaces(z)[1][2] == parse_item("[h=1 in=q out=y]"));
  CHECK(apply_move(z, "relabel q c") == y);
}

TEST_CASE("catalog files apply their move chains") {
  int n = 0;
  for (const auto& e : std::filesystem::directory_iterator(COBORD2_DATA_DIR "/cerf")) {
    const auto f = cdf::load(e.path().string());
    CAPTURE(e.path().string());
    CHECK(validate(f.seq).empty());
    auto y = f.seq;
    for (const auto& m : f.moves) {
      const auto z = apply_move(y, m);
      CHECK(apply_move(z, inverse_move(y, m)) == y);
      y = z;
    }
    if (!f.moves.empty()) CHECK(y == f.target_seq());
    ++n;
  }
  CHECK(n >= 22);
}
