#include <doctest.h>

#include <filesystem>

#include "cobord2/cdf.hpp"
#include "cobord2/functor.hpp"

using namespace cobord2;
using namespace cobord2::fun;

namespace {

cob::CobSeq seq(const std::vector<std::string>& items, const std::vector<std::string>& steps) {
  cob::CobSeq y;
  for (const auto& i : items) y.source.push_back(parse_item(i));
  for (const auto& s : steps) y.steps.push_back(cob::parse_step(s));
  return y;
}

const std::vector<std::string> kTwo{"[h=1 in=x out=m]", "[h=1 in=m out=y]"};

InvarianceConfig small() {
  InvarianceConfig c;
  c.samples = 10;
  c.seed = 3;
  return c;
}

}  // namespace

TEST_CASE("charts") {
  const auto c = parse_item("[h=4,2 in=q,b out=z]")[0];
  const auto ch = chart_of(c, "z", "b");
  CHECK(ch.g == 2);
  CHECK(ch.k == 3);
  CHECK(ch.boundary == std::vector<std::string>{"z", "q", "b"});
  CHECK(ch.handles == std::vector<int>{2, 4});
  CHECK(to_chart_word(Word::parse("a4 b2 dq"), ch) == Word::parse("a2 b1 d2"));
  CHECK_THROWS(to_chart_word(Word::parse("a3"), ch));
  CHECK_THROWS(to_chart_word(Word::parse("dw"), ch));
}

TEST_CASE("objects and 1-morphisms") {
  const auto g = eval0({{"y", false}, {"x", true}});
  REQUIRE(g.circles.size() == 2);
  CHECK(g.circles[0].label == "x");
  CHECK(eval0({}).circles.empty());

  ham::HamSym h;
  const auto s = seq(kTwo, {}).source;
  const auto m = eval1(s, h);
  CHECK(m.items.size() == 2);
  CHECK(eval1(s, h) == m);
}

TEST_CASE("cylinders evaluate to identities") {
  ham::HamSym h;
  const auto y = seq(kTwo, {"cylinder", "cylinder"});
  const auto d = eval2(y, h);
  CHECK(d.rows.empty());
  CHECK(d.source == eval1(y.source, h));
  CHECK(d.target == d.source);
}

TEST_CASE("evaluation respects concatenation") {
  ham::HamSym h;
  const auto a = seq(kTwo, {"h2 0 x a1"});
  const cob::CobSeq b{cob::target(a), {cob::parse_step("h1 1 self y 5")}};
  const auto ab = cob::concat(a, b);
  const auto lhs = eval2(ab, h);
  const auto rhs = p2c::concat_v2(eval2(a, h), eval2(b, h));
  CHECK(ham::equal_2morphisms(lhs, rhs, h));
  CHECK(lhs.target == eval1(cob::target(ab), h));
}

TEST_CASE("invalid sequences do not evaluate") {
  ham::HamSym h;
  CHECK_THROWS_AS(eval2(seq(kTwo, {"h2 0 q a1"}), h), cob::InvalidStep);
}

TEST_CASE("invariance on the move catalog") {
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(COBORD2_DATA_DIR "/cerf")) {
    const auto f = cdf::load(e.path().string());
    CAPTURE(e.path().string());
    const auto rep = invariance_check(f.seq, f.target_seq(), f.moves, small(), e.path().stem().string());
    if (e.path().stem() == "negative_control") {
      CHECK(rep.count(CheckStatus::Fail) > 0);
    } else {
      CHECK(rep.all_pass());
    }
    ++files;
  }
  CHECK(files >= 23);
}

TEST_CASE("a move chain that misses its target") {
  const auto y1 = seq(kTwo, {"h2 0 x a1"});
  const auto y2 = seq(kTwo, {"h2 0 x b1"});
  CHECK_THROWS_AS(invariance_check(y1, y2, {"cylinder+ 1"}, small()), MoveChainInvalid);
  const auto rep = invariance_check(y1, y2, {}, small());
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("numeric cross-checks of handle cancellation") {
  for (int g = 0; g <= 1; ++g) {
    for (int k = 1; k <= 3; ++k) {
      CAPTURE(g);
      CAPTURE(k);
      const auto c12 = crosscheck_12(g, k, 100, 17);
      CHECK(c12.residual < 1e-9);
      CHECK(c12.rank_failures == 0);
      const auto c01 = crosscheck_01(g, k, 100, 18);
      CHECK(c01.residual < 1e-9);
      CHECK(c01.rank_failures == 0);
    }
  }
}

TEST_CASE("face samples pass on a normalized diagram") {
  ham::HamSym h;
  const auto d = ham::normalize_mod_equiv(eval2(seq(kTwo, {"h2 0 x a1", "h1 1 self y 5"}), h), h);
  const auto recs = numeric_face_checks(d, h, small(), "t");
  CHECK_FALSE(recs.empty());
  for (const auto& r : recs) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.status == CheckStatus::Pass);
  }
}
