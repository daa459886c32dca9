#include <doctest.h>

#include <filesystem>

#include "cobord2/cdf.hpp"

using namespace cobord2;

namespace {

const char* kText = R"(# a comment
@circles
x + 0
y - 3
@surfaces
item [h=1 in=x out=m]
item [h=1 in=m out=y]
@steps
h2 0 x a1   # trailing comment
cylinder
@target
h2 0 x a1
@moves
cylinder- 1
)";

int error_line(const std::string& text) {
  try {
    cdf::parse(text);
  } catch (const cdf::ParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("parse") {
  const auto f = cdf::parse(kText);
  REQUIRE(f.circles.size() == 2);
  CHECK(f.circles[1].label == "y");
  CHECK(f.circles[1].reversed);
  CHECK(f.circles[1].param == 3);
  CHECK(f.seq.source.size() == 2);
  CHECK(f.seq.steps.size() == 2);
  REQUIRE(f.target.has_value());
  CHECK(f.target->size() == 1);
  CHECK(f.moves == std::vector<std::string>{"cylinder- 1"});
  CHECK(cob::apply_move(f.seq, f.moves[0]) == f.target_seq());
}

TEST_CASE("serialize round trip") {
  const auto f = cdf::parse(kText);
  const auto text = cdf::serialize(f);
  CHECK(cdf::parse(text) == f);
  CHECK(cdf::serialize(cdf::parse(text)) == text);
  for (const auto& e : std::filesystem::directory_iterator(COBORD2_DATA_DIR "/cerf")) {
    CAPTURE(e.path().string());
    const auto g = cdf::load(e.path().string());
    CHECK(cdf::parse(cdf::serialize(g)) == g);
  }
}

TEST_CASE("optional sections") {
  const auto f = cdf::parse("@surfaces\nitem [in=x out=y]\n");
  CHECK(f.circles.empty());
  CHECK(f.seq.steps.empty());
  CHECK_FALSE(f.target.has_value());
  CHECK(f.target_seq().steps.empty());
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_line("@surfaces\nitem [in=x out=y]\n@bogus\n") == 3);
  CHECK(error_line("@surfaces\nitem [in=x out=y]\n@steps\nh7 0 x a1\n") == 4);
  CHECK(error_line("@surfaces\nitem [h=q]\n") == 2);
  CHECK(error_line("@surfaces\nitem [in=x out=y]\n@surfaces\nitem [in=x out=y]\n") == 3);
  CHECK(error_line("stray line\n") == 1);
  CHECK(error_line("@circles\nx + zz\n@surfaces\nitem [in=x out=y]\n") == 2);
  // @circles must list the end circles exactly
  CHECK(error_line("@circles\nx\n@surfaces\nitem [in=x out=y]\n") > 0);
  CHECK(error_line("") > 0);
  CHECK_THROWS_AS(cdf::load("/nonexistent/file.cdf"), std::runtime_error);
}
