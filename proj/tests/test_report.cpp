#include <doctest.h>

#include <cmath>
#include <limits>

#include "cobord2/report.hpp"

using namespace cobord2;

TEST_CASE("reals keep 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(0.0) == "0");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::stod(format_real(-2.5e-13)) == -2.5e-13);
}

TEST_CASE("status names") {
  CHECK(to_string(CheckStatus::Pass) == "pass");
  CHECK(to_string(CheckStatus::Fail) == "fail");
  CHECK(to_string(CheckStatus::Unknown) == "unknown");
}

TEST_CASE("counts and merge") {
  VerificationReport a{"s"}, b{"t"};
  CHECK(a.all_pass());
  a.add({"x", CheckStatus::Pass, 0.0, 1, ""});
  b.add({"y", CheckStatus::Unknown, 0.0, 2, ""});
  b.add({"z", CheckStatus::Fail, 1.0, 3, "bad"});
  a.merge(b);
  CHECK(a.checks.size() == 3);
  CHECK(a.count(CheckStatus::Pass) == 1);
  CHECK(a.count(CheckStatus::Fail) == 1);
  CHECK_FALSE(a.all_pass());
}

TEST_CASE("json is sorted and deterministic") {
  VerificationReport r{"suite"};
  r.config["seed"] = 7;
  r.add({"b", CheckStatus::Pass, 1e-12, 2, ""});
  r.add({"a", CheckStatus::Fail, 0.5, 1, "why"});
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["suite"] == "suite");
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0]["name"] == "a");
  CHECK(j["checks"][1]["name"] == "b");
  CHECK(j["checks"][0]["status"] == "fail");
  CHECK_FALSE(j.contains("wall_time_s"));

  VerificationReport s{"suite"};
  s.config["seed"] = 7;
  s.add({"a", CheckStatus::Fail, 0.5, 1, "why"});
  s.add({"b", CheckStatus::Pass, 1e-12, 2, ""});
  CHECK(s.to_json() == r.to_json());

  r.wall_time_s = 1.5;
  CHECK(nlohmann::json::parse(r.to_json()).contains("wall_time_s"));
}

TEST_CASE("non-finite residuals") {
  VerificationReport r{"s"};
  r.add({"a", CheckStatus::Fail, std::numeric_limits<double>::quiet_NaN(), 0, ""});
  r.add({"b", CheckStatus::Fail, std::numeric_limits<double>::infinity(), 0, ""});
  CHECK(nlohmann::json::parse(r.to_json())["checks"].size() == 2);
}
