#include <doctest.h>

#include <cmath>

#include "cobord2/su2.hpp"

using namespace cobord2;

namespace {

UnitQuaternion qi() { return {0, 1, 0, 0}; }
UnitQuaternion qj() { return {0, 0, 1, 0}; }

}  // namespace

TEST_CASE("exp_su2 closed forms") {
  CHECK(distance(exp_su2({}), UnitQuaternion::identity()) == 0.0);
  CHECK(distance(exp_su2({kPi / 2, 0, 0}), qi()) < 1e-15);
  CHECK(distance(exp_su2({0, 0, kPi}), UnitQuaternion{-1, 0, 0, 0}) < 1e-15);
}

TEST_CASE("log_su2 closed forms and branch") {
  CHECK(distance(log_su2(UnitQuaternion::identity()), AlgVector{}) == 0.0);
  CHECK(distance(log_su2(qi()), AlgVector{kPi / 2, 0, 0}) < 1e-15);
  const double w = -1.0 + 1e-12;
  const UnitQuaternion near{w, std::sqrt(1 - w * w), 0, 0};
  CHECK_THROWS_AS(log_su2(near), BranchError);
  CHECK_THROWS_AS(log_su2({-1, 0, 0, 0}), BranchError);
  CHECK_NOTHROW(log_su2(exp_su2({kPi - 1e-3, 0, 0})));
}

TEST_CASE("exp/log round trip on the open ball") {
  double worst = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const AlgVector v = sample_ball(kPi, s);
    worst = std::max(worst, distance(log_su2(exp_su2(v)), v));
  }
  CHECK(worst < 1e-10);

  worst = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const AlgVector v = sample_ball(kPi - 1e-3, s + 1000);
    worst = std::max(worst, distance(log_su2(exp_su2(v)), v));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("adjoint") {
  const AlgVector v{0.3, -0.2, 0.7};
  CHECK(distance(adjoint(UnitQuaternion::identity(), v), v) == 0.0);
  CHECK(distance(adjoint(qi(), {0, 1, 0}), AlgVector{0, -1, 0}) < 1e-15);

  double iso = 0, act = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto g = sample_haar(s), h = sample_haar(s + 500);
    const auto u = sample_ball(kPi, s);
    iso = std::max(iso, std::abs(adjoint(g, u).norm() - u.norm()));
    act = std::max(act, distance(adjoint(g * h, u), adjoint(g, adjoint(h, u))));
  }
  CHECK(iso < 1e-12);
  CHECK(act < 1e-10);
}

TEST_CASE("exp intertwines adjoint with conjugation") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto g = sample_haar(s);
    const auto v = sample_ball(kPi, s);
    CHECK(distance(exp_su2(adjoint(g, v)), g * exp_su2(v) * g.inverse()) < 1e-13);
  }
}

TEST_CASE("commutator") {
  const auto g = sample_haar(3);
  CHECK(distance(commutator(g, UnitQuaternion::identity()), UnitQuaternion::identity()) < 1e-15);
  CHECK(distance(commutator(g, g), UnitQuaternion::identity()) < 1e-15);
  CHECK(distance(commutator(qi(), qj()), UnitQuaternion{-1, 0, 0, 0}) < 1e-15);
}

TEST_CASE("quaternion products associate") {
  double worst = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto a = sample_haar(3 * s), b = sample_haar(3 * s + 1), c = sample_haar(3 * s + 2);
    worst = std::max(worst, distance((a * b) * c, a * (b * c)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("product chain stays unit") {
  ProductChain c;
  UnitQuaternion naive;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    c *= sample_haar(s);
    naive = naive * sample_haar(s);
  }
  CHECK(std::abs(c.value().norm() - 1.0) < 1e-15);
  CHECK(distance(c.value(), naive.normalized()) < 1e-10);
}

TEST_CASE("samplers") {
  CHECK(sample_haar(7) == sample_haar(7));
  CHECK(sample_ball(1.0, 7) == sample_ball(1.0, 7));
  CHECK_FALSE(sample_haar(7) == sample_haar(8));
  CHECK_THROWS(sample_ball(0.0, 1));
  CHECK_THROWS(sample_ball(4.0, 1));

  // Haar symmetry: E[w] = 0 with sd(w) = 1/2, so 3 sigma of the mean is 1.5 / sqrt(n).
  const int n = 100000;
  double sum = 0;
  for (int s = 0; s < n; ++s) sum += sample_haar(static_cast<std::uint64_t>(s)).w;
  CHECK(std::abs(sum / n) < 1.5 / std::sqrt(double(n)));

  bool inside = true;
  for (std::uint64_t s = 0; s < 10000; ++s) inside = inside && sample_ball(0.5, s).norm() < 0.5;
  CHECK(inside);
}

TEST_CASE("mix_seed spreads nearby inputs") {
  CHECK(mix_seed(0, 0) != mix_seed(0, 1));
  CHECK(mix_seed(1, 0) != mix_seed(0, 1));
  CHECK(mix_seed(5, 9) == mix_seed(5, 9));
}
