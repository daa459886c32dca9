#include <doctest.h>

#include <cmath>

#include "cobord2/modnum.hpp"

using namespace cobord2;
using namespace cobord2::mod;

TEST_CASE("trivial connection") {
  const auto p = ChartPoint::trivial(2, 3);
  CHECK(distance(theta1_of(p), AlgVector{}) == 0.0);
  for (const auto& m : moment(p)) CHECK(m.norm() == 0.0);
  CHECK(relation_residual(p) == 0.0);
}

TEST_CASE("theta1 solved by hand on the annulus") {
  auto p = ChartPoint::trivial(0, 2);
  p.theta[0] = {0.3, 0, 0};
  CHECK(distance(theta1_of(p), AlgVector{-0.3, 0, 0}) < 1e-15);
}

TEST_CASE("chart dimensions") {
  for (int g = 0; g <= 3; ++g) {
    for (int k = 1; k <= 4; ++k) {
      const ModuliChart c{g, k};
      CHECK(c.ambient_dimension() == 6 * g + 6 * k - 6);
      CHECK(c.dimension() == 6 * g + 6 * k - 6);
      CHECK(static_cast<int>(c.generators().size()) == 2 * (k - 1) + 2 * g);
    }
  }
  for (int g = 0; g <= 2; ++g) {
    for (int k = 1; k <= 3; ++k) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        const auto p = random_point(g, k, s);
        CHECK(tangent_dimension(p) == 6 * g + 6 * k - 6);
        CHECK(static_cast<int>(locus_tangent(p, {}).basis.size()) == 6 * g + 6 * k - 6);
        CHECK(locus_tangent(p, {}).rank == 0);
      }
    }
  }
}

TEST_CASE("relation and moment bounds at random points") {
  double worst = 0;
  bool bounded = true;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto p = random_point(1, 3, s);
    worst = std::max(worst, relation_residual(p));
    for (const auto& m : moment(p)) bounded = bounded && m.norm() < kPi;
  }
  CHECK(worst < 1e-10);
  CHECK(bounded);
}

TEST_CASE("group action") {
  const auto p = random_point(1, 2, 4);
  CHECK(distance(action({UnitQuaternion{}, UnitQuaternion{}}, p), p) == 0.0);
  double comp = 0, eq = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto q = random_point(2, 3, s);
    const auto g = random_gauge(3, 2 * s), h = random_gauge(3, 2 * s + 1);
    std::vector<UnitQuaternion> gh(3);
    for (int i = 0; i < 3; ++i) gh[i] = g[i] * h[i];
    comp = std::max(comp, distance(action(gh, q), action(g, action(h, q))));
    const auto m0 = moment(q), m1 = moment(action(g, q));
    for (int i = 0; i < 3; ++i) eq = std::max(eq, distance(m1[i], adjoint(g[i], m0[i])));
  }
  CHECK(comp < 1e-10);
  CHECK(eq < 1e-9);
}

TEST_CASE("outgoing boundaries carry the opposite moment") {
  const auto p = random_point(0, 3, 9);
  const auto a = moment(p), b = moment(p, {false, true, false});
  CHECK(distance(b[1], -a[1]) == 0.0);
  CHECK(distance(b[0], a[0]) == 0.0);
}

TEST_CASE("gluing") {
  const auto t = glue(ChartPoint::trivial(0, 2), 2, ChartPoint::trivial(0, 2));
  CHECK(distance(t, ChartPoint::trivial(0, 2)) == 0.0);

  double rel = 0, rt = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto p2 = random_point(0, 3, 2 * s);
    auto p1 = random_point(0, 3, 2 * s + 1);
    p1.theta[1] = -theta1_of(p2);
    const auto q = glue(p1, 3, p2);
    CHECK(q.g == 0);
    CHECK(q.k == 4);
    rel = std::max(rel, relation_residual(q));
    rt = std::max(rt, roundtrip_residual(p1, 3, p2));
  }
  CHECK(rel < 1e-10);
  CHECK(rt < 1e-9);

  // Mismatched moments are refused.
  const auto p2 = random_point(1, 2, 5);
  const auto p1 = random_point(0, 2, 6);
  CHECK_THROWS_AS(glue(p1, 2, p2), MomentMismatch);
}

TEST_CASE("split inverts glue in its gauge") {
  const auto p2 = random_point(1, 2, 21);
  auto p1 = random_point(1, 3, 22);
  p1.theta[0] = -theta1_of(p2);
  p1.Gamma[0] = UnitQuaternion{};
  const auto q = glue(p1, 2, p2);
  CHECK(q.g == 2);
  CHECK(q.k == 3);
  const auto [a, b] = split(q, 1, 3, 2);
  CHECK(distance(a, p1) < 1e-12);
  CHECK(distance(b, p2) < 1e-12);
}

TEST_CASE("attaching loci") {
  // One handle curve cuts rank 3; a dual pair cuts rank 6.
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = sample_on_locus(1, 1, {Word::parse("a1")}, s);
    CHECK(distance(p.A[0], UnitQuaternion{}) == 0.0);
    CHECK(locus_tangent(p, {Word::parse("a1")}).basis.size() == 6 - 3);
    const auto q = sample_on_locus(1, 2, {Word::parse("a1"), Word::parse("b1")}, s);
    CHECK(locus_tangent(q, {Word::parse("a1"), Word::parse("b1")}).rank == 6);
  }
}

TEST_CASE("generic words are solved numerically") {
  const std::vector<Word> w{Word::parse("a1 b2 d2")};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = sample_on_locus(2, 2, w, s);
    CHECK(word_residual(p, w) < 1e-10);
    CHECK(locus_tangent(p, w).rank == 3);
  }
}

TEST_CASE("commutator words cut a singular locus") {
  // [a1, b1] = 1 has rank 2 at its generic points (commuting pairs).
  const std::vector<Word> w{Word::parse("a1 b1 a1^-1 b1^-1")};
  int rank2 = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = sample_on_locus(1, 2, w, s);
    CHECK(word_residual(p, w) < 1e-10);
    rank2 += locus_tangent(p, w).rank == 2;
  }
  CHECK(rank2 >= 18);
}

TEST_CASE("zero section on the punctured sphere") {
  std::vector<Word> caps{Word::parse("d2"), Word::parse("d3")};
  const auto p = sample_on_locus(0, 3, caps, 3);
  CHECK(p.theta[0].norm() == 0.0);
  CHECK(theta1_of(p).norm() < 1e-12);
  CHECK(membership_zero_section(p, {1, 2, 3}) < 1e-12);
  CHECK(2 * static_cast<int>(locus_tangent(p, caps).basis.size()) == 12);
}

TEST_CASE("membership residuals") {
  const auto p = random_point(1, 2, 1);
  CHECK(membership_diagonal(p, p) == 0.0);

  const auto p2 = random_point(0, 3, 2);
  auto p1 = random_point(1, 2, 3);
  p1.theta[0] = -theta1_of(p2);
  CHECK(membership_identification(p1, 2, p2, glue(p1, 2, p2)) < 1e-12);
  CHECK(membership_identification(p1, 2, p2, random_point(1, 3, 4)) > 1e-3);

  // A handle with A1 != 1 is off the a1 locus.
  const auto x = random_point(2, 1, 5);
  CHECK(membership_hol_trivial_handle(x, Word::parse("a1"), forget_handle(x, 0), 0) > 1e-3);
  const auto y = insert_handle(random_point(1, 1, 6), 0, UnitQuaternion{}, sample_haar(7));
  CHECK(membership_hol_trivial_handle(y, Word::parse("a1"), forget_handle(y, 0), 0) < 1e-15);

  const auto z = insert_boundary(random_point(1, 2, 8), 3, AlgVector{}, sample_haar(9));
  CHECK(membership_hol_trivial_boundary(z, 3, forget_boundary(z, 3)) < 1e-12);
}

TEST_CASE("holonomy of words") {
  const auto p = random_point(2, 3, 11);
  CHECK(distance(holonomy(p, Word::parse("a1 a1^-1")), UnitQuaternion{}) < 1e-15);
  CHECK(distance(holonomy(p, Word::parse("a2")), p.A[1]) == 0.0);
  CHECK(distance(holonomy(p, Word::parse("d3")), boundary_holonomy(p, 3)) < 1e-15);
  CHECK_THROWS(holonomy(p, Word::parse("a3")));
}

TEST_CASE("samplers avoid the excised locus and stay reproducible") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto p = random_point(0, 2, s);
    CHECK(distance_to_excised(p) >= NumericConfig{}.reject_distance);
  }
  CHECK(distance(random_point(2, 2, 99), random_point(2, 2, 99)) == 0.0);
}
