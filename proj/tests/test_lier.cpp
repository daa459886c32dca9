#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "cobord2/lier_catalog.hpp"
#include "cobord2/lier_finite.hpp"

using namespace cobord2;
using namespace cobord2::lier;

namespace {

GroupPtr ptr(const FiniteGroup& g) { return std::make_shared<const FiniteGroup>(g); }

// Orbits of M x N under the anti-diagonal middle action (x, y) ~ (x h, h^-1 y),
// counted by brute force, independently of quotient_collapse.
int middle_orbits(const FiniteBiset& m, const FiniteBiset& n) {
  const int G = m.right->n;
  std::set<std::pair<int, int>> seen;
  int orbits = 0;
  for (int x = 0; x < m.m; ++x) {
    for (int y = 0; y < n.m; ++y) {
      if (seen.count({x, y})) continue;
      ++orbits;
      for (int h = 0; h < G; ++h) seen.insert({m.act_right(x, h), n.act_left(m.right->inverse(h), y)});
    }
  }
  return orbits;
}

bool isomorphic(const FiniteBiset& a, const FiniteBiset& b) { return find_biset_isomorphism(a, b).has_value(); }

}  // namespace

TEST_CASE("group tables") {
  CHECK(cyclic_group(5).n == 5);
  CHECK(symmetric3().n == 6);
  const auto q = quaternion8();
  CHECK(q.n == 8);
  int order4 = 0;
  for (int a = 0; a < 8; ++a) order4 += q.mul(a, a) != 0 && q.mul(q.mul(a, a), q.mul(a, a)) == 0;
  CHECK(order4 == 6);  // +-i, +-j, +-k
  CHECK(direct_product(cyclic_group(2), cyclic_group(3)).n == 6);
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", 2, {0, 1, 1, 1}), InvalidGroup);
  // Latin square with identity, not associative.
  CHECK_THROWS_AS(FiniteGroup::from_table("loop", 5, {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0}),
                  InvalidGroup);
}

TEST_CASE("bisets validate their actions") {
  const auto z2 = ptr(cyclic_group(2));
  CHECK_NOTHROW(regular_biset(z2).validate());
  FiniteBiset broken = regular_biset(z2);
  broken.ract = {1, 0, 0, 1};  // the identity moves point 0
  CHECK_THROWS_AS(broken.validate(), InvalidBiset);
}

TEST_CASE("regular Z2 biset composed with itself") {
  const auto z2 = ptr(cyclic_group(2));
  const auto m = regular_biset(z2);
  REQUIRE(middle_action_free(m, m));
  CHECK(middle_orbits(m, m) == 2);  // 4 points, 2 orbits
  const auto c = try_compose_bisets(m, m);
  REQUIRE(c.has_value());
  CHECK(c->m == 2);
  CHECK(isomorphic(*c, m));
}

TEST_CASE("identity biset is neutral") {
  for (const auto& g : {cyclic_group(3), symmetric3(), quaternion8()}) {
    const auto G = ptr(g);
    const auto gg = ptr(direct_product(g, g));
    const auto id = regular_biset(G);
    const auto p = pants_biset(G, gg);
    const auto pt = adjoint_biset(p);
    const auto left = try_compose_bisets(id, pt);
    const auto right = try_compose_bisets(p, id);
    REQUIRE(left.has_value());
    REQUIRE(right.has_value());
    CHECK(isomorphic(*left, pt));
    CHECK(isomorphic(*right, p));
  }
}

TEST_CASE("pants compositions over Q8 associate") {
  const auto G = ptr(quaternion8());
  const auto gg = ptr(direct_product(*G, *G));
  const auto p = pants_biset(G, gg);
  const auto pt = adjoint_biset(p);
  CHECK(p.m == 64);
  const auto a = try_compose_bisets(*try_compose_bisets(p, pt), p);
  const auto b = try_compose_bisets(p, *try_compose_bisets(pt, p));
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->m == 64 * 64 * 64 / 8 / 64);
  CHECK(a->m == middle_orbits(*try_compose_bisets(p, pt), p));
  CHECK(isomorphic(*a, *b));
}

TEST_CASE("composite carrier size is |M||N|/|G|") {
  auto cat = parse_catalog(default_catalog_text());
  auto& L = *cat.inst;
  int checked = 0;
  for (auto f : cat.bisets) {
    for (auto g : cat.bisets) {
      const auto& m = L.biset(f);
      const auto& n = L.biset(g);
      if (!(*m.right == *n.left) || !middle_action_free(m, n)) continue;
      const auto c = try_compose_bisets(m, n);
      REQUIRE(c.has_value());
      CHECK(c->m * m.right->n == m.m * n.m);
      CHECK(c->m == middle_orbits(m, n));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("non-free middle action is not composable") {
  const auto G = ptr(cyclic_group(3));
  const auto one = ptr(trivial_group());
  const auto a = point_biset(one, G);
  const auto b = point_biset(G, one);
  CHECK_FALSE(middle_action_free(a, b));
  CHECK_FALSE(try_compose_bisets(a, b).has_value());
}

TEST_CASE("quotient collapse") {
  const auto z3 = ptr(cyclic_group(3));
  const auto s3 = ptr(symmetric3());
  const auto m = regular_biset(s3);
  const auto c1 = quotient_collapse({&m});
  CHECK(c1.biset.m == m.m);
  CHECK(isomorphic(c1.biset, m));

  const auto gg = ptr(direct_product(*z3, *z3));
  const auto p = pants_biset(z3, gg);
  const auto id = regular_biset(z3);
  const auto c2 = quotient_collapse({&p, &id});
  CHECK(isomorphic(c2.biset, p));

  // Chains whose pairwise composites exist: collapse = iterated composite.
  const auto pt = adjoint_biset(p);
  const auto c3 = quotient_collapse({&p, &pt, &p});
  const auto it = try_compose_bisets(*try_compose_bisets(p, pt), p);
  REQUIRE(it.has_value());
  CHECK(isomorphic(c3.biset, *it));
  CHECK(c3.class_of.size() == std::size_t(p.m) * pt.m * p.m);
}

TEST_CASE("identification graphs and their adjoints") {
  LieRFinite L;
  const auto G = L.add_group(cyclic_group(2));
  const auto R = L.add_atom(regular_biset(L.group_ptr(G)));
  const auto I = L.identification_corr(R, R);
  CHECK(L.product_size({R, R}) == 4);
  CHECK(I.points.size() == 2);  // one point per class of the 4-element product
  CHECK(L.saturate(I) == I);

  const auto It = L.transpose(I);
  const auto back = L.try_compose_corrs(I, It);
  REQUIRE(back.has_value());
  CHECK(*back == L.identity_corr({R, R}));
  const auto fwd = L.try_compose_corrs(It, I);
  REQUIRE(fwd.has_value());
  CHECK(*fwd == L.identity_corr(I.target));
}

TEST_CASE("composition of correspondences") {
  LieRFinite L;
  const auto G = L.add_group(cyclic_group(2));
  const auto R = L.add_atom(regular_biset(L.group_ptr(G)));
  const auto I = L.identification_corr(R, R);
  const auto diag = L.identity_corr({R, R});
  CHECK(L.try_compose_corrs(diag, I) == I);

  // The full relation on R passes through two middle points: two-to-one.
  Corr full{{R}, {R}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  REQUIRE(L.saturate(full) == full);
  CHECK_FALSE(L.try_compose_corrs(full, full).has_value());
  CHECK(L.compose_relations(full, full) == full);
}

TEST_CASE("catalog parsing") {
  CHECK(parse_catalog("").bisets.empty());
  const auto c = parse_catalog("group Z2 cyclic 2\nbiset R regular Z2  # comment\n");
  CHECK(c.bisets.size() == 1);
  CHECK_THROWS_AS(parse_catalog("group G frob 2\n"), CatalogParseError);
  CHECK_THROWS_AS(parse_catalog("biset R regular Nope\n"), CatalogParseError);
  try {
    parse_catalog("group Z2 cyclic 2\n\ngroup L table 2\n0 1\n1 1\n");
    FAIL("expected a parse error");
  } catch (const CatalogParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("diagram axiom loops on the Z2 catalog") {
  auto c = parse_catalog("group Z2 cyclic 2\nbiset R regular Z2\nbiset P pants Z2\n");
  const auto rep = run_axiom_loops(c, {});
  CHECK(rep.all_pass());
  CHECK(rep.checks.size() > 10);
}
