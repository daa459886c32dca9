#include <doctest.h>

#include "cobord2/lier_finite.hpp"
#include "cobord2/partial2cat.hpp"

using namespace cobord2;
using namespace cobord2::p2c;

namespace {

struct Z2 {
  lier::LieRFinite inst{1};
  ObjectId G;
  Simple1 R;   // regular biset
  Simple1 RR;  // R o R

  Z2() {
    G = inst.add_group(lier::cyclic_group(2));
    R = inst.add_atom(lier::regular_biset(inst.group_ptr(G)));
    RR = *inst.try_compose1(R, R);
  }
  SeqMorphism seq(std::vector<Simple1> xs) { return seq_of(inst, std::move(xs)); }
};

}  // namespace

TEST_CASE("horizontal concatenation of sequences") {
  Z2 z;
  const auto e = empty_seq(z.G);
  const auto f = z.seq({z.R});
  const auto g = z.seq({z.R, z.RR});
  CHECK(concat_h1(e, f) == f);
  CHECK(concat_h1(f, e) == f);
  CHECK(concat_h1(f, g).items == std::vector<Simple1>{z.R, z.R, z.RR});
  CHECK(concat_h1(concat_h1(f, g), f) == concat_h1(f, concat_h1(g, f)));
}

TEST_CASE("vertical stacking") {
  Z2 z;
  const auto s = z.seq({z.R, z.R});
  const auto I = z.inst.identification2(z.R, z.R);
  const auto d = face_diagram(z.inst, I);
  CHECK(validate_diagram(z.inst, d) == std::nullopt);
  CHECK(d.face_count() == 1);
  CHECK(concat_v2(identity_diagram(s), d) == d);
  CHECK(concat_v2(d, identity_diagram(d.target)) == d);
  const auto dt = face_diagram(z.inst, z.inst.adjoint2(I));
  CHECK_THROWS_AS(concat_v2(d, d), BoundaryMismatch);
  const auto loop = concat_v2(d, dt);
  CHECK(loop.source == s);
  CHECK(loop.target == s);
  CHECK(level_seq(z.inst, loop, 1).items == std::vector<Simple1>{z.RR});
}

TEST_CASE("identification followed by its adjoint normalizes away") {
  Z2 z;
  const auto I = z.inst.identification2(z.R, z.R);
  const auto d = concat_v2(face_diagram(z.inst, I), face_diagram(z.inst, z.inst.adjoint2(I)));
  const auto n = normalize_diagram(d, z.inst);
  CHECK(n.rows.empty());
  CHECK(n.source == d.source);

  const auto d2 = concat_v2(face_diagram(z.inst, z.inst.adjoint2(I)), face_diagram(z.inst, I));
  CHECK(normalize_diagram(d2, z.inst).rows.empty());
}

TEST_CASE("normalization is idempotent and never adds faces") {
  Z2 z;
  const auto I = z.inst.identification2(z.R, z.R);
  const auto It = z.inst.adjoint2(I);
  const auto s3 = z.seq({z.R, z.R, z.R});
  // I on the first pair, wire on the third; then the adjoint on the composite.
  const auto a = row_diagram(z.inst, s3, {Cell::face(I), Cell::wire(z.R)});
  const auto b = row_diagram(z.inst, a.target, {Cell::face(It), Cell::wire(z.R)});
  const auto c = row_diagram(z.inst, b.target, {Cell::wire(z.R), Cell::face(I)});
  const auto d = concat_v2(concat_v2(a, b), c);
  const auto n = normalize_diagram(d, z.inst);
  CHECK(n.face_count() <= d.face_count());
  CHECK(normalize_diagram(n, z.inst) == n);
  CHECK(z.inst.set_level_relation(n) == z.inst.set_level_relation(d));
}

TEST_CASE("horizontal stacking and interchange") {
  Z2 z;
  const auto I = z.inst.identification2(z.R, z.R);
  const auto It = z.inst.adjoint2(I);
  const auto c = face_diagram(z.inst, I), c2 = face_diagram(z.inst, It);
  const auto d = face_diagram(z.inst, I), d2 = face_diagram(z.inst, It);
  // (c;c2) | (d;d2) versus (c|d);(c2|d2)
  const auto lhs = concat_h2(z.inst, concat_v2(c, c2), concat_v2(d, d2));
  const auto rhs = concat_v2(concat_h2(z.inst, c, d), concat_h2(z.inst, c2, d2));
  CHECK(normalize_diagram(lhs, z.inst) == normalize_diagram(rhs, z.inst));
  CHECK(z.inst.set_level_relation(lhs) == z.inst.set_level_relation(rhs));
}

TEST_CASE("row boundaries must chain") {
  Z2 z;
  const auto I = z.inst.identification2(z.R, z.R);
  CHECK_THROWS_AS(row_diagram(z.inst, z.seq({z.R}), {Cell::face(I)}), BoundaryMismatch);
}

TEST_CASE("diagram axiom on simple loops") {
  Z2 z;
  const auto f = z.seq({z.R});
  CHECK(check_diagram_axiom({f}, z.inst).all_pass());
  const auto pair = z.seq({z.R, z.R});
  const auto comp = z.seq({z.RR});
  const auto rep = check_diagram_axiom({pair, comp, pair}, z.inst);
  CHECK(rep.all_pass());
  CHECK_FALSE(rep.checks.empty());
  CHECK_THROWS_AS(check_diagram_axiom({pair, comp}, z.inst), NotALoop);
  CHECK_THROWS_AS(check_diagram_axiom({pair, z.seq({z.R, z.R, z.R}), pair}, z.inst), NotAdjacentStep);
}

TEST_CASE("equivalence of sequences") {
  Z2 z;
  const auto pair = z.seq({z.R, z.R});
  CHECK(equiv_seq(pair, pair, z.inst, 0) == Tri::True);
  CHECK(equiv_seq(pair, z.seq({z.RR}), z.inst, 1) == Tri::True);
  CHECK(equiv_seq(z.seq({z.R, z.R, z.R}), z.seq({z.RR, z.R}), z.inst, 2) == Tri::True);
}

TEST_CASE("equivalence is unknown without moves") {
  // Two unrelated simple morphisms with no compositions and no decompositions.
  lier::LieRFinite inst;
  const auto G = inst.add_group(lier::cyclic_group(3));
  const auto R = inst.add_atom(lier::regular_biset(inst.group_ptr(G)));
  const auto one = inst.add_group(lier::trivial_group());
  const auto U = inst.add_atom(lier::point_biset(inst.group_ptr(G), inst.group_ptr(one)));
  (void)R;
  const auto V = inst.add_atom(lier::FiniteBiset{"V", inst.group_ptr(G), inst.group_ptr(one), 3,
                                                 {0, 1, 2, 1, 2, 0, 2, 0, 1}, {0, 1, 2}});
  const auto a = seq_of(inst, {U}), b = seq_of(inst, {V});
  for (int depth : {0, 1, 3}) CHECK(equiv_seq(a, b, inst, depth) == Tri::Unknown);
}
