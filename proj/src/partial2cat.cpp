#include "cobord2/partial2cat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace cobord2::p2c {

std::size_t StackDiagram::face_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](const Cell& c) { return c.is_face(); }));
  return n;
}

SeqMorphism empty_seq(ObjectId x) { return {x, x, {}}; }

SeqMorphism seq_of(const Instance& inst, std::vector<Simple1> items) {
  if (items.empty()) throw std::invalid_argument("seq_of: empty sequence needs an explicit object");
  SeqMorphism s{inst.source1(items.front()), inst.target1(items.back()), std::move(items)};
  for (std::size_t i = 0; i + 1 < s.items.size(); ++i) {
    if (!inst.objects_equal(inst.target1(s.items[i]), inst.source1(s.items[i + 1]))) {
      throw BoundaryMismatch("seq_of: items " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not chain");
    }
  }
  return s;
}

SeqMorphism adjoint_seq(Instance& inst, const SeqMorphism& s) {
  SeqMorphism r{s.target, s.source, {}};
  for (auto it = s.items.rbegin(); it != s.items.rend(); ++it) r.items.push_back(inst.adjoint1(*it));
  return r;
}

SeqMorphism concat_h1(const SeqMorphism& a, const SeqMorphism& b) {
  if (a.target != b.source) throw BoundaryMismatch("concat_h1: target/source objects differ");
  SeqMorphism r = a;
  r.target = b.target;
  r.items.insert(r.items.end(), b.items.begin(), b.items.end());
  return r;
}

std::vector<Simple1> row_source_items(const Instance& inst, const Row& row) {
  std::vector<Simple1> out;
  for (const auto& c : row) {
    if (c.is_face()) {
      const auto b = inst.boundary2(c.id);
      out.insert(out.end(), b.source.items.begin(), b.source.items.end());
    } else {
      out.push_back(c.id);
    }
  }
  return out;
}

std::vector<Simple1> row_target_items(const Instance& inst, const Row& row) {
  std::vector<Simple1> out;
  for (const auto& c : row) {
    if (c.is_face()) {
      const auto b = inst.boundary2(c.id);
      out.insert(out.end(), b.target.items.begin(), b.target.items.end());
    } else {
      out.push_back(c.id);
    }
  }
  return out;
}

namespace {

// Endpoint objects of a row, falling back to `fallback` for an empty row.
std::pair<ObjectId, ObjectId> row_ends(const Instance& inst, const Row& row, const SeqMorphism& fallback) {
  if (row.empty()) return {fallback.source, fallback.target};
  auto left = [&](const Cell& c) {
    return c.is_face() ? inst.boundary2(c.id).source.source : inst.source1(c.id);
  };
  auto right = [&](const Cell& c) {
    return c.is_face() ? inst.boundary2(c.id).source.target : inst.target1(c.id);
  };
  return {left(row.front()), right(row.back())};
}

Row wires_of(const std::vector<Simple1>& items) {
  Row r;
  for (auto f : items) r.push_back(Cell::wire(f));
  return r;
}

}  // namespace

StackDiagram identity_diagram(const SeqMorphism& s) { return {s, s, {}}; }

StackDiagram row_diagram(const Instance& inst, const SeqMorphism& source, Row row) {
  const auto src_items = row_source_items(inst, row);
  if (src_items != source.items) throw BoundaryMismatch("row_diagram: row source differs from declared source");
  const auto ends = row_ends(inst, row, source);
  if (!row.empty() && (ends.first != source.source || ends.second != source.target)) {
    throw BoundaryMismatch("row_diagram: row endpoints differ from declared source");
  }
  SeqMorphism target{source.source, source.target, row_target_items(inst, row)};
  StackDiagram d{source, target, {}};
  d.rows.push_back(std::move(row));
  return d;
}

StackDiagram face_diagram(const Instance& inst, Simple2 a) {
  const auto b = inst.boundary2(a);
  return StackDiagram{b.source, b.target, {Row{Cell::face(a)}}};
}

SeqMorphism level_seq(const Instance& inst, const StackDiagram& d, std::size_t level) {
  if (level == 0) return d.source;
  return {d.source.source, d.source.target, row_target_items(inst, d.rows.at(level - 1))};
}

StackDiagram concat_v2(const StackDiagram& c, const StackDiagram& d) {
  if (!(c.target == d.source)) throw BoundaryMismatch("concat_v2: target of upper differs from source of lower");
  StackDiagram r = c;
  r.target = d.target;
  r.rows.insert(r.rows.end(), d.rows.begin(), d.rows.end());
  return r;
}

StackDiagram concat_h2(const Instance& inst, const StackDiagram& c, const StackDiagram& d) {
  if (c.source.target != d.source.source || c.target.target != d.target.source) {
    throw BoundaryMismatch("concat_h2: diagrams do not share the middle object");
  }
  StackDiagram r{concat_h1(c.source, d.source), concat_h1(c.target, d.target), {}};
  const std::size_t n = std::max(c.rows.size(), d.rows.size());
  for (std::size_t i = 0; i < n; ++i) {
    Row row = i < c.rows.size() ? c.rows[i] : wires_of(c.target.items);
    Row right = i < d.rows.size() ? d.rows[i] : wires_of(d.target.items);
    row.insert(row.end(), right.begin(), right.end());
    r.rows.push_back(std::move(row));
  }
  (void)inst;
  return r;
}

std::optional<std::string> validate_diagram(const Instance& inst, const StackDiagram& d) {
  std::vector<Simple1> cur = d.source.items;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    if (row_source_items(inst, d.rows[i]) != cur) return "row " + std::to_string(i) + " source does not match";
    cur = row_target_items(inst, d.rows[i]);
  }
  if (cur != d.target.items) return "last row target does not match diagram target";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct CellLayout {
  std::vector<Span> in;
  std::vector<Span> out;
};

CellLayout layout(const Instance& inst, const Row& row) {
  CellLayout l;
  std::size_t pi = 0, po = 0;
  for (const auto& c : row) {
    std::size_t ni = 1, no = 1;
    if (c.is_face()) {
      const auto b = inst.boundary2(c.id);
      ni = b.source.items.size();
      no = b.target.items.size();
    }
    l.in.push_back({pi, pi + ni});
    l.out.push_back({po, po + no});
    pi += ni;
    po += no;
  }
  return l;
}

bool delete_identity_faces(StackDiagram& d, Instance& inst) {
  bool changed = false;
  for (auto& row : d.rows) {
    Row next;
    for (const auto& c : row) {
      if (c.is_face() && inst.is_identity2(c.id)) {
        const auto b = inst.boundary2(c.id);
        for (auto f : b.source.items) next.push_back(Cell::wire(f));
        changed = true;
      } else {
        next.push_back(c);
      }
    }
    row = std::move(next);
  }
  return changed;
}

bool delete_wire_rows(StackDiagram& d) {
  const auto before = d.rows.size();
  std::erase_if(d.rows, [](const Row& r) { return std::none_of(r.begin(), r.end(), [](const Cell& c) { return c.is_face(); }); });
  return d.rows.size() != before;
}

std::vector<Simple1> slice(const std::vector<Simple1>& v, std::size_t b, std::size_t e) {
  return {v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(e)};
}

// Cells of `spans` overlapping [b, e); for an empty range, the index of the
// cell boundary at b (reported as first == last).
struct Cover {
  std::size_t first = 0;
  std::size_t last = 0;  // exclusive
  bool aligned = false;
};

Cover cover(const std::vector<Span>& spans, std::size_t b, std::size_t e) {
  Cover c;
  if (b == e) {
    // Position between cells: find i with spans[i].begin == b (or end of row).
    for (std::size_t i = 0; i <= spans.size(); ++i) {
      const std::size_t pos = i < spans.size() ? spans[i].begin : (spans.empty() ? 0 : spans.back().end);
      if (pos == b) {
        // Skip over zero-width cells that sit at the same position.
        c.first = c.last = i;
        c.aligned = true;
        return c;
      }
    }
    return c;
  }
  bool found = false;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const bool overlap = spans[i].begin < e && b < spans[i].end;
    if (!overlap) continue;
    if (!found) {
      c.first = i;
      found = true;
    }
    c.last = i + 1;
  }
  if (!found) return c;
  c.aligned = spans[c.first].begin == b && spans[c.last - 1].end == e;
  return c;
}

// One pass of lifting / merging; returns true if anything changed.
bool lift_or_merge_once(StackDiagram& d, Instance& inst) {
  for (std::size_t r = 0; r + 1 < d.rows.size(); ++r) {
    Row& upper = d.rows[r];
    Row& lower = d.rows[r + 1];
    const CellLayout lu = layout(inst, upper);
    const CellLayout ll = layout(inst, lower);
    const auto mid = row_target_items(inst, upper);

    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (!lower[j].is_face()) continue;
      const Span in = ll.in[j];
      const Cover cu = cover(lu.out, in.begin, in.end);
      if (in.begin == in.end && !cu.aligned) continue;

      std::size_t faces_above = 0, face_idx = 0;
      for (std::size_t i = cu.first; i < cu.last; ++i) {
        if (upper[i].is_face()) {
          ++faces_above;
          face_idx = i;
        }
      }

      if (faces_above == 0 && cu.aligned) {
        // Lift: replace the wires above by the face, pass its outputs through below.
        const Cell b = lower[j];
        const auto bt = inst.boundary2(b.id).target.items;
        Row nu(upper.begin(), upper.begin() + static_cast<std::ptrdiff_t>(cu.first));
        nu.push_back(b);
        nu.insert(nu.end(), upper.begin() + static_cast<std::ptrdiff_t>(cu.last), upper.end());
        Row nl(lower.begin(), lower.begin() + static_cast<std::ptrdiff_t>(j));
        for (auto f : bt) nl.push_back(Cell::wire(f));
        nl.insert(nl.end(), lower.begin() + static_cast<std::ptrdiff_t>(j + 1), lower.end());
        upper = std::move(nu);
        lower = std::move(nl);
        return true;
      }
      if (faces_above != 1 || in.begin == in.end) continue;

      // Merge candidate: a single face above. The union range must be tiled
      // by that face plus wires above, and by this face plus wires below.
      const Span ao = lu.out[face_idx];
      if (ao.begin == ao.end) continue;
      const std::size_t ub = std::min(ao.begin, in.begin);
      const std::size_t ue = std::max(ao.end, in.end);
      const bool a_inside = ub == in.begin && ue == in.end;
      const bool b_inside = ub == ao.begin && ue == ao.end;
      if (!a_inside && !b_inside) continue;

      const Cover cu2 = cover(lu.out, ub, ue);
      const Cover cl2 = cover(ll.in, ub, ue);
      if (!cu2.aligned || !cl2.aligned) continue;
      bool clean = true;
      for (std::size_t i = cu2.first; i < cu2.last; ++i) clean &= (i == face_idx) || !upper[i].is_face();
      for (std::size_t i = cl2.first; i < cl2.last; ++i) clean &= (i == j) || !lower[i].is_face();
      if (!clean) continue;

      std::optional<Simple2> aw = upper[face_idx].id;
      std::optional<Simple2> bw = lower[j].id;
      if (ao.begin != ub || ao.end != ue) {
        const auto l = slice(mid, ub, ao.begin);
        const auto rr = slice(mid, ao.end, ue);
        aw = inst.whisker(*aw, l, rr);
      }
      if (in.begin != ub || in.end != ue) {
        const auto l = slice(mid, ub, in.begin);
        const auto rr = slice(mid, in.end, ue);
        bw = inst.whisker(*bw, l, rr);
      }
      if (!aw || !bw) continue;
      const auto comp = inst.try_compose2_vertical(*aw, *bw);
      if (!comp) continue;

      const auto ct = inst.boundary2(*comp).target.items;
      Row nu(upper.begin(), upper.begin() + static_cast<std::ptrdiff_t>(cu2.first));
      nu.push_back(Cell::face(*comp));
      nu.insert(nu.end(), upper.begin() + static_cast<std::ptrdiff_t>(cu2.last), upper.end());
      Row nl(lower.begin(), lower.begin() + static_cast<std::ptrdiff_t>(cl2.first));
      for (auto f : ct) nl.push_back(Cell::wire(f));
      nl.insert(nl.end(), lower.begin() + static_cast<std::ptrdiff_t>(cl2.last), lower.end());
      upper = std::move(nu);
      lower = std::move(nl);
      return true;
    }
  }
  return false;
}

}  // namespace

StackDiagram normalize_diagram(const StackDiagram& input, Instance& inst) {
  StackDiagram d = input;
  for (;;) {
    bool changed = delete_identity_faces(d, inst);
    changed |= delete_wire_rows(d);
    if (changed) continue;
    if (!lift_or_merge_once(d, inst)) break;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Diagram axiom

namespace {

enum class StepKind { Composition, Decomposition };

struct Step {
  StepKind kind;
  std::size_t index;
};

std::optional<Step> classify_step(const SeqMorphism& from, const SeqMorphism& to, Instance& inst) {
  if (from.source != to.source || from.target != to.target) return std::nullopt;
  auto composes_into = [&](const SeqMorphism& longer, const SeqMorphism& shorter) -> std::optional<std::size_t> {
    if (longer.items.size() != shorter.items.size() + 1) return std::nullopt;
    for (std::size_t i = 0; i + 1 < longer.items.size(); ++i) {
      if (!std::equal(longer.items.begin(), longer.items.begin() + static_cast<std::ptrdiff_t>(i), shorter.items.begin())) break;
      if (!std::equal(longer.items.begin() + static_cast<std::ptrdiff_t>(i + 2), longer.items.end(),
                      shorter.items.begin() + static_cast<std::ptrdiff_t>(i + 1))) {
        continue;
      }
      const auto c = inst.try_compose1(longer.items[i], longer.items[i + 1]);
      if (c && *c == shorter.items[i]) return i;
    }
    return std::nullopt;
  };
  if (auto i = composes_into(from, to)) return Step{StepKind::Composition, *i};
  if (auto i = composes_into(to, from)) return Step{StepKind::Decomposition, *i};
  return std::nullopt;
}

}  // namespace

StackDiagram identification_path_diagram(const std::vector<SeqMorphism>& path, Instance& inst) {
  if (path.empty()) throw NotALoop("empty path");
  StackDiagram d = identity_diagram(path.front());
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const auto step = classify_step(path[s], path[s + 1], inst);
    if (!step) throw NotAdjacentStep("step " + std::to_string(s) + " is neither a composition nor a decomposition");
    const auto& longer = step->kind == StepKind::Composition ? path[s] : path[s + 1];
    Simple2 face = inst.identification2(longer.items[step->index], longer.items[step->index + 1]);
    if (step->kind == StepKind::Decomposition) face = inst.adjoint2(face);
    Row row;
    const auto& from = path[s].items;
    for (std::size_t i = 0; i < from.size();) {
      if (i == step->index) {
        row.push_back(Cell::face(face));
        i += step->kind == StepKind::Composition ? 2 : 1;
      } else {
        row.push_back(Cell::wire(from[i]));
        ++i;
      }
    }
    d = concat_v2(d, row_diagram(inst, path[s], std::move(row)));
  }
  return d;
}

VerificationReport check_diagram_axiom(const std::vector<SeqMorphism>& loop, Instance& inst) {
  if (loop.empty() || !(loop.front() == loop.back())) throw NotALoop("loop does not close");
  const StackDiagram D = identification_path_diagram(loop, inst);
  const SeqMorphism& phi0 = loop.front();

  VerificationReport rep;
  rep.suite = "diagram_axiom";

  auto reduces_to = [&](const StackDiagram& stacked, Simple2 expected) {
    const auto n = normalize_diagram(stacked, inst);
    if (n.rows.empty()) return inst.is_identity2(expected);
    if (n.rows.size() != 1 || n.rows[0].size() != 1 || !n.rows[0][0].is_face()) return false;
    return inst.simple2_equal(n.rows[0][0].id, expected);
  };

  std::size_t k = 0;
  for (Simple2 L : inst.probes_into(phi0)) {
    const bool ok = reduces_to(concat_v2(face_diagram(inst, L), D), L);
    rep.add({"L.D=L probe " + std::to_string(k++), ok ? CheckStatus::Pass : CheckStatus::Fail, 0.0, 0,
             ok ? "" : "composite differs from probe " + inst.describe2(L)});
  }
  k = 0;
  for (Simple2 L : inst.probes_out_of(phi0)) {
    const bool ok = reduces_to(concat_v2(D, face_diagram(inst, L)), L);
    rep.add({"D.L=L probe " + std::to_string(k++), ok ? CheckStatus::Pass : CheckStatus::Fail, 0.0, 0,
             ok ? "" : "composite differs from probe " + inst.describe2(L)});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Equivalence of 1-morphism representatives

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

std::vector<std::vector<Simple1>> neighbours(const std::vector<Simple1>& s, Instance& inst) {
  std::vector<std::vector<Simple1>> out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (auto c = inst.try_compose1(s[i], s[i + 1])) {
      auto n = s;
      n[i] = *c;
      n.erase(n.begin() + static_cast<std::ptrdiff_t>(i + 1));
      out.push_back(std::move(n));
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (inst.is_identity1(s[i])) {
      auto n = s;
      n.erase(n.begin() + static_cast<std::ptrdiff_t>(i));
      out.push_back(std::move(n));
    }
    for (const auto& [p, q] : inst.decompositions(s[i])) {
      auto n = s;
      n[i] = p;
      n.insert(n.begin() + static_cast<std::ptrdiff_t>(i + 1), q);
      out.push_back(std::move(n));
    }
  }
  return out;
}

}  // namespace

Tri equiv_seq(const SeqMorphism& a, const SeqMorphism& b, Instance& inst, int depth) {
  if (a.source != b.source || a.target != b.target) throw BoundaryMismatch("equiv_seq: endpoints differ");
  if (a.items == b.items) return Tri::True;

  // Layers alternate between the two sides; meeting means connected.
  std::set<std::vector<Simple1>> seen_a{a.items}, seen_b{b.items};
  std::vector<std::vector<Simple1>> front_a{a.items}, front_b{b.items};
  bool exhausted = false;
  for (int d = 0; d < depth; ++d) {
    auto& front = d % 2 == 0 ? front_a : front_b;
    auto& seen = d % 2 == 0 ? seen_a : seen_b;
    const auto& other = d % 2 == 0 ? seen_b : seen_a;
    std::vector<std::vector<Simple1>> next;
    for (const auto& s : front) {
      for (auto& n : neighbours(s, inst)) {
        if (other.count(n)) return Tri::True;
        if (seen.insert(n).second) next.push_back(std::move(n));
      }
    }
    front = std::move(next);
    if (front_a.empty() && front_b.empty()) {
      exhausted = true;
      break;
    }
  }
  if (exhausted && inst.decompositions_complete()) return Tri::False;
  return Tri::Unknown;
}

}  // namespace cobord2::p2c
