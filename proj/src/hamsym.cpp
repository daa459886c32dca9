#include "cobord2/hamsym.hpp"

#include <algorithm>
#include <tuple>

namespace cobord2::ham {

using p2c::ObjectId;
using p2c::Simple1;
using p2c::Simple2;

GroupSymbol group_of_labels(const std::vector<std::string>& labels) {
  GroupSymbol g;
  for (const auto& l : labels) g.circles.push_back({l, false});
  std::sort(g.circles.begin(), g.circles.end());
  return g;
}

GroupSymbol SpaceSymbol::left() const {
  switch (kind) {
    case Kind::Moduli: return group_of_labels(in_labels(components));
    case Kind::Cotangent: return group;
    case Kind::Point: return {};
  }
  return {};
}

GroupSymbol SpaceSymbol::right() const {
  switch (kind) {
    case Kind::Moduli: return group_of_labels(out_labels(components));
    case Kind::Cotangent: return group;
    case Kind::Point: return {};
  }
  return {};
}

std::optional<SpaceSymbol> try_compose1_sym(const SpaceSymbol& a, const SpaceSymbol& b) {
  if (!(a.right() == b.left())) return std::nullopt;
  using K = SpaceSymbol::Kind;
  if (a.kind == K::Cotangent || a.kind == K::Point) return b;
  if (b.kind == K::Cotangent || b.kind == K::Point) return a;
  std::set<std::string> circles;
  for (const auto& c : a.right().circles) circles.insert(c.label);
  auto glued = glue(a.components, b.components, circles);
  if (!glued) return std::nullopt;
  SpaceSymbol r;
  r.kind = K::Moduli;
  r.components = std::move(*glued);
  r.excised = a.excised;
  r.excised.insert(b.excised.begin(), b.excised.end());
  r.excised.insert(circles.begin(), circles.end());
  return r;
}

int dimension(const SpaceSymbol& s) {
  switch (s.kind) {
    case SpaceSymbol::Kind::Moduli: {
      int d = 0;
      for (const auto& c : s.components) d += 6 * c.genus() + 6 * c.boundary_count() - 6;
      return d;
    }
    case SpaceSymbol::Kind::Cotangent: return 6 * static_cast<int>(s.group.circles.size());
    case SpaceSymbol::Kind::Point: return 0;
  }
  return 0;
}

int euler_characteristic(const SpaceSymbol& s) {
  return s.kind == SpaceSymbol::Kind::Moduli ? euler_characteristic(s.components) : 0;
}

bool CorrSymbol::operator<(const CorrSymbol& o) const {
  return std::tie(kind, transposed, cap, labels, words, source, target, lpad, rpad) <
         std::tie(o.kind, o.transposed, o.cap, o.labels, o.words, o.source, o.target, o.lpad, o.rpad);
}

std::string to_string(CorrSymbol::Kind k) {
  switch (k) {
    case CorrSymbol::Kind::Diagonal: return "Diagonal";
    case CorrSymbol::Kind::Identification: return "Identification";
    case CorrSymbol::Kind::ZeroSection: return "ZeroSection";
    case CorrSymbol::Kind::HolTrivial: return "HolTrivial";
    case CorrSymbol::Kind::WeinsteinLambda: return "WeinsteinLambda";
    case CorrSymbol::Kind::Opaque: return "Opaque";
  }
  return "?";
}

bool weakly_transverse(CorrSymbol::Kind k) { return k != CorrSymbol::Kind::Opaque; }

// ---------------------------------------------------------------------------
// Interning

ObjectId HamSym::object(const GroupSymbol& g) {
  auto it = group_index_.find(g);
  if (it != group_index_.end()) return it->second;
  const auto id = static_cast<ObjectId>(groups_.size());
  groups_.push_back(g);
  group_index_.emplace(g, id);
  return id;
}

Simple1 HamSym::space(const SpaceSymbol& s) {
  auto it = space_index_.find(s);
  if (it != space_index_.end()) return it->second;
  const auto id = static_cast<Simple1>(spaces_.size());
  spaces_.push_back(s);
  src_.push_back(object(s.left()));
  tgt_.push_back(object(s.right()));
  space_index_.emplace(s, id);
  return id;
}

Simple1 HamSym::moduli(const Item& item, std::set<std::string> excised) {
  SpaceSymbol s;
  s.components = item;
  canonicalize(s.components);
  s.excised = std::move(excised);
  return space(s);
}

Simple2 HamSym::face(CorrSymbol c) {
  c.words = canonical_circle_set(std::move(c.words));
  std::sort(c.labels.begin(), c.labels.end());
  auto it = corr_index_.find(c);
  if (it != corr_index_.end()) return it->second;
  const auto id = static_cast<Simple2>(corrs_.size());
  corrs_.push_back(c);
  corr_index_.emplace(std::move(c), id);
  return id;
}

Simple1 HamSym::strip_excisions(Simple1 f) {
  SpaceSymbol s = space_of(f);
  if (s.excised.empty()) return f;
  s.excised.clear();
  return space(s);
}

Simple2 HamSym::strip_excisions2(Simple2 a) {
  CorrSymbol c = corr(a);
  for (auto& f : c.source) f = strip_excisions(f);
  for (auto& f : c.target) f = strip_excisions(f);
  return face(std::move(c));
}

// ---------------------------------------------------------------------------
// Instance interface

ObjectId HamSym::opposite_object(ObjectId x) {
  GroupSymbol g = group(x);
  for (auto& c : g.circles) c.reversed = !c.reversed;
  return object(g);
}

Simple1 HamSym::adjoint1(Simple1 f) {
  SpaceSymbol s = space_of(f);
  if (s.kind == SpaceSymbol::Kind::Moduli) {
    for (auto& c : s.components) std::swap(c.in, c.out);
    canonicalize(s.components);
  }
  return space(s);
}

std::optional<Simple1> HamSym::try_compose1(Simple1 f, Simple1 g) {
  auto r = try_compose1_sym(space_of(f), space_of(g));
  if (!r) return std::nullopt;
  return space(*r);
}

bool HamSym::is_identity1(Simple1 f) const { return space_of(f).kind == SpaceSymbol::Kind::Cotangent; }

Simple2 HamSym::identification2(Simple1 f, Simple1 g) {
  const auto fg = try_compose1(f, g);
  if (!fg) throw p2c::BoundaryMismatch("identification2: pieces do not glue");
  CorrSymbol c;
  c.kind = CorrSymbol::Kind::Identification;
  for (const auto& circle : group(target1(f)).circles) c.labels.push_back(circle.label);
  c.source = {f, g};
  c.target = {*fg};
  return face(std::move(c));
}

Simple2 HamSym::adjoint2(Simple2 a) {
  CorrSymbol c = corr(a);
  c.transposed = !c.transposed;
  std::swap(c.source, c.target);
  return face(std::move(c));
}

namespace {

bool dual_handle_pair(const std::vector<Word>& x, const std::vector<Word>& y) {
  if (x.size() != 1 || y.size() != 1) return false;
  HandleCurve hx, hy;
  return as_handle_curve(x[0], hx) && as_handle_curve(y[0], hy) && hx.handle == hy.handle && hx.is_a != hy.is_a;
}

}  // namespace

std::optional<Simple2> HamSym::try_compose2_vertical(Simple2 a, Simple2 b) {
  const CorrSymbol& A = corr(a);
  const CorrSymbol& B = corr(b);
  if (A.target != B.source) return std::nullopt;
  using K = CorrSymbol::Kind;
  if (A.kind == K::Diagonal) return b;
  if (B.kind == K::Diagonal) return a;

  auto diagonal = [&](const std::vector<Simple1>& s) {
    CorrSymbol d;
    d.kind = K::Diagonal;
    d.source = d.target = s;
    return face(std::move(d));
  };

  // A followed by its own adjoint.
  const bool adjoint_pair = A.kind == B.kind && A.transposed != B.transposed && A.cap == B.cap && A.labels == B.labels &&
                            A.words == B.words && A.lpad == B.lpad && A.rpad == B.rpad && A.source == B.target;
  if (adjoint_pair) {
    switch (A.kind) {
      case K::Identification: return diagonal(A.source);
      case K::HolTrivial:
        if (A.transposed) return diagonal(A.source);  // lift then project
        break;
      case K::ZeroSection:
        if (!A.transposed) return diagonal(A.source);
        break;
      default: break;
    }
  }

  if (A.kind == K::HolTrivial && B.kind == K::HolTrivial && A.lpad == B.lpad && A.rpad == B.rpad) {
    // 1-handle followed by a 2-handle meeting its belt once.
    if (A.transposed && !B.transposed && A.source == B.target && dual_handle_pair(A.words, B.words)) {
      return diagonal(A.source);
    }
    if (A.transposed == B.transposed) {
      CorrSymbol c = A;
      c.words.insert(c.words.end(), B.words.begin(), B.words.end());
      c.target = B.target;
      return face(std::move(c));
    }
  }
  return std::nullopt;
}

std::optional<Simple2> HamSym::whisker(Simple2 a, std::span<const Simple1> left, std::span<const Simple1> right) {
  CorrSymbol c = corr(a);
  std::vector<Simple1> s(left.begin(), left.end()), t(left.begin(), left.end());
  s.insert(s.end(), c.source.begin(), c.source.end());
  t.insert(t.end(), c.target.begin(), c.target.end());
  s.insert(s.end(), right.begin(), right.end());
  t.insert(t.end(), right.begin(), right.end());
  c.source = std::move(s);
  c.target = std::move(t);
  c.lpad += static_cast<int>(left.size());
  c.rpad += static_cast<int>(right.size());
  return face(std::move(c));
}

bool HamSym::is_identity2(Simple2 a) const { return corr(a).kind == CorrSymbol::Kind::Diagonal; }

p2c::Boundary2 HamSym::boundary2(Simple2 a) const {
  const CorrSymbol& c = corr(a);
  if (c.source.empty() || c.target.empty()) throw std::logic_error("correspondence symbol with empty boundary");
  auto seq = [&](const std::vector<Simple1>& s) { return p2c::SeqMorphism{source1(s.front()), target1(s.back()), s}; };
  return {seq(c.source), seq(c.target)};
}

std::string describe(const SpaceSymbol& s) {
  std::string out;
  switch (s.kind) {
    case SpaceSymbol::Kind::Moduli: out = "N{" + to_string(s.components) + "}"; break;
    case SpaceSymbol::Kind::Cotangent: {
      out = "T*G(";
      for (std::size_t i = 0; i < s.group.circles.size(); ++i) out += (i ? "," : "") + s.group.circles[i].label;
      out += ")";
      break;
    }
    case SpaceSymbol::Kind::Point: out = "pt"; break;
  }
  if (!s.excised.empty()) {
    out += " minus{";
    bool first = true;
    for (const auto& l : s.excised) {
      out += (first ? "" : ",") + l;
      first = false;
    }
    out += "}";
  }
  return out;
}

std::string describe(const CorrSymbol& c, const HamSym& h) {
  std::string out = to_string(c.kind);
  if (c.transposed) out += "^T";
  if (c.cap) out += "(cap)";
  if (!c.labels.empty()) {
    out += "{";
    for (std::size_t i = 0; i < c.labels.size(); ++i) out += (i ? "," : "") + c.labels[i];
    out += "}";
  }
  if (!c.words.empty()) {
    out += "{";
    for (std::size_t i = 0; i < c.words.size(); ++i) out += (i ? "; " : "") + c.words[i].str();
    out += "}";
  }
  auto seq = [&](const std::vector<Simple1>& s) {
    std::string r = "(";
    for (std::size_t i = 0; i < s.size(); ++i) r += (i ? ", " : "") + describe(h.space_of(s[i]));
    return r + ")";
  };
  return out + " : " + seq(c.source) + " -> " + seq(c.target);
}

std::string HamSym::describe2(Simple2 a) const { return describe(corr(a), *this); }

// ---------------------------------------------------------------------------
// Pattern rules

namespace {

struct Spans {
  std::vector<std::pair<std::size_t, std::size_t>> in, out;
};

Spans spans_of(const p2c::Row& row, const HamSym& h) {
  Spans s;
  std::size_t pi = 0, po = 0;
  for (const auto& c : row) {
    std::size_t ni = 1, no = 1;
    if (c.is_face()) {
      ni = h.corr(c.id).source.size();
      no = h.corr(c.id).target.size();
    }
    s.in.emplace_back(pi, pi + ni);
    s.out.emplace_back(po, po + no);
    pi += ni;
    po += no;
  }
  return s;
}

// Replaces the cells of `row` whose input span is [b, b+n) by wires.
void wire_out(p2c::Row& row, const HamSym& h, std::size_t b, std::size_t n, const std::vector<Simple1>& items) {
  const Spans sp = spans_of(row, h);
  std::size_t first = row.size(), last = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (sp.in[i].first >= b && sp.in[i].second <= b + n && sp.in[i].second > sp.in[i].first) {
      first = std::min(first, i);
      last = i + 1;
    }
  }
  p2c::Row next(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(first));
  for (auto f : items) next.push_back(p2c::Cell::wire(f));
  next.insert(next.end(), row.begin() + static_cast<std::ptrdiff_t>(last), row.end());
  row = std::move(next);
}

}  // namespace

bool apply_pattern_rules(p2c::StackDiagram& d, HamSym& h) {
  using K = CorrSymbol::Kind;
  for (std::size_t r = 0; r + 2 < d.rows.size(); ++r) {
    const Spans s0 = spans_of(d.rows[r], h);
    for (std::size_t i = 0; i < d.rows[r].size(); ++i) {
      const auto& cell = d.rows[r][i];
      if (!cell.is_face()) continue;
      const CorrSymbol& f1 = h.corr(cell.id);
      if (f1.lpad || f1.rpad || f1.source.size() != 2 || f1.target.size() != 2 || f1.labels.size() != 1) continue;
      const bool zero_one = f1.kind == K::ZeroSection && !f1.transposed;
      const bool two_three = f1.kind == K::Identification && f1.cap && f1.transposed;
      if (!zero_one && !two_three) continue;
      const std::string c = f1.labels.front();
      const std::vector<Word> dc = canonical_circle_set({Word::parse("d" + c)});
      const std::size_t b = s0.out[i].first;

      // Middle row: a wire over the first item and the boundary-loop face over the second.
      const auto& row1 = d.rows[r + 1];
      const Spans s1 = spans_of(row1, h);
      std::size_t k = 0;
      while (k < row1.size() && s1.in[k].first < b) ++k;
      if (k + 1 >= row1.size() || s1.in[k].first != b || row1[k].is_face() || !row1[k + 1].is_face()) continue;
      const CorrSymbol& f2 = h.corr(row1[k + 1].id);
      if (f2.kind != K::HolTrivial || f2.transposed != zero_one || f2.words != dc || f2.source.size() != 1 ||
          f2.target.size() != 1 || f2.lpad || f2.rpad) {
        continue;
      }

      // Last row: the closing face over the same two items.
      const auto& row2 = d.rows[r + 2];
      const Spans s2 = spans_of(row2, h);
      std::size_t m = 0;
      while (m < row2.size() && s2.in[m].first < b) ++m;
      if (m >= row2.size() || s2.in[m] != std::make_pair(b, b + 2) || !row2[m].is_face()) continue;
      const CorrSymbol& f3 = h.corr(row2[m].id);
      const bool closes = zero_one ? (f3.kind == K::Identification && f3.cap && !f3.transposed)
                                   : (f3.kind == K::ZeroSection && f3.transposed);
      if (!closes || f3.labels != f1.labels || f3.lpad || f3.rpad || f3.target != f1.source) continue;

      const auto items = f1.source;
      wire_out(d.rows[r], h, b, 2, items);
      wire_out(d.rows[r + 1], h, b, 2, items);
      wire_out(d.rows[r + 2], h, b, 2, items);
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Equivalence

p2c::StackDiagram normalize_mod_equiv(const p2c::StackDiagram& d, HamSym& h) {
  for (const auto& row : d.rows) {
    for (const auto& cell : row) {
      if (!cell.is_face()) continue;
      const CorrSymbol& c = h.corr(cell.id);
      if (weakly_transverse(c.kind)) continue;
      bool touches_excision = false;
      for (auto f : c.source) touches_excision |= !h.space_of(f).excised.empty();
      for (auto f : c.target) touches_excision |= !h.space_of(f).excised.empty();
      if (touches_excision) {
        throw TransversalityUnknown("no weak-transversality certificate for " + describe(c, h));
      }
    }
  }
  p2c::StackDiagram s = d;
  for (auto& f : s.source.items) f = h.strip_excisions(f);
  for (auto& f : s.target.items) f = h.strip_excisions(f);
  for (auto& row : s.rows) {
    for (auto& cell : row) cell.id = cell.is_face() ? h.strip_excisions2(cell.id) : h.strip_excisions(cell.id);
  }
  s = p2c::normalize_diagram(s, h);
  while (apply_pattern_rules(s, h)) s = p2c::normalize_diagram(s, h);
  return s;
}

namespace {

class Canonicalizer {
 public:
  Canonicalizer(const HamSym& h, std::set<std::string> external) : h_(h), external_(std::move(external)) {}

  std::string label(const std::string& l) {
    if (external_.count(l)) return l;
    auto [it, fresh] = labels_.emplace(l, "~" + std::to_string(labels_.size()));
    return it->second;
  }
  std::string handle(int id) {
    auto [it, fresh] = handles_.emplace(id, static_cast<int>(handles_.size()) + 1);
    return std::to_string(it->second);
  }

  std::string item(const Item& item) {
    // Order components by data that does not depend on internal names.
    std::vector<std::pair<std::tuple<std::vector<std::string>, std::vector<std::string>, std::size_t, std::size_t, int>, std::size_t>> keyed;
    for (std::size_t i = 0; i < item.size(); ++i) {
      const auto& c = item[i];
      std::vector<std::string> ein, eout;
      std::size_t iin = 0, iout = 0;
      for (const auto& l : c.in) external_.count(l) ? ein.push_back(l) : void(++iin);
      for (const auto& l : c.out) external_.count(l) ? eout.push_back(l) : void(++iout);
      keyed.push_back({{ein, eout, iin, iout, c.genus()}, i});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out;
    for (const auto& [key, i] : keyed) {
      const auto& c = item[i];
      std::vector<std::string> hs, ins, outs;
      for (int hid : c.handles) hs.push_back(handle(hid));
      for (const auto& l : c.in) ins.push_back(label(l));
      for (const auto& l : c.out) outs.push_back(label(l));
      std::sort(hs.begin(), hs.end());
      std::sort(ins.begin(), ins.end());
      std::sort(outs.begin(), outs.end());
      out += "[";
      for (const auto& x : hs) out += "h" + x + " ";
      for (const auto& x : ins) out += "<" + x + " ";
      for (const auto& x : outs) out += ">" + x + " ";
      out += "]";
    }
    return out;
  }

  std::string space(Simple1 f) {
    const SpaceSymbol& s = h_.space_of(f);
    switch (s.kind) {
      case SpaceSymbol::Kind::Moduli: return "N" + item(s.components);
      case SpaceSymbol::Kind::Cotangent: {
        std::string r = "T(";
        for (const auto& c : s.group.circles) r += label(c.label) + (c.reversed ? "- " : " ");
        return r + ")";
      }
      case SpaceSymbol::Kind::Point: return "pt";
    }
    return "?";
  }

  std::string seq(const std::vector<Simple1>& s) {
    std::string r = "(";
    for (auto f : s) r += space(f) + ";";
    return r + ")";
  }

  Word word(const Word& w) {
    Word r;
    for (const auto& l : w.letters) {
      Letter m = l;
      const char fam = l.gen[0];
      if (fam == 'a' || fam == 'b') {
        m.gen = std::string(1, fam) + handle(std::stoi(l.gen.substr(1)));
      } else {
        m.gen = std::string(1, fam) + label(l.gen.substr(1));
      }
      r.letters.push_back(std::move(m));
    }
    return r;
  }

  std::string face(Simple2 a) {
    const CorrSymbol& c = h_.corr(a);
    std::string r = to_string(c.kind) + (c.transposed ? "^T" : "") + (c.cap ? "(cap)" : "");
    std::vector<std::string> ls;
    for (const auto& l : c.labels) ls.push_back(label(l));
    std::sort(ls.begin(), ls.end());
    r += "{";
    for (const auto& l : ls) r += l + " ";
    r += "}{";
    std::vector<Word> ws;
    for (const auto& w : c.words) ws.push_back(word(w));
    for (const auto& w : canonical_circle_set(ws)) r += w.str() + "; ";
    r += "}" + std::to_string(c.lpad) + "," + std::to_string(c.rpad);
    return r + seq(c.source) + "->" + seq(c.target);
  }

 private:
  const HamSym& h_;
  std::set<std::string> external_;
  std::map<std::string, std::string> labels_;
  std::map<int, int> handles_;
};

std::set<std::string> boundary_labels(const p2c::StackDiagram& d, const HamSym& h) {
  std::set<std::string> ext;
  for (auto x : {d.source.source, d.source.target}) {
    for (const auto& c : h.group(x).circles) ext.insert(c.label);
  }
  return ext;
}

}  // namespace

std::string canonical_form(const p2c::StackDiagram& d, const HamSym& h) {
  Canonicalizer k(h, boundary_labels(d, h));
  std::string out = "S" + k.seq(d.source.items) + "\nT" + k.seq(d.target.items) + "\n";
  for (const auto& row : d.rows) {
    for (const auto& cell : row) out += cell.is_face() ? "F " + k.face(cell.id) + " | " : "w " + k.space(cell.id) + " | ";
    out += "\n";
  }
  return out;
}

bool equal_2morphisms(const p2c::StackDiagram& a, const p2c::StackDiagram& b, HamSym& h) {
  const auto na = normalize_mod_equiv(a, h);
  const auto nb = normalize_mod_equiv(b, h);
  const std::string ca = canonical_form(na, h);
  const std::string cb = canonical_form(nb, h);
  auto boundary = [](const std::string& s) {
    const auto first = s.find('\n');
    return s.substr(0, s.find('\n', first + 1));
  };
  if (boundary(ca) != boundary(cb)) throw p2c::BoundaryMismatch("equal_2morphisms: boundaries differ");
  return ca == cb;
}

}  // namespace cobord2::ham
