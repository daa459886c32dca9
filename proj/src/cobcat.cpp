#include "cobord2/cobcat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cobord2::cob {

namespace {

using Kind = CobStep::Kind;

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::vector<std::string> split_list(const std::string& v, char sep) {
  std::vector<std::string> r;
  std::stringstream ss(v);
  std::string x;
  while (std::getline(ss, x, sep)) {
    const auto b = x.find_first_not_of(" \t");
    const auto e = x.find_last_not_of(" \t");
    if (b != std::string::npos) r.push_back(x.substr(b, e - b + 1));
  }
  return r;
}

std::set<std::string> all_labels(const Surface& s) {
  std::set<std::string> r;
  for (const auto& item : s) {
    for (const auto& c : item) {
      r.insert(c.in.begin(), c.in.end());
      r.insert(c.out.begin(), c.out.end());
    }
  }
  return r;
}

void check_item_index(const Surface& s, int i) {
  if (i < 0 || i >= static_cast<int>(s.size())) throw InvalidStep("item " + std::to_string(i) + " out of range");
}
void check_interface(const Surface& s, int p) {
  if (p < 1 || p >= static_cast<int>(s.size())) throw InvalidStep("interface " + std::to_string(p) + " out of range");
}

Component& anchored(Item& item, const std::string& anchor) {
  const int c = find_component(item, anchor);
  if (c < 0) throw InvalidStep("no component carries '" + anchor + "'");
  return item[c];
}

// Removes the circles `S` between l and r. Full removal merges the two items;
// otherwise the components of l meeting S must be caps, which move across.
std::vector<Item> remove_circles(const Item& l, const Item& r, const std::vector<std::string>& S) {
  const auto outs = out_labels(l);
  const std::set<std::string> set(S.begin(), S.end());
  if (S.empty()) throw InvalidStep("remove: no circles");
  for (const auto& c : S) {
    if (!std::binary_search(outs.begin(), outs.end(), c)) throw InvalidStep("remove: '" + c + "' is not on the interface");
  }
  if (S == outs) {
    auto g = glue(l, r, set);
    if (!g) throw InvalidStep("remove: closed component");
    return {*g};
  }
  Item caps, rest;
  for (const auto& c : l) {
    const bool meets = std::any_of(c.out.begin(), c.out.end(), [&](const auto& x) { return set.count(x) > 0; });
    if (!meets) {
      rest.push_back(c);
      continue;
    }
    if (!c.in.empty()) throw InvalidStep("remove: component meeting the circles has incoming boundary");
    for (const auto& x : c.out) {
      if (!set.count(x)) throw InvalidStep("remove: cap carries a circle outside the removed set");
    }
    caps.push_back(c);
  }
  // Cap handles move above the ids already used on the right.
  int next = max_handle(r) + 1;
  for (auto& c : caps) {
    for (auto& h : c.handles) h = next++;
  }
  auto g = glue(caps, r, set);
  if (!g) throw InvalidStep("remove: closed component");
  canonicalize(rest);
  return {rest, *g};
}

Word belt_around(const Component& q) {
  std::vector<std::string> labels = q.in;
  labels.insert(labels.end(), q.out.begin(), q.out.end());
  std::sort(labels.begin(), labels.end());
  return separating_word(q.handles, labels);
}

}  // namespace

std::vector<std::string> check_surface(const Surface& s) {
  std::vector<std::string> v;
  if (s.empty()) v.push_back("surface has no items");
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::set<std::string> seen;
    std::set<int> hs;
    for (const auto& c : s[i]) {
      if (c.boundary_count() == 0) v.push_back("item " + std::to_string(i) + ": closed component");
      for (const auto* side : {&c.in, &c.out}) {
        for (const auto& l : *side) {
          if (!seen.insert(l).second) v.push_back("item " + std::to_string(i) + ": label '" + l + "' repeated");
        }
      }
      for (int h : c.handles) {
        if (h < 1 || !hs.insert(h).second) v.push_back("item " + std::to_string(i) + ": bad handle id " + std::to_string(h));
      }
    }
    if (i > 0 && out_labels(s[i - 1]) != in_labels(s[i])) {
      v.push_back("interface " + std::to_string(i) + ": labels do not match");
    }
  }
  return v;
}

StepResult apply_step(const Surface& s, const CobStep& step) {
  StepResult res;
  Surface out = s;
  const int p = step.position;
  switch (step.kind) {
    case Kind::Cylinder: break;
    case Kind::ZeroHandle: {
      check_interface(s, p);
      if (step.circles.size() != 1) throw InvalidStep("zero: needs one circle");
      const auto& c = step.circles[0];
      if (all_labels(s).count(c)) throw InvalidStep("zero: label '" + c + "' already used");
      out[p - 1].push_back(Component{{}, {}, {c}});
      out[p].push_back(Component{{}, {c}, {}});
      canonicalize(out[p - 1]);
      canonicalize(out[p]);
      break;
    }
    case Kind::ThreeHandle: {
      check_interface(s, p);
      if (step.circles.size() != 1) throw InvalidStep("three: needs one circle");
      const auto& c = step.circles[0];
      const Component d0{{}, {}, {c}}, d1{{}, {c}, {}};
      auto l = std::find(out[p - 1].begin(), out[p - 1].end(), d0);
      auto r = std::find(out[p].begin(), out[p].end(), d1);
      if (l == out[p - 1].end() || r == out[p].end()) throw InvalidStep("three: no sphere on '" + c + "'");
      out[p - 1].erase(l);
      out[p].erase(r);
      break;
    }
    case Kind::CircleRemove: {
      check_interface(s, p);
      auto S = step.circles;
      std::sort(S.begin(), S.end());
      const auto pieces = remove_circles(s[p - 1], s[p], S);
      out.erase(out.begin() + p - 1, out.begin() + p + 1);
      out.insert(out.begin() + p - 1, pieces.begin(), pieces.end());
      break;
    }
    case Kind::CircleInsert: {
      auto C = step.circles;
      std::sort(C.begin(), C.end());
      const auto used = all_labels(s);
      for (const auto& c : C) {
        if (used.count(c)) throw InvalidStep("insert: label '" + c + "' already used");
      }
      Item l = step.left, r = step.right;
      canonicalize(l);
      canonicalize(r);
      if (out_labels(l) != in_labels(r)) throw InvalidStep("insert: pieces do not share their interface");
      if (!step.repartition) {
        check_item_index(s, p);
        if (out_labels(l) != C) throw InvalidStep("insert: interface is not the inserted circles");
        const auto back = remove_circles(l, r, C);
        if (back.size() != 1 || back[0] != s[p]) throw InvalidStep("insert: pieces do not glue back to item " + std::to_string(p));
        out[p] = l;
        out.insert(out.begin() + p + 1, r);
      } else {
        check_interface(s, p);
        const auto back = remove_circles(l, r, C);
        if (back.size() != 2 || back[0] != s[p - 1] || back[1] != s[p]) {
          throw InvalidStep("insert: caps do not move back to the given items");
        }
        out[p - 1] = l;
        out[p] = r;
      }
      break;
    }
    case Kind::Compression2: {
      if (step.attach.empty()) throw InvalidStep("h2: no attaching circles");
      for (const auto& a : step.attach) {
        check_item_index(out, a.item);
        Item& item = out[a.item];
        Component& c = anchored(item, a.anchor);
        const Word w = free_reduce(a.word);
        HandleCurve hc;
        std::vector<int> H;
        std::vector<std::string> L;
        if (as_handle_curve(w, hc)) {
          auto it = std::find(c.handles.begin(), c.handles.end(), hc.handle);
          if (it == c.handles.end()) throw InvalidStep("h2: handle " + std::to_string(hc.handle) + " is not on the component");
          c.handles.erase(it);
        } else if (as_separating(w, H, L)) {
          Component p1, p2;
          for (int h : c.handles) (std::count(H.begin(), H.end(), h) ? p1 : p2).handles.push_back(h);
          for (const auto& l : c.in) (std::count(L.begin(), L.end(), l) ? p1 : p2).in.push_back(l);
          for (const auto& l : c.out) (std::count(L.begin(), L.end(), l) ? p1 : p2).out.push_back(l);
          if (p1.handles.size() != H.size() || static_cast<std::size_t>(p1.boundary_count()) != L.size()) {
            throw InvalidStep("h2: separating circle names handles or circles not on the component");
          }
          if (p1.boundary_count() == 0 || p2.boundary_count() == 0) throw InvalidStep("h2: closed component");
          c = p1;
          item.push_back(p2);
        } else {
          throw InvalidStep("h2: attaching word '" + a.word.str() + "' is neither a handle curve nor a separating circle");
        }
        canonicalize(item);
      }
      break;
    }
    case Kind::Compression1: {
      if (step.handles.empty()) throw InvalidStep("h1: no handles");
      for (const auto& h : step.handles) {
        check_item_index(out, h.item);
        Item& item = out[h.item];
        if (h.self) {
          if (h.handle < 1) throw InvalidStep("h1: bad handle id");
          for (const auto& c : item) {
            if (std::count(c.handles.begin(), c.handles.end(), h.handle)) {
              throw InvalidStep("h1: handle id " + std::to_string(h.handle) + " already used");
            }
          }
          anchored(item, h.anchor).handles.push_back(h.handle);
          res.belts[h.item].push_back(Word::parse("a" + std::to_string(h.handle)));
        } else {
          const int pi = find_component(item, h.anchor), qi = find_component(item, h.other);
          if (pi < 0 || qi < 0) throw InvalidStep("h1: no component carries the join anchors");
          if (pi == qi) throw InvalidStep("h1: join anchors lie on one component");
          const Component q = item[qi];
          res.belts[h.item].push_back(belt_around(q));
          Component& pc = item[pi];
          pc.handles.insert(pc.handles.end(), q.handles.begin(), q.handles.end());
          pc.in.insert(pc.in.end(), q.in.begin(), q.in.end());
          pc.out.insert(pc.out.end(), q.out.begin(), q.out.end());
          item.erase(item.begin() + qi);
        }
        canonicalize(item);
      }
      break;
    }
  }
  const auto v = check_surface(out);
  if (!v.empty()) throw InvalidStep(v.front());
  res.surface = std::move(out);
  return res;
}

std::vector<Surface> surfaces(const CobSeq& y) {
  const auto v = check_surface(y.source);
  if (!v.empty()) throw InvalidStep("source: " + v.front());
  std::vector<Surface> r{y.source};
  for (std::size_t i = 0; i < y.steps.size(); ++i) {
    try {
      r.push_back(apply_step(r.back(), y.steps[i]).surface);
    } catch (const InvalidStep& e) {
      throw InvalidStep("step " + std::to_string(i) + ": " + e.what());
    }
  }
  return r;
}

Surface target(const CobSeq& y) { return surfaces(y).back(); }

std::vector<std::string> validate(const CobSeq& y) {
  try {
    surfaces(y);
  } catch (const InvalidStep& e) {
    return {e.what()};
  }
  return {};
}

CobSeq concat(const CobSeq& a, const CobSeq& b) {
  if (target(a) != b.source) throw InvalidStep("concat: target and source differ");
  CobSeq r = a;
  r.steps.insert(r.steps.end(), b.steps.begin(), b.steps.end());
  return r;
}

std::vector<std::string> end_labels(const Surface& s) {
  if (s.empty()) return {};
  auto r = in_labels(s.front());
  const auto o = out_labels(s.back());
  r.insert(r.end(), o.begin(), o.end());
  return r;
}

int euler_characteristic(const Surface& s) {
  int chi = 0;
  for (const auto& item : s) chi += cobord2::euler_characteristic(item);
  return chi;
}

Surface standard_decomposition(const Component& c, const std::string& fresh) {
  if (c.boundary_count() > 0) return {{c}};
  const std::size_t g1 = (c.handles.size() + 1) / 2;
  Component l{{c.handles.begin(), c.handles.begin() + static_cast<std::ptrdiff_t>(g1)}, {}, {fresh}};
  Component r{{c.handles.begin() + static_cast<std::ptrdiff_t>(g1), c.handles.end()}, {fresh}, {}};
  return {{l}, {r}};
}

// ---------------------------------------------------------------------------
// Step text

std::string format_step(const CobStep& s) {
  switch (s.kind) {
    case Kind::Cylinder: return "cylinder";
    case Kind::ZeroHandle: return "zero " + std::to_string(s.position) + " " + join(s.circles, ",");
    case Kind::ThreeHandle: return "three " + std::to_string(s.position) + " " + join(s.circles, ",");
    case Kind::CircleRemove: return "remove " + std::to_string(s.position) + " " + join(s.circles, ",");
    case Kind::CircleInsert:
      return std::string(s.repartition ? "repart " : "split ") + std::to_string(s.position) + " " + join(s.circles, ",") +
             " | " + to_string(s.left) + " | " + to_string(s.right);
    case Kind::Compression2: {
      std::vector<std::string> parts;
      for (const auto& a : s.attach) parts.push_back(std::to_string(a.item) + " " + a.anchor + " " + a.word.str());
      return "h2 " + join(parts, "; ");
    }
    case Kind::Compression1: {
      std::vector<std::string> parts;
      for (const auto& h : s.handles) {
        parts.push_back(std::to_string(h.item) +
                        (h.self ? " self " + h.anchor + " " + std::to_string(h.handle) : " join " + h.anchor + " " + h.other));
      }
      return "h1 " + join(parts, "; ");
    }
  }
  return "";
}

namespace {

int to_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

}  // namespace

CobStep parse_step(const std::string& text) {
  std::istringstream in(text);
  std::string head;
  in >> head;
  std::string rest;
  std::getline(in, rest);
  CobStep s;
  auto tokens = [](const std::string& t) {
    std::istringstream ts(t);
    std::vector<std::string> r;
    std::string x;
    while (ts >> x) r.push_back(x);
    return r;
  };
  if (head == "cylinder") {
    if (!tokens(rest).empty()) throw std::invalid_argument("cylinder takes no arguments");
    return s;
  }
  if (head == "zero" || head == "three" || head == "remove") {
    const auto t = tokens(rest);
    if (t.size() != 2) throw std::invalid_argument(head + ": expected '<p> <circles>'");
    s.kind = head == "zero" ? Kind::ZeroHandle : head == "three" ? Kind::ThreeHandle : Kind::CircleRemove;
    s.position = to_int(t[0]);
    s.circles = split_list(t[1], ',');
    if (s.kind != Kind::CircleRemove && s.circles.size() != 1) throw std::invalid_argument(head + ": one circle expected");
    return s;
  }
  if (head == "split" || head == "repart") {
    const auto parts = split_list(rest, '|');
    if (parts.size() != 3) throw std::invalid_argument(head + ": expected '<p> <circles> | <item> | <item>'");
    const auto t = tokens(parts[0]);
    if (t.size() != 2) throw std::invalid_argument(head + ": expected '<p> <circles>'");
    s.kind = Kind::CircleInsert;
    s.repartition = head == "repart";
    s.position = to_int(t[0]);
    s.circles = split_list(t[1], ',');
    s.left = parse_item(parts[1]);
    s.right = parse_item(parts[2]);
    return s;
  }
  if (head == "h2") {
    s.kind = Kind::Compression2;
    for (const auto& part : split_list(rest, ';')) {
      const auto t = tokens(part);
      if (t.size() < 3) throw std::invalid_argument("h2: expected '<item> <anchor> <word>'");
      Attachment a;
      a.item = to_int(t[0]);
      a.anchor = t[1];
      std::string w;
      for (std::size_t i = 2; i < t.size(); ++i) w += (i > 2 ? " " : "") + t[i];
      a.word = Word::parse(w);
      s.attach.push_back(std::move(a));
    }
    if (s.attach.empty()) throw std::invalid_argument("h2: no attaching circles");
    return s;
  }
  if (head == "h1") {
    s.kind = Kind::Compression1;
    for (const auto& part : split_list(rest, ';')) {
      const auto t = tokens(part);
      if (t.size() != 4 || (t[1] != "self" && t[1] != "join")) {
        throw std::invalid_argument("h1: expected '<item> self <anchor> <h>' or '<item> join <P> <Q>'");
      }
      Handle1 h;
      h.item = to_int(t[0]);
      h.self = t[1] == "self";
      h.anchor = t[2];
      if (h.self) h.handle = to_int(t[3]);
      else h.other = t[3];
      s.handles.push_back(std::move(h));
    }
    if (s.handles.empty()) throw std::invalid_argument("h1: no handles");
    return s;
  }
  throw std::invalid_argument("unknown step '" + head + "'");
}

// ---------------------------------------------------------------------------
// Moves

namespace {

std::vector<std::string> tokens_of(const std::string& t) {
  std::istringstream ts(t);
  std::vector<std::string> r;
  std::string x;
  while (ts >> x) r.push_back(x);
  return r;
}

void need(bool ok, const std::string& msg) {
  if (!ok) throw PatternMismatch(msg);
}

std::string rename(const std::string& l, const std::string& from, const std::string& to) { return l == from ? to : l; }

void rename_item(Item& item, const std::string& from, const std::string& to) {
  for (auto& c : item) {
    for (auto& l : c.in) l = rename(l, from, to);
    for (auto& l : c.out) l = rename(l, from, to);
  }
  canonicalize(item);
}

Word rename_word(const Word& w, const std::string& from, const std::string& to) {
  Word r = w;
  for (auto& l : r.letters) {
    if ((l.gen[0] == 'd' || l.gen[0] == 'g') && l.gen.substr(1) == from) l.gen = l.gen.substr(0, 1) + to;
  }
  return r;
}

std::set<std::string> labels_everywhere(const CobSeq& y, const std::vector<Surface>& ss) {
  std::set<std::string> r;
  for (const auto& s : ss) {
    const auto l = all_labels(s);
    r.insert(l.begin(), l.end());
  }
  for (const auto& st : y.steps) {
    r.insert(st.circles.begin(), st.circles.end());
    for (const auto* item : {&st.left, &st.right}) {
      for (const auto& l : in_labels(*item)) r.insert(l);
      for (const auto& l : out_labels(*item)) r.insert(l);
    }
  }
  return r;
}

std::size_t step_index(const CobSeq& y, const std::string& tok, std::size_t extra = 0) {
  const int i = to_int(tok);
  need(i >= 0 && static_cast<std::size_t>(i) + extra <= y.steps.size(), "step index out of range");
  return static_cast<std::size_t>(i);
}

bool is_circle_step(const CobStep& s) { return s.kind == Kind::CircleRemove || s.kind == Kind::CircleInsert; }

std::set<int> support(const CobStep& s) {
  switch (s.kind) {
    case Kind::Cylinder: return {};
    case Kind::ZeroHandle:
    case Kind::ThreeHandle: return {s.position - 1, s.position};
    case Kind::Compression2: {
      std::set<int> r;
      for (const auto& a : s.attach) r.insert(a.item);
      return r;
    }
    case Kind::Compression1: {
      std::set<int> r;
      for (const auto& h : s.handles) r.insert(h.item);
      return r;
    }
    default: throw PatternMismatch("switch: circle insertion/removal steps change the item count");
  }
}

CobStep inverse_circle_step(const Surface& before, const CobStep& st) {
  CobStep inv;
  inv.circles = st.circles;
  std::sort(inv.circles.begin(), inv.circles.end());
  if (st.kind == Kind::CircleInsert) {
    inv.kind = Kind::CircleRemove;
    inv.position = st.repartition ? st.position : st.position + 1;
    return inv;
  }
  auto outs = out_labels(before.at(st.position - 1));
  inv.kind = Kind::CircleInsert;
  inv.repartition = inv.circles != outs;
  inv.position = inv.repartition ? st.position : st.position - 1;
  inv.left = before.at(st.position - 1);
  inv.right = before.at(st.position);
  return inv;
}

const Handle1& single_handle(const CobStep& s, const std::string& what) {
  need(s.kind == Kind::Compression1 && s.handles.size() == 1, what + ": expected a single 1-handle step");
  return s.handles[0];
}
const Attachment& single_attachment(const CobStep& s, const std::string& what) {
  need(s.kind == Kind::Compression2 && s.attach.size() == 1, what + ": expected a single 2-handle step");
  return s.attach[0];
}

}  // namespace

CobSeq apply_move(const CobSeq& y, const std::string& move) {
  const auto t = tokens_of(move);
  need(!t.empty(), "empty move");
  const std::string& m = t[0];
  std::vector<Surface> ss;
  try {
    ss = surfaces(y);
  } catch (const InvalidStep& e) {
    throw PatternMismatch(std::string("input sequence invalid: ") + e.what());
  }
  CobSeq r = y;
  auto& st = r.steps;

  try {
    if (m == "relabel") {
      need(t.size() == 3, "relabel <from> <to>");
      const auto ends = end_labels(y.source);
      need(!std::count(ends.begin(), ends.end(), t[1]), "relabel: '" + t[1] + "' lies on the boundary");
      for (const auto& item : y.source) {
        need(find_component(item, t[1]) < 0, "relabel: '" + t[1] + "' belongs to the source surface");
      }
      const auto used = labels_everywhere(y, ss);
      need(used.count(t[1]) > 0, "relabel: '" + t[1] + "' does not occur");
      need(!used.count(t[2]), "relabel: '" + t[2] + "' already occurs");
      for (auto& item : r.source) rename_item(item, t[1], t[2]);
      for (auto& s : st) {
        for (auto& c : s.circles) c = rename(c, t[1], t[2]);
        rename_item(s.left, t[1], t[2]);
        rename_item(s.right, t[1], t[2]);
        for (auto& a : s.attach) {
          a.anchor = rename(a.anchor, t[1], t[2]);
          a.word = rename_word(a.word, t[1], t[2]);
        }
        for (auto& h : s.handles) {
          h.anchor = rename(h.anchor, t[1], t[2]);
          h.other = rename(h.other, t[1], t[2]);
        }
      }
    } else if (m == "cylinder+") {
      need(t.size() == 2, "cylinder+ <i>");
      st.insert(st.begin() + static_cast<std::ptrdiff_t>(step_index(y, t[1])), CobStep::cylinder());
    } else if (m == "cylinder-") {
      need(t.size() == 2, "cylinder- <i>");
      const auto i = step_index(y, t[1], 1);
      need(st[i].kind == Kind::Cylinder, "cylinder-: step is not a cylinder");
      st.erase(st.begin() + static_cast<std::ptrdiff_t>(i));
    } else if (m == "circles+") {
      need(t.size() >= 3, "circles+ <i> <step>");
      const auto i = step_index(y, t[1]);
      const auto text = move.substr(move.find(t[1], move.find(m) + m.size()) + t[1].size());
      CobStep s = parse_step(text);
      need(is_circle_step(s), "circles+: not a circle insertion or removal");
      apply_step(ss[i], s);
      const CobStep inv = inverse_circle_step(ss[i], s);
      st.insert(st.begin() + static_cast<std::ptrdiff_t>(i), {s, inv});
    } else if (m == "circles-") {
      need(t.size() == 2, "circles- <i>");
      const auto i = step_index(y, t[1], 2);
      need(is_circle_step(st[i]) && is_circle_step(st[i + 1]), "circles-: steps are not circle insertions/removals");
      need(ss[i] == ss[i + 2], "circles-: the pair does not cancel");
      st.erase(st.begin() + static_cast<std::ptrdiff_t>(i), st.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (m == "imbricate") {
      need(t.size() == 2, "imbricate <i>");
      const auto i = step_index(y, t[1], 2);
      need(st[i].kind == st[i + 1].kind && (st[i].kind == Kind::Compression1 || st[i].kind == Kind::Compression2),
           "imbricate: steps are not compressions of one index");
      st[i].attach.insert(st[i].attach.end(), st[i + 1].attach.begin(), st[i + 1].attach.end());
      st[i].handles.insert(st[i].handles.end(), st[i + 1].handles.begin(), st[i + 1].handles.end());
      st.erase(st.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    } else if (m == "unimbricate") {
      need(t.size() == 3, "unimbricate <i> <k>");
      const auto i = step_index(y, t[1], 1);
      const int k = to_int(t[2]);
      CobStep& s = st[i];
      const int n = static_cast<int>(s.kind == Kind::Compression2 ? s.attach.size() : s.handles.size());
      need(s.kind == Kind::Compression1 || s.kind == Kind::Compression2, "unimbricate: not a compression");
      need(k >= 1 && k < n, "unimbricate: split point out of range");
      CobStep second = s;
      if (s.kind == Kind::Compression2) {
        second.attach.assign(s.attach.begin() + k, s.attach.end());
        s.attach.resize(k);
      } else {
        second.handles.assign(s.handles.begin() + k, s.handles.end());
        s.handles.resize(k);
      }
      st.insert(st.begin() + static_cast<std::ptrdiff_t>(i) + 1, second);
    } else if (m == "switch") {
      need(t.size() == 2, "switch <i>");
      const auto i = step_index(y, t[1], 2);
      const auto a = support(st[i]), b = support(st[i + 1]);
      for (int x : a) need(!b.count(x), "switch: steps touch the same item");
      std::swap(st[i], st[i + 1]);
    } else if (m == "create01" || m == "create23") {
      need(t.size() == 5, m + " <i> <p> <c> <anchor>");
      const auto i = step_index(y, t[1], 1);
      need(st[i].kind == Kind::Cylinder, m + ": step is not a cylinder");
      const int p = to_int(t[2]);
      const std::string& c = t[3];
      const Surface& before = ss[i];
      need(p >= 1 && p < static_cast<int>(before.size()), m + ": interface out of range");
      need(!out_labels(before[p - 1]).empty(), m + ": interface is empty");
      need(find_component(before[p], t[4]) >= 0, m + ": no component carries the anchor");
      std::vector<CobStep> seq(3);
      if (m == "create01") {
        seq[0].kind = Kind::ZeroHandle;
        seq[0].position = p;
        seq[0].circles = {c};
        seq[1].kind = Kind::Compression1;
        seq[1].handles = {Handle1{p, false, t[4], 0, c}};
        seq[2].kind = Kind::CircleRemove;
        seq[2].position = p;
        seq[2].circles = {c};
      } else {
        Item l = before[p - 1], rr = before[p];
        l.push_back(Component{{}, {}, {c}});
        rr[find_component(rr, t[4])].in.push_back(c);
        canonicalize(l);
        canonicalize(rr);
        seq[0].kind = Kind::CircleInsert;
        seq[0].repartition = true;
        seq[0].position = p;
        seq[0].circles = {c};
        seq[0].left = l;
        seq[0].right = rr;
        seq[1].kind = Kind::Compression2;
        seq[1].attach = {Attachment{p, t[4], Word::parse("d" + c)}};
        seq[2].kind = Kind::ThreeHandle;
        seq[2].position = p;
        seq[2].circles = {c};
      }
      st.erase(st.begin() + static_cast<std::ptrdiff_t>(i));
      st.insert(st.begin() + static_cast<std::ptrdiff_t>(i), seq.begin(), seq.end());
    } else if (m == "cancel01" || m == "cancel23") {
      need(t.size() == 2, m + " <i>");
      const auto i = step_index(y, t[1], 3);
      const bool zero_one = m == "cancel01";
      const CobStep &a = st[i], &b = st[i + 1], &c = st[i + 2];
      if (zero_one) {
        need(a.kind == Kind::ZeroHandle, "cancel01: first step is not a 0-handle");
        const auto& h = single_handle(b, "cancel01");
        need(!h.self && h.other == a.circles[0] && h.item == a.position, "cancel01: 1-handle does not join the new disc");
        need(c.kind == Kind::CircleRemove && c.position == a.position && c.circles == a.circles,
             "cancel01: third step does not remove the new circle");
      } else {
        need(a.kind == Kind::CircleInsert && a.repartition && a.circles.size() == 1, "cancel23: first step is not a cap move");
        const auto& at = single_attachment(b, "cancel23");
        need(at.item == a.position && canonical_circle(at.word) == canonical_circle(Word::parse("d" + a.circles[0])),
             "cancel23: 2-handle is not along the moved circle");
        need(c.kind == Kind::ThreeHandle && c.position == a.position && c.circles == a.circles,
             "cancel23: third step is not the matching 3-handle");
      }
      need(ss[i] == ss[i + 3], m + ": pattern does not return to its start");
      st.erase(st.begin() + static_cast<std::ptrdiff_t>(i), st.begin() + static_cast<std::ptrdiff_t>(i) + 3);
      st.insert(st.begin() + static_cast<std::ptrdiff_t>(i), CobStep::cylinder());
    } else if (m == "create12") {
      need(t.size() == 5, "create12 <i> <item> <anchor> <h>");
      const auto i = step_index(y, t[1], 1);
      need(st[i].kind == Kind::Cylinder, "create12: step is not a cylinder");
      const int item = to_int(t[2]);
      const int h = to_int(t[4]);
      CobStep a, b;
      a.kind = Kind::Compression1;
      a.handles = {Handle1{item, true, t[3], h, ""}};
      b.kind = Kind::Compression2;
      b.attach = {Attachment{item, t[3], Word::parse("b" + std::to_string(h))}};
      st[i] = a;
      st.insert(st.begin() + static_cast<std::ptrdiff_t>(i) + 1, b);
    } else if (m == "cancel12") {
      need(t.size() == 2, "cancel12 <i>");
      const auto i = step_index(y, t[1], 2);
      const auto& h = single_handle(st[i], "cancel12");
      const auto& a = single_attachment(st[i + 1], "cancel12");
      need(h.self, "cancel12: 1-handle is a join");
      HandleCurve hc;
      need(a.item == h.item && as_handle_curve(free_reduce(a.word), hc) && hc.handle == h.handle,
           "cancel12: 2-handle is not along a curve of the new handle");
      need(!hc.is_a, "cancel12: attaching circle does not cross the belt once");
      need(ss[i] == ss[i + 2], "cancel12: pair does not return to its start");
      st.erase(st.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      st[i] = CobStep::cylinder();
    } else {
      throw PatternMismatch("unknown move '" + m + "'");
    }
  } catch (const InvalidStep& e) {
    throw PatternMismatch(m + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw PatternMismatch(m + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw PatternMismatch(m + ": " + e.what());
  }

  try {
    surfaces(r);
  } catch (const InvalidStep& e) {
    throw PatternMismatch(m + ": result invalid: " + e.what());
  }
  return r;
}

std::string inverse_move(const CobSeq& y, const std::string& move) {
  const auto t = tokens_of(move);
  need(!t.empty(), "empty move");
  const std::string& m = t[0];
  if (m == "relabel") return "relabel " + t.at(2) + " " + t.at(1);
  if (m == "cylinder+") return "cylinder- " + t.at(1);
  if (m == "cylinder-") return "cylinder+ " + t.at(1);
  if (m == "circles+") return "circles- " + t.at(1);
  if (m == "circles-") return "circles+ " + t.at(1) + " " + format_step(y.steps.at(step_index(y, t.at(1), 2)));
  if (m == "imbricate") {
    const auto& s = y.steps.at(step_index(y, t.at(1), 2));
    const auto k = s.kind == Kind::Compression2 ? s.attach.size() : s.handles.size();
    return "unimbricate " + t.at(1) + " " + std::to_string(k);
  }
  if (m == "unimbricate") return "imbricate " + t.at(1);
  if (m == "switch") return move;
  if (m == "create01") return "cancel01 " + t.at(1);
  if (m == "create23") return "cancel23 " + t.at(1);
  if (m == "create12") return "cancel12 " + t.at(1);
  const auto i = step_index(y, t.at(1), 1);
  if (m == "cancel01") {
    const auto& z = y.steps.at(i);
    return "create01 " + t[1] + " " + std::to_string(z.position) + " " + z.circles.at(0) + " " +
           y.steps.at(i + 1).handles.at(0).anchor;
  }
  if (m == "cancel23") {
    const auto& z = y.steps.at(i);
    return "create23 " + t[1] + " " + std::to_string(z.position) + " " + z.circles.at(0) + " " +
           y.steps.at(i + 1).attach.at(0).anchor;
  }
  if (m == "cancel12") {
    const auto& h = y.steps.at(i).handles.at(0);
    return "create12 " + t[1] + " " + std::to_string(h.item) + " " + h.anchor + " " + std::to_string(h.handle);
  }
  throw PatternMismatch("unknown move '" + m + "'");
}

}  // namespace cobord2::cob
