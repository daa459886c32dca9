#include "cobord2/functor.hpp"

#include <algorithm>
#include <set>

namespace cobord2::fun {

using ham::CorrSymbol;
using p2c::Cell;
using p2c::Row;
using p2c::Simple1;

ComponentChart chart_of(const Component& c, const std::string& first, const std::string& last) {
  ComponentChart ch;
  ch.g = c.genus();
  ch.k = c.boundary_count();
  ch.boundary = c.in;
  ch.boundary.insert(ch.boundary.end(), c.out.begin(), c.out.end());
  std::sort(ch.boundary.begin(), ch.boundary.end());
  auto move_to = [&](const std::string& l, bool front) {
    auto it = std::find(ch.boundary.begin(), ch.boundary.end(), l);
    if (l.empty() || it == ch.boundary.end()) return;
    ch.boundary.erase(it);
    ch.boundary.insert(front ? ch.boundary.begin() : ch.boundary.end(), l);
  };
  move_to(first, true);
  move_to(last, false);
  ch.handles = c.handles;
  std::sort(ch.handles.begin(), ch.handles.end());
  return ch;
}

Word to_chart_word(const Word& w, const ComponentChart& ch) {
  Word r;
  for (const auto& l : w.letters) {
    Letter m = l;
    const std::string rest = l.gen.substr(1);
    if (l.gen[0] == 'a' || l.gen[0] == 'b') {
      const auto it = std::find(ch.handles.begin(), ch.handles.end(), std::stoi(rest));
      if (it == ch.handles.end()) throw std::invalid_argument("word names a handle off the component");
      m.gen = l.gen.substr(0, 1) + std::to_string(it - ch.handles.begin() + 1);
    } else {
      const auto it = std::find(ch.boundary.begin(), ch.boundary.end(), rest);
      if (it == ch.boundary.end()) throw std::invalid_argument("word names a circle off the component");
      m.gen = l.gen.substr(0, 1) + std::to_string(it - ch.boundary.begin() + 1);
    }
    r.letters.push_back(std::move(m));
  }
  return r;
}

ham::GroupSymbol eval0(const std::vector<ham::Circle>& circles) {
  ham::GroupSymbol g{circles};
  std::sort(g.circles.begin(), g.circles.end());
  return g;
}

p2c::SeqMorphism eval1(const cob::Surface& s, ham::HamSym& h) {
  std::vector<Simple1> items;
  for (const auto& item : s) items.push_back(h.moduli(item));
  return p2c::seq_of(h, std::move(items));
}

namespace {

CorrSymbol symbol(CorrSymbol::Kind kind, bool transposed, std::vector<std::string> labels) {
  CorrSymbol c;
  c.kind = kind;
  c.transposed = transposed;
  c.labels = std::move(labels);
  return c;
}

}  // namespace

p2c::StackDiagram eval2(const cob::CobSeq& y, ham::HamSym& h) {
  using K = cob::CobStep::Kind;
  p2c::StackDiagram d;
  d.source = eval1(y.source, h);
  std::vector<Simple1> cur = d.source.items;
  cob::Surface surf = y.source;

  for (std::size_t si = 0; si < y.steps.size(); ++si) {
    const auto& step = y.steps[si];
    cob::StepResult res;
    try {
      res = cob::apply_step(surf, step);
    } catch (const cob::InvalidStep& e) {
      throw cob::InvalidStep("step " + std::to_string(si) + ": " + e.what());
    }
    const cob::Surface& after = res.surface;
    auto E = [&](std::size_t i) { return h.moduli(after.at(i)); };
    std::vector<std::string> circles = step.circles;
    std::sort(circles.begin(), circles.end());

    // Replaces cur[b, b+n) by one face producing `tgt`.
    Row row;
    std::vector<Simple1> next;
    auto span_face = [&](std::size_t b, std::size_t n, CorrSymbol c, std::vector<Simple1> tgt) {
      c.source.assign(cur.begin() + static_cast<std::ptrdiff_t>(b), cur.begin() + static_cast<std::ptrdiff_t>(b + n));
      c.target = tgt;
      for (std::size_t i = 0; i < b; ++i) row.push_back(Cell::wire(cur[i]));
      row.push_back(Cell::face(h.face(std::move(c))));
      for (std::size_t i = b + n; i < cur.size(); ++i) row.push_back(Cell::wire(cur[i]));
      next.assign(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(b));
      next.insert(next.end(), tgt.begin(), tgt.end());
      next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(b + n), cur.end());
    };
    const std::size_t p = static_cast<std::size_t>(step.position);

    switch (step.kind) {
      case K::Cylinder: continue;
      case K::ZeroHandle:
      case K::ThreeHandle:
        span_face(p - 1, 2, symbol(CorrSymbol::Kind::ZeroSection, step.kind == K::ThreeHandle, circles), {E(p - 1), E(p)});
        break;
      case K::CircleRemove:
        if (after.size() < surf.size()) {
          std::set<std::string> excised(circles.begin(), circles.end());
          for (auto f : {cur[p - 1], cur[p]}) {
            const auto& e = h.space_of(f).excised;
            excised.insert(e.begin(), e.end());
          }
          span_face(p - 1, 2, symbol(CorrSymbol::Kind::Identification, false, circles), {h.moduli(after[p - 1], excised)});
        } else {
          auto c = symbol(CorrSymbol::Kind::Identification, false, circles);
          c.cap = true;
          span_face(p - 1, 2, c, {E(p - 1), E(p)});
        }
        break;
      case K::CircleInsert:
        if (!step.repartition) {
          span_face(p, 1, symbol(CorrSymbol::Kind::Identification, true, circles), {E(p), E(p + 1)});
        } else {
          auto c = symbol(CorrSymbol::Kind::Identification, true, circles);
          c.cap = true;
          span_face(p - 1, 2, c, {E(p - 1), E(p)});
        }
        break;
      case K::Compression2:
      case K::Compression1: {
        std::map<int, std::vector<Word>> words = res.belts;
        if (step.kind == K::Compression2) {
          for (const auto& a : step.attach) words[a.item].push_back(a.word);
        }
        for (std::size_t i = 0; i < cur.size(); ++i) {
          auto it = words.find(static_cast<int>(i));
          if (it == words.end()) {
            row.push_back(Cell::wire(cur[i]));
            next.push_back(cur[i]);
            continue;
          }
          auto c = symbol(CorrSymbol::Kind::HolTrivial, step.kind == K::Compression1, {});
          c.words = it->second;
          c.source = {cur[i]};
          c.target = {E(i)};
          row.push_back(Cell::face(h.face(std::move(c))));
          next.push_back(E(i));
        }
        break;
      }
    }
    d.rows.push_back(std::move(row));
    cur = std::move(next);
    surf = after;
  }
  d.target = p2c::seq_of(h, cur);
  return d;
}

// ---------------------------------------------------------------------------
// Numeric cross-checks

namespace {

struct Sampled {
  double residual = 0.0;
  int rank_failures = 0;
  int borderline = 0;
  bool sampled = false;
  std::string what;
};

const Component* component_with_handle(const Item& item, int hid) {
  for (const auto& c : item) {
    if (std::count(c.handles.begin(), c.handles.end(), hid)) return &c;
  }
  return nullptr;
}

const Component* component_with_label(const Item& item, const std::string& l) {
  const int i = find_component(item, l);
  return i < 0 ? nullptr : &item[i];
}

Sampled sample_word(const Item& item, const Word& word, const InvarianceConfig& cfg, std::uint64_t seed) {
  Sampled s;
  const Word w = free_reduce(word);
  HandleCurve hc;
  std::vector<int> H;
  std::vector<std::string> L;
  const Component* comp = nullptr;
  std::string last;
  if (as_handle_curve(w, hc)) {
    comp = component_with_handle(item, hc.handle);
  } else if (as_separating(w, H, L)) {
    comp = !L.empty() ? component_with_label(item, L.front()) : component_with_handle(item, H.front());
    if (H.empty() && L.size() == 1) last = L.front();
  }
  if (!comp) return s;
  const ComponentChart ch = chart_of(*comp, "", last);
  const Word cw = to_chart_word(w, ch);
  s.sampled = true;
  for (int t = 0; t < cfg.samples; ++t) {
    const auto seed_t = mix_seed(seed, static_cast<std::uint64_t>(t));
    mod::ChartPoint src;
    try {
      src = mod::sample_on_locus(ch.g, ch.k, {cw}, seed_t, cfg.num);
    } catch (const mod::SamplingFailed&) {
      s.residual = std::max(s.residual, 1.0);
      continue;
    }
    if (as_handle_curve(cw, hc)) {
      s.what = "handle curve";
      s.residual = std::max(s.residual, mod::membership_hol_trivial_handle(src, cw, mod::forget_handle(src, hc.handle - 1), hc.handle - 1));
    } else if (!last.empty()) {
      s.what = "boundary loop";
      s.residual = std::max(s.residual, mod::membership_hol_trivial_boundary(src, ch.k, mod::forget_boundary(src, ch.k)));
    } else {
      s.what = "separating circle";
      s.residual = std::max(s.residual, mod::word_residual(src, {cw}));
    }
    if (H.empty() || as_handle_curve(cw, hc)) {
      const auto tf = mod::locus_tangent(src, {cw}, cfg.num);
      s.rank_failures += tf.rank != 3 || tf.borderline;
      s.borderline += tf.borderline;
    }
  }
  return s;
}

Sampled sample_gluing(const Item& left, const Item& right, const std::string& c, const InvarianceConfig& cfg, std::uint64_t seed) {
  Sampled s;
  const Component* P = component_with_label(left, c);
  const Component* Q = component_with_label(right, c);
  if (!P || !Q) return s;
  if (P->boundary_count() < 2) std::swap(P, Q);
  if (P->boundary_count() < 2) return s;
  const ComponentChart c1 = chart_of(*P, "", c), c2 = chart_of(*Q, c, "");
  s.sampled = true;
  s.what = "gluing";
  for (int t = 0; t < cfg.samples; ++t) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      const auto seed_t = mix_seed(mix_seed(seed, static_cast<std::uint64_t>(t)), attempt);
      const mod::ChartPoint p2 = mod::random_point(c2.g, c2.k, seed_t, cfg.num);
      mod::ChartPoint p1 = mod::random_point(c1.g, c1.k, mix_seed(seed_t, 1), cfg.num);
      p1.theta[c1.k - 2] = -mod::theta1_of(p2);
      if (mod::distance_to_excised(p1) < cfg.num.reject_distance) continue;
      const auto q = mod::glue(p1, c1.k, p2);
      s.residual = std::max({s.residual, mod::relation_residual(q), mod::roundtrip_residual(p1, c1.k, p2),
                             mod::membership_identification(p1, c1.k, p2, q)});
      break;
    }
  }
  return s;
}

std::vector<Simple1> core(const std::vector<Simple1>& v, const CorrSymbol& c) {
  return {v.begin() + c.lpad, v.end() - c.rpad};
}

}  // namespace

std::vector<CheckRecord> numeric_face_checks(const p2c::StackDiagram& d, const ham::HamSym& h, const InvarianceConfig& cfg,
                                             const std::string& prefix) {
  std::vector<CheckRecord> out;
  std::uint64_t counter = 0;
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    for (std::size_t k = 0; k < d.rows[r].size(); ++k) {
      const Cell& cell = d.rows[r][k];
      if (!cell.is_face()) continue;
      const CorrSymbol& c = h.corr(cell.id);
      const auto src = core(c.source, c);
      const auto tgt = core(c.target, c);
      const std::string name = prefix + " face " + std::to_string(r) + "." + std::to_string(k) + " " + ham::to_string(c.kind);
      const std::uint64_t seed = mix_seed(cfg.seed, counter++);
      std::vector<Sampled> parts;
      switch (c.kind) {
        case CorrSymbol::Kind::HolTrivial: {
          const auto& big = h.space_of(c.transposed ? tgt.at(0) : src.at(0)).components;
          for (std::size_t w = 0; w < c.words.size(); ++w) parts.push_back(sample_word(big, c.words[w], cfg, mix_seed(seed, w)));
          break;
        }
        case CorrSymbol::Kind::Identification: {
          const auto& pieces = c.transposed ? tgt : src;
          if (pieces.size() != 2) break;
          const auto& l = h.space_of(pieces[0]).components;
          const auto& rr = h.space_of(pieces[1]).components;
          for (std::size_t i = 0; i < c.labels.size(); ++i) parts.push_back(sample_gluing(l, rr, c.labels[i], cfg, mix_seed(seed, i)));
          break;
        }
        case CorrSymbol::Kind::ZeroSection: {
          Sampled s;
          s.sampled = true;
          s.what = "disc";
          s.residual = mod::membership_zero_section(mod::ChartPoint::trivial(0, 1), {1});
          parts.push_back(s);
          break;
        }
        default: break;
      }
      CheckRecord rec{name, CheckStatus::Unknown, 0.0, seed, "not sampled"};
      bool any = false;
      int rank_failures = 0, borderline = 0;
      std::string what;
      for (const auto& s : parts) {
        if (!s.sampled) continue;
        any = true;
        rec.residual = std::max(rec.residual, s.residual);
        rank_failures += s.rank_failures;
        borderline += s.borderline;
        if (what.find(s.what) == std::string::npos) what += (what.empty() ? "" : ", ") + s.what;
      }
      if (any) {
        const bool ok = rec.residual < cfg.num.residual_tol && rank_failures == 0;
        rec.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        rec.detail = what + "; " + std::to_string(cfg.samples) + " samples";
        if (rank_failures) rec.detail += "; rank failures " + std::to_string(rank_failures);
        if (borderline) rec.detail += "; borderline " + std::to_string(borderline);
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

VerificationReport invariance_check(const cob::CobSeq& y1, const cob::CobSeq& y2, const std::vector<std::string>& moves,
                                    const InvarianceConfig& cfg, const std::string& name) {
  VerificationReport rep;
  rep.suite = "functor-invariance";
  if (!moves.empty()) {
    cob::CobSeq y = y1;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      try {
        y = cob::apply_move(y, moves[i]);
      } catch (const cob::PatternMismatch& e) {
        throw MoveChainInvalid("move " + std::to_string(i) + " '" + moves[i] + "': " + e.what());
      }
    }
    if (y != y2) throw MoveChainInvalid("the move chain does not produce the target sequence");
    rep.add({name + " move chain", CheckStatus::Pass, 0.0, cfg.seed, std::to_string(moves.size()) + " moves"});
  }

  ham::HamSym h;
  const auto d1 = eval2(y1, h);
  const auto d2 = eval2(y2, h);
  CheckRecord nf{name + " normal forms", CheckStatus::Pass, 0.0, cfg.seed, ""};
  p2c::StackDiagram n1, n2;
  bool normalized = false;
  try {
    n1 = ham::normalize_mod_equiv(d1, h);
    n2 = ham::normalize_mod_equiv(d2, h);
    normalized = true;
    if (!ham::equal_2morphisms(d1, d2, h)) {
      nf.status = CheckStatus::Fail;
      nf.detail = "normal forms differ: " + std::to_string(n1.face_count()) + " vs " + std::to_string(n2.face_count()) + " faces";
    } else {
      nf.detail = std::to_string(n1.face_count()) + " faces after normalization";
    }
  } catch (const p2c::BoundaryMismatch& e) {
    nf.status = CheckStatus::Fail;
    nf.detail = std::string("boundaries differ: ") + e.what();
  } catch (const ham::TransversalityUnknown& e) {
    nf.status = CheckStatus::Unknown;
    nf.detail = e.what();
  }
  rep.add(nf);
  if (normalized) {
    InvarianceConfig c1 = cfg, c2 = cfg;
    c2.seed = mix_seed(cfg.seed, 1);
    for (auto& r : numeric_face_checks(n1, h, c1, name + " y1")) rep.add(std::move(r));
    for (auto& r : numeric_face_checks(n2, h, c2, name + " y2")) rep.add(std::move(r));
  }
  return rep;
}

CrossCheck crosscheck_12(int g, int k, int samples, std::uint64_t seed, const mod::NumericConfig& num) {
  CrossCheck cc;
  const Word a = Word::parse("a" + std::to_string(g + 1)), b = Word::parse("b" + std::to_string(g + 1));
  for (int t = 0; t < samples; ++t) {
    const auto s = mod::random_point(g, k, mix_seed(seed, static_cast<std::uint64_t>(t)), num);
    const auto x = mod::insert_handle(s, g, UnitQuaternion::identity(), UnitQuaternion::identity());
    cc.residual = std::max({cc.residual, mod::membership_hol_trivial_handle(x, a, s, g),
                            mod::membership_hol_trivial_handle(x, b, s, g)});
    // Transverse loci meet in a single point over s.
    if (mod::locus_tangent(x, {a, b}, num).rank != 6) ++cc.rank_failures;
  }
  return cc;
}

CrossCheck crosscheck_01(int g, int k, int samples, std::uint64_t seed, const mod::NumericConfig& num) {
  CrossCheck cc;
  const mod::ChartPoint disc = mod::ChartPoint::trivial(0, 1);
  const Word loop = Word::parse("d" + std::to_string(k + 1));
  for (int t = 0; t < samples; ++t) {
    const auto st = mix_seed(seed, static_cast<std::uint64_t>(t));
    const auto s = mod::random_point(g, k, st, num);
    const auto x = mod::insert_boundary(s, k + 1, AlgVector{}, sample_haar(mix_seed(st, 1)));
    cc.residual = std::max({cc.residual, mod::membership_zero_section(disc, {1}),
                            mod::membership_hol_trivial_boundary(x, k + 1, s),
                            mod::membership_identification(x, k + 1, disc, s)});
    if (mod::locus_tangent(x, {loop}, num).rank != 3) ++cc.rank_failures;
  }
  return cc;
}

}  // namespace cobord2::fun
