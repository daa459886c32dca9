#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "cobord2/lier_finite.hpp"
#include "cobord2/su2.hpp"

namespace cobord2::lier {

using p2c::ObjectId;
using p2c::Simple1;
using p2c::Simple2;
using Seq = std::vector<Simple1>;
using Point = std::pair<std::uint64_t, std::uint64_t>;

namespace {

struct PointHash {
  std::size_t operator()(const Point& p) const { return std::hash<std::uint64_t>{}(p.first * 0x9E3779B97F4A7C15ull ^ p.second); }
};

std::vector<int> group_gens(const FiniteGroup& g) {
  // Same greedy construction as the value layer; small groups only.
  std::vector<int> gens;
  std::vector<char> in(static_cast<std::size_t>(g.n), 0);
  in[0] = 1;
  for (int a = 1; a < g.n; ++a) {
    if (in[static_cast<std::size_t>(a)]) continue;
    gens.push_back(a);
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < g.n; ++x) {
        if (!in[static_cast<std::size_t>(x)]) continue;
        for (int s : gens) {
          const int y = g.mul(x, s);
          if (!in[static_cast<std::size_t>(y)]) in[static_cast<std::size_t>(y)] = grew = 1;
        }
      }
    }
  }
  return gens;
}

void sort_unique(std::vector<Point>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

LieRFinite::LieRFinite(std::uint64_t probe_seed, std::uint64_t max_carrier)
    : probe_seed_(probe_seed), max_carrier_(max_carrier) {}

ObjectId LieRFinite::add_group(const FiniteGroup& g) {
  auto it = group_index_.find(g.factors);
  if (it != group_index_.end()) {
    if (!(*groups_[it->second] == g)) throw InvalidGroup("group " + g.name + " redefined with another table");
    return it->second;
  }
  const auto id = static_cast<ObjectId>(groups_.size());
  groups_.push_back(std::make_shared<const FiniteGroup>(g));
  group_index_.emplace(g.factors, id);
  return id;
}

ObjectId LieRFinite::product_object(ObjectId a, ObjectId b) { return add_group(direct_product(group(a), group(b))); }

ObjectId LieRFinite::object_of(const GroupPtr& g) const {
  auto it = group_index_.find(g->factors);
  if (it == group_index_.end()) throw std::invalid_argument("group " + g->name + " is not registered");
  return it->second;
}

Simple1 LieRFinite::add_atom(const FiniteBiset& b) {
  FiniteBiset a = b;
  a.left = groups_.at(object_of(b.left));
  a.right = groups_.at(object_of(b.right));
  atoms_.push_back(std::move(a));
  atom_adjoint_.push_back(-1);
  return intern_chain({static_cast<int>(atoms_.size() - 1)});
}

Simple1 LieRFinite::intern_chain(const std::vector<int>& atoms) const {
  auto it = simple_index_.find(atoms);
  if (it != simple_index_.end()) return it->second;
  SimpleData d;
  d.atoms = atoms;
  std::vector<const FiniteBiset*> chain;
  for (int a : atoms) {
    chain.push_back(&atoms_.at(static_cast<std::size_t>(a)));
    d.atom_product *= static_cast<std::uint64_t>(chain.back()->m);
  }
  if (d.atom_product > max_carrier_) throw std::length_error("chain product exceeds the carrier budget");
  d.collapse = quotient_collapse(chain);
  d.src = object_of(d.collapse.biset.left);
  d.tgt = object_of(d.collapse.biset.right);
  const auto id = static_cast<Simple1>(simples_.size());
  simples_.push_back(std::move(d));
  simple_index_.emplace(atoms, id);
  return id;
}

ObjectId LieRFinite::source1(Simple1 f) const { return simples_.at(f).src; }
ObjectId LieRFinite::target1(Simple1 f) const { return simples_.at(f).tgt; }

Simple1 LieRFinite::adjoint1(Simple1 f) {
  const auto atoms = simples_.at(f).atoms;
  std::vector<int> rev;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    const auto a = static_cast<std::size_t>(*it);
    if (atom_adjoint_[a] < 0) {
      atoms_.push_back(adjoint_biset(atoms_[a]));
      atom_adjoint_.push_back(static_cast<int>(a));
      atom_adjoint_[a] = static_cast<int>(atoms_.size() - 1);
    }
    rev.push_back(atom_adjoint_[a]);
  }
  return intern_chain(rev);
}

std::optional<Simple1> LieRFinite::try_compose1(Simple1 f, Simple1 g) {
  if (target1(f) != source1(g)) return std::nullopt;
  if (!middle_action_free(biset(f), biset(g))) return std::nullopt;
  auto atoms = simples_.at(f).atoms;
  const auto& ga = simples_.at(g).atoms;
  atoms.insert(atoms.end(), ga.begin(), ga.end());
  return intern_chain(atoms);
}

std::vector<std::pair<Simple1, Simple1>> LieRFinite::decompositions(Simple1 f) {
  const auto atoms = simples_.at(f).atoms;
  std::vector<std::pair<Simple1, Simple1>> out;
  for (std::size_t k = 1; k < atoms.size(); ++k) {
    const Simple1 p = intern_chain({atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(k)});
    const Simple1 q = intern_chain({atoms.begin() + static_cast<std::ptrdiff_t>(k), atoms.end()});
    const auto c = try_compose1(p, q);
    if (c && *c == f) out.emplace_back(p, q);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inner-orbit classes

std::uint64_t LieRFinite::product_size(const Seq& s) const {
  std::uint64_t n = 1;
  for (auto f : s) n *= static_cast<std::uint64_t>(biset(f).m);
  return n;
}

std::vector<int> LieRFinite::chain_of(const Seq& s) const {
  std::vector<int> atoms;
  for (auto f : s) {
    const auto& a = simples_.at(f).atoms;
    atoms.insert(atoms.end(), a.begin(), a.end());
  }
  return atoms;
}

Simple1 LieRFinite::collapse_of(const Seq& s) const {
  if (s.empty()) throw std::invalid_argument("correspondences need nonempty sequences");
  if (s.size() == 1) return s.front();
  return intern_chain(chain_of(s));
}

std::uint64_t LieRFinite::class_of_tuple(const Seq& s, const std::vector<int>& xs) const {
  if (xs.size() != s.size()) throw std::invalid_argument("class_of_tuple: tuple length differs from sequence");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& d = simples_.at(s[i]);
    code = code * d.atom_product + d.collapse.rep.at(static_cast<std::size_t>(xs[i]));
  }
  const auto& big = simples_.at(collapse_of(s));
  return static_cast<std::uint64_t>(big.collapse.class_of.at(code));
}

// ---------------------------------------------------------------------------
// Correspondences

Corr LieRFinite::saturate(Corr c) const {
  // Inner groups are invisible on classes; only the outer groups act, and
  // they act on both sides at once.
  const FiniteBiset& src = biset(collapse_of(c.source));
  const FiniteBiset& tgt = biset(collapse_of(c.target));
  const auto lg = group_gens(*src.left);
  const auto rg = group_gens(*src.right);
  std::unordered_set<Point, PointHash> seen(c.points.begin(), c.points.end());
  std::vector<Point> stack(c.points.begin(), c.points.end());
  while (!stack.empty()) {
    const Point p = stack.back();
    stack.pop_back();
    auto push = [&](Point q) {
      if (seen.insert(q).second) {
        stack.push_back(q);
        c.points.push_back(q);
      }
    };
    const int s = static_cast<int>(p.first), t = static_cast<int>(p.second);
    for (int g : lg) push({static_cast<std::uint64_t>(src.act_left(g, s)), static_cast<std::uint64_t>(tgt.act_left(g, t))});
    for (int g : rg) push({static_cast<std::uint64_t>(src.act_right(s, g)), static_cast<std::uint64_t>(tgt.act_right(t, g))});
  }
  sort_unique(c.points);
  return c;
}

Corr LieRFinite::identity_corr(const Seq& s) const {
  Corr r{s, s, {}};
  const int m = biset(collapse_of(s)).m;
  for (int x = 0; x < m; ++x) r.points.emplace_back(x, x);
  return r;
}

// The composite's atom chain is the concatenation, so the classes of (f, g)
// are literally the elements of f∘g: the graph of the projection is the
// diagonal.
Corr LieRFinite::identification_corr(Simple1 f, Simple1 g) {
  const auto fg = try_compose1(f, g);
  if (!fg) throw NotComposable("identification_corr: pair is not composable");
  Corr r{{f, g}, {*fg}, {}};
  const int m = biset(*fg).m;
  for (int x = 0; x < m; ++x) r.points.emplace_back(x, x);
  return r;
}

Corr LieRFinite::transpose(const Corr& c) const {
  Corr r{c.target, c.source, {}};
  r.points.reserve(c.points.size());
  for (const auto& [s, t] : c.points) r.points.emplace_back(t, s);
  sort_unique(r.points);
  return r;
}

namespace {

// Visits every (s, t, u) of the fiber product; `b` is sorted by first.
template <class F>
void fiber_product(const Corr& a, const Corr& b, F&& visit) {
  for (const auto& [s, t] : a.points) {
    auto it = std::lower_bound(b.points.begin(), b.points.end(), Point{t, 0});
    for (; it != b.points.end() && it->first == t; ++it) visit(s, t, it->second);
  }
}

}  // namespace

std::optional<Corr> LieRFinite::try_compose_corrs(const Corr& a, const Corr& b) const {
  if (a.target != b.source) throw p2c::BoundaryMismatch("try_compose_corrs: middle sequences differ");
  std::unordered_map<Point, std::uint64_t, PointHash> middle;
  bool injective = true;
  fiber_product(a, b, [&](std::uint64_t s, std::uint64_t t, std::uint64_t u) {
    auto [it, fresh] = middle.emplace(Point{s, u}, t);
    if (!fresh && it->second != t) injective = false;
  });
  if (!injective) return std::nullopt;
  Corr r{a.source, b.target, {}};
  r.points.reserve(middle.size());
  for (const auto& kv : middle) r.points.push_back(kv.first);
  sort_unique(r.points);
  return r;
}

Corr LieRFinite::compose_relations(const Corr& a, const Corr& b) const {
  if (a.target != b.source) throw p2c::BoundaryMismatch("compose_relations: middle sequences differ");
  Corr r{a.source, b.target, {}};
  fiber_product(a, b, [&](std::uint64_t s, std::uint64_t, std::uint64_t u) { r.points.emplace_back(s, u); });
  sort_unique(r.points);
  return r;
}

// Class pairs of the saturated product. Concatenating minimal atom codes of
// the parts' classes gives a tuple of the whole chain; inner moves of the
// parts and the new junction moves are both invisible on classes.
Corr LieRFinite::juxtapose(const std::vector<Corr>& parts) const {
  Corr r;
  for (const auto& p : parts) {
    r.source.insert(r.source.end(), p.source.begin(), p.source.end());
    r.target.insert(r.target.end(), p.target.begin(), p.target.end());
  }
  const auto& big_s = simples_.at(collapse_of(r.source));
  const auto& big_t = simples_.at(collapse_of(r.target));
  struct Part {
    const SimpleData* s;
    const SimpleData* t;
    const Corr* c;
  };
  std::vector<Part> ps;
  for (const auto& p : parts) ps.push_back({&simples_.at(collapse_of(p.source)), &simples_.at(collapse_of(p.target)), &p});

  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t cs, std::uint64_t ct) {
    if (i == ps.size()) {
      r.points.emplace_back(static_cast<std::uint64_t>(big_s.collapse.class_of.at(cs)),
                            static_cast<std::uint64_t>(big_t.collapse.class_of.at(ct)));
      return;
    }
    const Part& p = ps[i];
    for (const auto& [x, y] : p.c->points) {
      rec(i + 1, cs * p.s->atom_product + p.s->collapse.rep[x], ct * p.t->atom_product + p.t->collapse.rep[y]);
    }
  };
  rec(0, 0, 0);
  sort_unique(r.points);
  return r;
}

Corr LieRFinite::whisker_corr(const Corr& c, const Seq& left, const Seq& right) const {
  if (left.empty() && right.empty()) return c;
  std::vector<Corr> parts;
  for (auto f : left) parts.push_back(identity_corr({f}));
  parts.push_back(c);
  for (auto f : right) parts.push_back(identity_corr({f}));
  return juxtapose(parts);
}

Corr LieRFinite::row_relation(const p2c::Row& row) const {
  if (row.empty()) throw std::invalid_argument("row_relation: empty row");
  std::vector<Corr> parts;
  for (const auto& cell : row) parts.push_back(cell.is_face() ? corr(cell.id) : identity_corr({cell.id}));
  return juxtapose(parts);
}

Corr LieRFinite::set_level_relation(const p2c::StackDiagram& d) const {
  Corr cur = identity_corr(d.source.items);
  for (const auto& row : d.rows) cur = compose_relations(cur, row_relation(row));
  return cur;
}

// ---------------------------------------------------------------------------
// Instance interface on 2-morphisms

Simple2 LieRFinite::intern(Corr c) {
  auto it = corr_index_.find(c);
  if (it != corr_index_.end()) return it->second;
  const auto id = static_cast<Simple2>(corrs_.size());
  corrs_.push_back(c);
  corr_index_.emplace(std::move(c), id);
  return id;
}

Simple2 LieRFinite::identification2(Simple1 f, Simple1 g) { return intern(identification_corr(f, g)); }

Simple2 LieRFinite::adjoint2(Simple2 a) { return intern(transpose(corr(a))); }

std::optional<Simple2> LieRFinite::try_compose2_vertical(Simple2 a, Simple2 b) {
  auto c = try_compose_corrs(corr(a), corr(b));
  if (!c) return std::nullopt;
  return intern(std::move(*c));
}

std::optional<Simple2> LieRFinite::whisker(Simple2 a, std::span<const Simple1> left, std::span<const Simple1> right) {
  return intern(whisker_corr(corr(a), Seq(left.begin(), left.end()), Seq(right.begin(), right.end())));
}

bool LieRFinite::is_identity2(Simple2 a) const {
  const Corr& c = corr(a);
  if (c.source != c.target) return false;
  const auto m = static_cast<std::size_t>(biset(collapse_of(c.source)).m);
  if (c.points.size() != m) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (c.points[i] != Point{i, i}) return false;
  }
  return true;
}

p2c::Boundary2 LieRFinite::boundary2(Simple2 a) const {
  const Corr& c = corr(a);
  auto seq = [&](const Seq& s) { return p2c::SeqMorphism{source1(s.front()), target1(s.back()), s}; };
  return {seq(c.source), seq(c.target)};
}

std::string LieRFinite::describe2(Simple2 a) const {
  const Corr& c = corr(a);
  return "corr(" + std::to_string(c.source.size()) + "->" + std::to_string(c.target.size()) + ", " +
         std::to_string(c.points.size()) + " points)";
}

std::vector<Simple2> LieRFinite::probes_into(const p2c::SeqMorphism& s) {
  std::vector<Simple2> out{intern(identity_corr(s.items))};
  std::uint64_t h = probe_seed_;
  for (auto f : s.items) h = mix_seed(h, f);
  std::mt19937_64 rng(h);
  const auto n = static_cast<std::uint64_t>(biset(collapse_of(s.items)).m);
  Corr c{s.items, s.items, {}};
  for (int i = 0; i < 2; ++i) c.points.emplace_back(rng() % n, rng() % n);
  out.push_back(intern(saturate(std::move(c))));
  return out;
}

std::vector<Simple2> LieRFinite::probes_out_of(const p2c::SeqMorphism& s) { return probes_into(s); }

}  // namespace cobord2::lier
