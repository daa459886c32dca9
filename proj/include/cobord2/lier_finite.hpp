#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cobord2/partial2cat.hpp"

namespace cobord2::lier {

class InvalidGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class InvalidBiset : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotComposable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite group stored as a multiplication table, identity at index 0.
/// Products of groups keep the list of base factors so that (G×H)×K and
/// G×(H×K) are literally the same group.
struct FiniteGroup {
  std::string name;
  int n = 1;
  std::vector<int> table;  // table[a*n + b] = a·b
  std::vector<int> inv;
  std::vector<std::string> factors;

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a * n + b)]; }
  int inverse(int a) const { return inv[static_cast<std::size_t>(a)]; }
  bool operator==(const FiniteGroup& o) const { return factors == o.factors && table == o.table; }

  /// Validates associativity, identity at 0 and inverses. Throws InvalidGroup.
  static FiniteGroup from_table(std::string name, int n, std::vector<int> table);
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric3();
FiniteGroup quaternion8();
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// A (G, G')-biset: carrier {0..m-1} with commuting left G and right G' actions.
struct FiniteBiset {
  std::string name;
  GroupPtr left;
  GroupPtr right;
  int m = 0;
  std::vector<int> lact;  // lact[g*m + x] = g·x
  std::vector<int> ract;  // ract[x*n' + g] = x·g

  int act_left(int g, int x) const { return lact[static_cast<std::size_t>(g * m + x)]; }
  int act_right(int x, int g) const { return ract[static_cast<std::size_t>(x * right->n + g)]; }

  /// Throws InvalidBiset unless both are actions and they commute.
  void validate() const;
};

FiniteBiset regular_biset(const GroupPtr& g);
/// Carrier G×G; left G×G acts factorwise, right G acts diagonally.
FiniteBiset pants_biset(const GroupPtr& g, const GroupPtr& gxg);
/// A single point with trivial actions.
FiniteBiset point_biset(const GroupPtr& left, const GroupPtr& right);
FiniteBiset product_biset(const FiniteBiset& a, const FiniteBiset& b, const GroupPtr& left, const GroupPtr& right);
FiniteBiset adjoint_biset(const FiniteBiset& b);

/// True when the anti-diagonal middle action on M×N has trivial stabilizers.
bool middle_action_free(const FiniteBiset& m, const FiniteBiset& n);

/// Orbit set of the product of a chain of bisets under all inner actions.
/// Classes are numbered by increasing minimal tuple code; `class_of` is dense
/// over tuple codes (mixed radix, first factor most significant).
struct Collapse {
  FiniteBiset biset;
  std::vector<int> radix;
  std::vector<int> class_of;
  std::vector<std::uint64_t> rep;  // minimal tuple code of each class
};

Collapse quotient_collapse(const std::vector<const FiniteBiset*>& chain);

std::optional<FiniteBiset> try_compose_bisets(const FiniteBiset& m, const FiniteBiset& n);

/// An isomorphism carrier(a) -> carrier(b) compatible with both actions, if any.
std::optional<std::vector<int>> find_biset_isomorphism(const FiniteBiset& a, const FiniteBiset& b);

/// An invariant subset of (∏ source carriers) × (∏ target carriers).
///
/// The subset is closed under the inner groups of each side acting
/// separately, so it is stored through its image in the inner-orbit sets:
/// a point (s, t) is a pair of class indices in the quotient collapse of the
/// source and target sequences.
struct Corr {
  std::vector<p2c::Simple1> source;
  std::vector<p2c::Simple1> target;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;  // sorted, unique

  bool operator==(const Corr&) const = default;
  bool operator<(const Corr& o) const {
    return std::tie(source, target, points) < std::tie(o.source, o.target, o.points);
  }
};

/// The Lie_R partial 2-category on finite groups.
///
/// Simple 1-morphisms are quotient collapses of chains of registered atomic
/// bisets; a composite is identified by its atom chain, so associativity of
/// composition holds on the nose and element labels are canonical.
class LieRFinite : public p2c::Instance {
 public:
  explicit LieRFinite(std::uint64_t probe_seed = 0, std::uint64_t max_carrier = 1u << 22);

  p2c::ObjectId add_group(const FiniteGroup& g);
  p2c::ObjectId product_object(p2c::ObjectId a, p2c::ObjectId b);
  const FiniteGroup& group(p2c::ObjectId x) const { return *groups_.at(x); }
  GroupPtr group_ptr(p2c::ObjectId x) const { return groups_.at(x); }
  p2c::ObjectId object_of(const GroupPtr& g) const;

  /// Registers an atomic biset; its groups must already be objects.
  p2c::Simple1 add_atom(const FiniteBiset& b);
  const FiniteBiset& biset(p2c::Simple1 f) const { return simples_.at(f).collapse.biset; }
  const std::vector<int>& atoms_of(p2c::Simple1 f) const { return simples_.at(f).atoms; }
  std::size_t simple1_count() const { return simples_.size(); }

  // p2c::Instance
  p2c::ObjectId source1(p2c::Simple1 f) const override;
  p2c::ObjectId target1(p2c::Simple1 f) const override;
  p2c::ObjectId opposite_object(p2c::ObjectId x) override { return x; }
  p2c::Simple1 adjoint1(p2c::Simple1 f) override;
  std::optional<p2c::Simple1> try_compose1(p2c::Simple1 f, p2c::Simple1 g) override;
  std::vector<std::pair<p2c::Simple1, p2c::Simple1>> decompositions(p2c::Simple1 f) override;

  p2c::Simple2 identification2(p2c::Simple1 f, p2c::Simple1 g) override;
  p2c::Simple2 adjoint2(p2c::Simple2 a) override;
  std::optional<p2c::Simple2> try_compose2_vertical(p2c::Simple2 a, p2c::Simple2 b) override;
  std::optional<p2c::Simple2> whisker(p2c::Simple2 a, std::span<const p2c::Simple1> left,
                                      std::span<const p2c::Simple1> right) override;
  bool is_identity2(p2c::Simple2 a) const override;
  p2c::Boundary2 boundary2(p2c::Simple2 a) const override;
  std::string describe2(p2c::Simple2 a) const override;
  std::vector<p2c::Simple2> probes_into(const p2c::SeqMorphism& s) override;
  std::vector<p2c::Simple2> probes_out_of(const p2c::SeqMorphism& s) override;

  // Correspondences as values.
  p2c::Simple2 intern(Corr c);
  const Corr& corr(p2c::Simple2 a) const { return corrs_.at(a); }
  /// Closure of a point set under every acting group.
  Corr saturate(Corr c) const;
  Corr identity_corr(const std::vector<p2c::Simple1>& s) const;
  Corr identification_corr(p2c::Simple1 f, p2c::Simple1 g);
  Corr transpose(const Corr& c) const;
  /// Fiber product over the shared middle, defined when the projection to the
  /// outer factors is injective modulo the middle's inner orbits.
  std::optional<Corr> try_compose_corrs(const Corr& a, const Corr& b) const;
  /// Relational composite with no definedness check.
  Corr compose_relations(const Corr& a, const Corr& b) const;
  Corr whisker_corr(const Corr& c, const std::vector<p2c::Simple1>& left, const std::vector<p2c::Simple1>& right) const;

  /// Total carrier size of a sequence.
  std::uint64_t product_size(const std::vector<p2c::Simple1>& s) const;
  /// The simple 1-morphism whose carrier is the inner-orbit set of `s`.
  p2c::Simple1 collapse_of(const std::vector<p2c::Simple1>& s) const;
  /// Inner-orbit class of a tuple of elements of the items of `s`.
  std::uint64_t class_of_tuple(const std::vector<p2c::Simple1>& s, const std::vector<int>& xs) const;

  /// Set-level value of a whole diagram: rows composed as relations.
  Corr set_level_relation(const p2c::StackDiagram& d) const;

 private:
  struct SimpleData {
    std::vector<int> atoms;
    Collapse collapse;
    p2c::ObjectId src = 0;
    p2c::ObjectId tgt = 0;
    std::uint64_t atom_product = 1;
  };

  p2c::Simple1 intern_chain(const std::vector<int>& atoms) const;
  std::vector<int> chain_of(const std::vector<p2c::Simple1>& s) const;
  Corr row_relation(const p2c::Row& row) const;
  /// Side-by-side product of correspondences.
  Corr juxtapose(const std::vector<Corr>& parts) const;

  std::uint64_t probe_seed_;
  std::uint64_t max_carrier_;
  std::vector<GroupPtr> groups_;
  std::map<std::vector<std::string>, p2c::ObjectId> group_index_;
  std::vector<FiniteBiset> atoms_;
  std::vector<int> atom_adjoint_;
  // Interning is logically const: it only caches collapses.
  mutable std::deque<SimpleData> simples_;
  mutable std::map<std::vector<int>, p2c::Simple1> simple_index_;
  std::vector<Corr> corrs_;
  std::map<Corr, p2c::Simple2> corr_index_;
};

}  // namespace cobord2::lier
