#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobord2/partial2cat.hpp"
#include "cobord2/surface.hpp"
#include "cobord2/word.hpp"

namespace cobord2::ham {

class TransversalityUnknown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One SU(2) factor per circle; `reversed` marks the opposite group.
struct Circle {
  std::string label;
  bool reversed = false;
  bool operator==(const Circle&) const = default;
  auto operator<=>(const Circle&) const = default;
};

struct GroupSymbol {
  std::vector<Circle> circles;  // sorted by label
  bool operator==(const GroupSymbol&) const = default;
  auto operator<=>(const GroupSymbol&) const = default;
};

GroupSymbol group_of_labels(const std::vector<std::string>& labels);

struct SpaceSymbol {
  enum class Kind { Moduli, Cotangent, Point };
  Kind kind = Kind::Moduli;
  Item components;            // Moduli only
  GroupSymbol group;          // Cotangent only
  std::set<std::string> excised;  // holonomy -1 loci along these glued circles

  GroupSymbol left() const;
  GroupSymbol right() const;
  bool operator==(const SpaceSymbol&) const = default;
  auto operator<=>(const SpaceSymbol& o) const {
    if (auto c = kind <=> o.kind; c != 0) return c;
    if (components != o.components) return components < o.components ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = group <=> o.group; c != 0) return c;
    if (excised != o.excised) return excised < o.excised ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// Gluing of moduli symbols along the shared circles, or the identity rule
/// for cotangent symbols. Refuses results with a closed component.
std::optional<SpaceSymbol> try_compose1_sym(const SpaceSymbol& a, const SpaceSymbol& b);

/// Sum over components of 6g + 6k - 6; 6n for a cotangent symbol on n circles.
int dimension(const SpaceSymbol& s);
int euler_characteristic(const SpaceSymbol& s);

struct CorrSymbol {
  enum class Kind { Diagonal, Identification, ZeroSection, HolTrivial, WeinsteinLambda, Opaque };
  Kind kind = Kind::Diagonal;
  bool transposed = false;
  bool cap = false;                 // Identification of a cap moved across an interface
  std::vector<std::string> labels;  // glued or created circles
  std::vector<Word> words;          // HolTrivial, canonical circle set
  std::vector<p2c::Simple1> source;
  std::vector<p2c::Simple1> target;
  int lpad = 0;  // whiskering wires on each side
  int rpad = 0;

  bool operator==(const CorrSymbol&) const = default;
  bool operator<(const CorrSymbol& o) const;
};

std::string to_string(CorrSymbol::Kind k);
/// Every kind produced by the functor carries the weak-transversality certificate.
bool weakly_transverse(CorrSymbol::Kind k);

/// The Ham partial 2-category at the level of symbols.
class HamSym : public p2c::Instance {
 public:
  p2c::ObjectId object(const GroupSymbol& g);
  const GroupSymbol& group(p2c::ObjectId x) const { return groups_.at(x); }
  p2c::Simple1 space(const SpaceSymbol& s);
  p2c::Simple1 moduli(const Item& item, std::set<std::string> excised = {});
  const SpaceSymbol& space_of(p2c::Simple1 f) const { return spaces_.at(f); }
  p2c::Simple2 face(CorrSymbol c);
  const CorrSymbol& corr(p2c::Simple2 a) const { return corrs_.at(a); }

  p2c::Simple1 strip_excisions(p2c::Simple1 f);
  p2c::Simple2 strip_excisions2(p2c::Simple2 a);

  // p2c::Instance
  p2c::ObjectId source1(p2c::Simple1 f) const override { return src_.at(f); }
  p2c::ObjectId target1(p2c::Simple1 f) const override { return tgt_.at(f); }
  p2c::ObjectId opposite_object(p2c::ObjectId x) override;
  p2c::Simple1 adjoint1(p2c::Simple1 f) override;
  std::optional<p2c::Simple1> try_compose1(p2c::Simple1 f, p2c::Simple1 g) override;
  bool is_identity1(p2c::Simple1 f) const override;

  p2c::Simple2 identification2(p2c::Simple1 f, p2c::Simple1 g) override;
  p2c::Simple2 adjoint2(p2c::Simple2 a) override;
  std::optional<p2c::Simple2> try_compose2_vertical(p2c::Simple2 a, p2c::Simple2 b) override;
  std::optional<p2c::Simple2> whisker(p2c::Simple2 a, std::span<const p2c::Simple1> left,
                                      std::span<const p2c::Simple1> right) override;
  bool is_identity2(p2c::Simple2 a) const override;
  p2c::Boundary2 boundary2(p2c::Simple2 a) const override;
  std::string describe2(p2c::Simple2 a) const override;

 private:
  std::vector<GroupSymbol> groups_;
  std::map<GroupSymbol, p2c::ObjectId> group_index_;
  std::vector<SpaceSymbol> spaces_;
  std::vector<p2c::ObjectId> src_, tgt_;
  std::map<SpaceSymbol, p2c::Simple1> space_index_;
  std::vector<CorrSymbol> corrs_;
  std::map<CorrSymbol, p2c::Simple2> corr_index_;
};

std::string describe(const SpaceSymbol& s);
std::string describe(const CorrSymbol& c, const HamSym& h);

/// Removes the cancelling three-row patterns (0-1 and its mirror 2-3) that
/// the generic rules cannot see. Returns true if anything changed.
bool apply_pattern_rules(p2c::StackDiagram& d, HamSym& h);

/// Checks the transversality certificate, erases excision records and
/// normalizes with the symbolic composition rules.
p2c::StackDiagram normalize_mod_equiv(const p2c::StackDiagram& d, HamSym& h);

/// Serialization of a diagram with internal circle labels and handle ids
/// renamed in order of first appearance.
std::string canonical_form(const p2c::StackDiagram& d, const HamSym& h);

/// Equality of normal forms. Throws BoundaryMismatch if the boundaries differ.
bool equal_2morphisms(const p2c::StackDiagram& a, const p2c::StackDiagram& b, HamSym& h);

}  // namespace cobord2::ham
