#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cobord2/report.hpp"

namespace cobord2::p2c {

// Handles into an instance's own storage. Instances intern their values so
// that handle equality is structural equality.
using ObjectId = std::uint32_t;
using Simple1 = std::uint32_t;
using Simple2 = std::uint32_t;

class BoundaryMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotALoop : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotAdjacentStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A representative of a general 1-morphism: a chain of simple 1-morphisms.
struct SeqMorphism {
  ObjectId source = 0;
  ObjectId target = 0;
  std::vector<Simple1> items;

  bool operator==(const SeqMorphism&) const = default;
};

struct Boundary2 {
  SeqMorphism source;
  SeqMorphism target;
};

/// Callback interface of a partial 2-category.
///
/// Vertical composition `try_compose2_vertical(A, B)` follows the
/// diagrammatic convention: A first, then B. `whisker` extends a simple
/// 2-morphism by identity wires on either side; an instance without a
/// notion of whiskering returns nothing and the corresponding merges are
/// simply not performed.
class Instance {
 public:
  virtual ~Instance() = default;

  virtual ObjectId source1(Simple1 f) const = 0;
  virtual ObjectId target1(Simple1 f) const = 0;
  virtual bool objects_equal(ObjectId x, ObjectId y) const { return x == y; }
  virtual ObjectId opposite_object(ObjectId x) = 0;
  virtual Simple1 adjoint1(Simple1 f) = 0;
  virtual std::optional<Simple1> try_compose1(Simple1 f, Simple1 g) = 0;
  virtual bool is_identity1(Simple1) const { return false; }
  /// Pairs (p, q) with p o q = f that the instance is able to enumerate.
  virtual std::vector<std::pair<Simple1, Simple1>> decompositions(Simple1) { return {}; }
  /// True when `decompositions` is exhaustive, which lets equiv_seq answer false.
  virtual bool decompositions_complete() const { return false; }

  virtual Simple2 identification2(Simple1 f, Simple1 g) = 0;
  virtual Simple2 adjoint2(Simple2 a) = 0;
  virtual std::optional<Simple2> try_compose2_vertical(Simple2 a, Simple2 b) = 0;
  virtual std::optional<Simple2> whisker(Simple2, std::span<const Simple1>, std::span<const Simple1>) {
    return std::nullopt;
  }
  virtual bool simple2_equal(Simple2 a, Simple2 b) const { return a == b; }
  virtual bool is_identity2(Simple2 a) const = 0;
  virtual Boundary2 boundary2(Simple2 a) const = 0;
  virtual std::string describe2(Simple2 a) const { return "#" + std::to_string(a); }

  /// Test 2-morphisms L into / out of a sequence, used by the diagram axiom.
  virtual std::vector<Simple2> probes_into(const SeqMorphism&) { return {}; }
  virtual std::vector<Simple2> probes_out_of(const SeqMorphism&) { return {}; }
};

struct Cell {
  enum class Kind { Wire, Face };
  Kind kind = Kind::Wire;
  std::uint32_t id = 0;  // Simple1 for wires, Simple2 for faces

  static Cell wire(Simple1 f) { return {Kind::Wire, f}; }
  static Cell face(Simple2 a) { return {Kind::Face, a}; }
  bool is_face() const { return kind == Kind::Face; }
  bool operator==(const Cell&) const = default;
};

using Row = std::vector<Cell>;

/// A planar diagram in stacked form: each row transforms the sequence on its
/// top edge into the sequence on its bottom edge.
struct StackDiagram {
  SeqMorphism source;
  SeqMorphism target;
  std::vector<Row> rows;

  std::size_t face_count() const;
  bool operator==(const StackDiagram&) const = default;
};

SeqMorphism empty_seq(ObjectId x);
SeqMorphism seq_of(const Instance& inst, std::vector<Simple1> items);
SeqMorphism adjoint_seq(Instance& inst, const SeqMorphism& s);

SeqMorphism concat_h1(const SeqMorphism& a, const SeqMorphism& b);

/// Source and target item sequences of a row.
std::vector<Simple1> row_source_items(const Instance& inst, const Row& row);
std::vector<Simple1> row_target_items(const Instance& inst, const Row& row);

StackDiagram identity_diagram(const SeqMorphism& s);
/// Single-row diagram. Throws BoundaryMismatch if adjacent cells do not chain.
StackDiagram row_diagram(const Instance& inst, const SeqMorphism& source, Row row);
StackDiagram face_diagram(const Instance& inst, Simple2 a);

/// The sequence on the top edge of row `level` (level == rows.size() gives
/// the target).
SeqMorphism level_seq(const Instance& inst, const StackDiagram& d, std::size_t level);

StackDiagram concat_v2(const StackDiagram& c, const StackDiagram& d);
StackDiagram concat_h2(const Instance& inst, const StackDiagram& c, const StackDiagram& d);

/// Checks the chaining invariants; returns the first violation or nothing.
std::optional<std::string> validate_diagram(const Instance& inst, const StackDiagram& d);

/// Merges faces, deletes identity faces and empty rows until a fixpoint.
/// Faces whose inputs are all wires are lifted to the row above (interchange),
/// so independent faces end up side by side in the highest row they fit.
StackDiagram normalize_diagram(const StackDiagram& d, Instance& inst);

/// Checks that the diagram built from a closed loop of compositions and
/// decompositions acts as the identity on every probe the instance supplies.
VerificationReport check_diagram_axiom(const std::vector<SeqMorphism>& loop, Instance& inst);

/// Builds the patched identification diagram of a composition/decomposition path.
StackDiagram identification_path_diagram(const std::vector<SeqMorphism>& path, Instance& inst);

enum class Tri { True, False, Unknown };
std::string to_string(Tri t);

/// Bounded bidirectional search in the composition/decomposition graph.
Tri equiv_seq(const SeqMorphism& a, const SeqMorphism& b, Instance& inst, int depth);

}  // namespace cobord2::p2c
