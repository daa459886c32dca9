#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobord2/surface.hpp"
#include "cobord2/word.hpp"

namespace cobord2::cob {

class InvalidStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class PatternMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decomposed surface: interface p (1 <= p < size) is the out-labels of
/// item p-1, which equal the in-labels of item p.
using Surface = std::vector<Item>;

/// 2-handle along `word`, written in the chart of the component of `item`
/// that carries `anchor`.
struct Attachment {
  int item = 0;
  std::string anchor;
  Word word;
  bool operator==(const Attachment&) const = default;
};

/// 1-handle: on one component (adds handle `handle`, belt a<handle>) or
/// joining the components carrying `anchor` and `other` (belt: the
/// separating circle around the second one).
struct Handle1 {
  int item = 0;
  bool self = true;
  std::string anchor;
  int handle = 0;
  std::string other;
  bool operator==(const Handle1&) const = default;
};

struct CobStep {
  enum class Kind { Cylinder, ZeroHandle, ThreeHandle, CircleRemove, CircleInsert, Compression2, Compression1 };
  Kind kind = Kind::Cylinder;
  int position = 0;                  // interface p, or item j for a split
  std::vector<std::string> circles;  // zero/three: one label
  bool repartition = false;          // CircleInsert: false = split item j, true = move caps back across p
  Item left, right;                  // CircleInsert: the new pieces
  std::vector<Attachment> attach;    // Compression2
  std::vector<Handle1> handles;      // Compression1

  static CobStep cylinder() { return {}; }
  bool operator==(const CobStep&) const = default;
};

struct CobSeq {
  Surface source;
  std::vector<CobStep> steps;
  bool operator==(const CobSeq&) const = default;
};

/// Result of one step, plus the belt circles of a 1-handle step per item.
struct StepResult {
  Surface surface;
  std::map<int, std::vector<Word>> belts;
};

/// Surgery arithmetic of a single step. Throws InvalidStep.
StepResult apply_step(const Surface& s, const CobStep& step);

/// Checks a decomposed surface: no closed or unlabeled components, unique
/// labels and handle ids, matching interfaces.
std::vector<std::string> check_surface(const Surface& s);

/// All intermediate surfaces, source first. Throws InvalidStep with the step index.
std::vector<Surface> surfaces(const CobSeq& y);
Surface target(const CobSeq& y);
std::vector<std::string> validate(const CobSeq& y);
CobSeq concat(const CobSeq& a, const CobSeq& b);

std::vector<std::string> end_labels(const Surface& s);  // in-labels of the first item, out-labels of the last
int euler_characteristic(const Surface& s);

/// Splits a connected surface into elementary pieces: itself if it has
/// boundary, else two pieces glued along `fresh`.
Surface standard_decomposition(const Component& c, const std::string& fresh);

/// Move descriptors, one per line in a CDF file:
///
///     relabel <from> <to>
///     cylinder+ <i>                cylinder- <i>
///     circles+ <i> <step>          circles- <i>
///     imbricate <i>                unimbricate <i> <k>
///     switch <i>
///     create01 <i> <p> <c> <anchor>        cancel01 <i>
///     create23 <i> <p> <c> <anchor>        cancel23 <i>
///     create12 <i> <item> <anchor> <h>     cancel12 <i>
///
/// create moves replace a Cylinder at step i; cancel moves leave one.
/// relabel only renames circles introduced by the steps; the source is fixed.
CobSeq apply_move(const CobSeq& y, const std::string& move);
/// The move undoing `move` on `y`.
std::string inverse_move(const CobSeq& y, const std::string& move);

std::string format_step(const CobStep& s);
CobStep parse_step(const std::string& text);

}  // namespace cobord2::cob
