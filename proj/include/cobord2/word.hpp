#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cobord2 {

/// One signed generator of a surface chart: "a3", "b3^-1", "d<label>", "g<label>".
///
/// Generator families:
///   a<h>, b<h>   the symplectic-basis loops of handle h
///   d<label>     the loop around the boundary circle <label>
///   g<label>     the arc from the base boundary to boundary <label>
struct Letter {
  std::string gen;
  int exp = 1;  // +1 or -1
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

struct Word {
  std::vector<Letter> letters;

  static Word parse(std::string_view text);
  std::string str() const;
  Word inverse() const;
  bool empty() const { return letters.empty(); }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;
};

/// Cancels adjacent x x^-1 pairs.
Word free_reduce(const Word& w);

/// Free and cyclic reduction, then the lexicographically least rotation of the
/// word or of its inverse. Two attaching circles given by words are treated as
/// the same circle iff their canonical forms agree.
Word canonical_circle(const Word& w);

/// Canonical set: each word canonicalized, sorted, duplicates removed.
std::vector<Word> canonical_circle_set(std::vector<Word> ws);

/// Single generator a<h> or b<h> (either sign). Returns the handle id and
/// whether it is the a-curve, or nothing.
struct HandleCurve {
  int handle = 0;
  bool is_a = true;
};
bool as_handle_curve(const Word& w, HandleCurve& out);

/// The separating circle that encloses handles `handles` and boundary circles
/// `labels`: [a_h,b_h] ... d_l ... in ascending order.
Word separating_word(const std::vector<int>& handles, const std::vector<std::string>& labels);

/// Inverse of separating_word: succeeds if `w` is literally a product of
/// handle commutators followed by boundary loops (each at most once).
bool as_separating(const Word& w, std::vector<int>& handles, std::vector<std::string>& labels);

}  // namespace cobord2
