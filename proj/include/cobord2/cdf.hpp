#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobord2/cobcat.hpp"

namespace cobord2::cdf {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg) : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

/// One boundary circle: label, orientation, parametrization id.
struct CircleDecl {
  std::string label;
  bool reversed = false;
  int param = 0;
  bool operator==(const CircleDecl&) const = default;
};

/// Cobordism description file.
///
///     # comment
///     @circles
///     c1            # one per line: <label> [+|-] [<param id>]
///     @surfaces
///     item [h=1 in=c1 out=x] [out=y]
///     item [in=x,y out=c2]
///     @steps
///     h2 0 c1 a1
///     @target       # optional second sequence on the same source
///     ...
///     @moves        # optional move chain taking @steps to @target
///     switch 0
///
/// @circles is optional; when present it must list exactly the end circles.
struct CdfFile {
  std::vector<CircleDecl> circles;
  cob::CobSeq seq;
  std::optional<std::vector<cob::CobStep>> target;
  std::vector<std::string> moves;

  cob::CobSeq target_seq() const { return {seq.source, target.value_or(std::vector<cob::CobStep>{})}; }
  bool operator==(const CdfFile&) const = default;
};

CdfFile parse(const std::string& text);
CdfFile load(const std::string& path);
std::string serialize(const CdfFile& f);

}  // namespace cobord2::cdf
