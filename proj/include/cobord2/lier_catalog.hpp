#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobord2/lier_finite.hpp"
#include "cobord2/report.hpp"

namespace cobord2::lier {

class CatalogParseError : public std::runtime_error {
 public:
  CatalogParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

/// A finite catalog of groups and atomic bisets loaded into an instance.
///
/// Text format, one declaration per line, `#` starts a comment:
///
///     group <name> cyclic <n>
///     group <name> symmetric 3
///     group <name> quaternion
///     group <name> table <n>        (followed by n rows of n entries)
///     biset <name> regular <group>
///     biset <name> pants <group>
///     biset <name> unit <group>     (point, trivial group -> group)
///     biset <name> counit <group>   (point, group -> trivial group)
///     biset <name> product <biset> <biset>
struct Catalog {
  std::unique_ptr<LieRFinite> inst;
  std::map<std::string, p2c::ObjectId> groups;
  std::vector<std::string> biset_names;
  std::vector<p2c::Simple1> bisets;
};

Catalog parse_catalog(const std::string& text, std::uint64_t probe_seed = 0);
Catalog load_catalog(const std::string& path, std::uint64_t probe_seed = 0);

/// The catalog used by the acceptance suite: Z2, Z3, S3, Q8 with regular,
/// pair-of-pants and product bisets.
std::string default_catalog_text();

struct AxiomConfig {
  int max_moves = 4;
  int max_length = 3;
  std::uint64_t product_budget = 1u << 20;
};

/// Every closed loop of at most `max_moves` composition/decomposition moves
/// starting from chains of catalog bisets, checked against the probes and the
/// set-level relation of the patched diagram.
VerificationReport run_axiom_loops(Catalog& cat, const AxiomConfig& cfg);

}  // namespace cobord2::lier
