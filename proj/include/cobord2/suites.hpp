#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cobord2/cdf.hpp"
#include "cobord2/functor.hpp"
#include "cobord2/modnum.hpp"
#include "cobord2/report.hpp"

namespace cobord2::suites {

struct ModuliConfig {
  std::uint64_t seed = 0;
  int trials = 1000;  // equivariance, action and gluing trials per grid point
  int points = 100;   // dimension, rank and cancellation samples per grid point
  std::vector<std::pair<int, int>> grid = default_grid();
  mod::NumericConfig num;

  /// g <= 2, 1 <= k <= 3.
  static std::vector<std::pair<int, int>> default_grid();
};

/// Single attaching words whose loci are checked for rank 3 on N(g, k).
std::vector<Word> attaching_words(int g, int k);

VerificationReport run_moduli(const ModuliConfig& cfg);

/// JSON dump of eval2 and its normal form.
std::string eval_dump(const cdf::CdfFile& f);

/// Invariance of @steps against @target (or against the empty sequence on
/// the same source when there is no @target). Move-chain and evaluation
/// errors become failed checks.
VerificationReport run_invariance(const cdf::CdfFile& f, const fun::InvarianceConfig& cfg, const std::string& name);

}  // namespace cobord2::suites
