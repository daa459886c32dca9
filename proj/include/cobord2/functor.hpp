#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobord2/cobcat.hpp"
#include "cobord2/hamsym.hpp"
#include "cobord2/modnum.hpp"
#include "cobord2/report.hpp"

namespace cobord2::fun {

class MoveChainInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chart order of a component: boundary i+1 is `boundary[i]`, handle j+1
/// is `handles[j]`. Labels are sorted, then `first` / `last` are moved into place.
struct ComponentChart {
  int g = 0;
  int k = 0;
  std::vector<std::string> boundary;
  std::vector<int> handles;
};

ComponentChart chart_of(const Component& c, const std::string& first = "", const std::string& last = "");
/// Rewrites a<h>, b<h>, d<label>, g<label> into chart indices.
Word to_chart_word(const Word& w, const ComponentChart& ch);

ham::GroupSymbol eval0(const std::vector<ham::Circle>& circles);
p2c::SeqMorphism eval1(const cob::Surface& s, ham::HamSym& h);
/// One row per non-cylinder step. Throws cob::InvalidStep.
p2c::StackDiagram eval2(const cob::CobSeq& y, ham::HamSym& h);

struct InvarianceConfig {
  int samples = 100;  // per correspondence in the numeric cross-checks
  std::uint64_t seed = 0;
  mod::NumericConfig num;
};

/// Membership and rank checks at sampled points for every face of a normalized diagram.
std::vector<CheckRecord> numeric_face_checks(const p2c::StackDiagram& d, const ham::HamSym& h,
                                             const InvarianceConfig& cfg, const std::string& prefix);

/// Applies `moves` to y1 (must give y2, else MoveChainInvalid), then
/// compares the normal forms of both evaluations and samples their faces.
VerificationReport invariance_check(const cob::CobSeq& y1, const cob::CobSeq& y2, const std::vector<std::string>& moves,
                                    const InvarianceConfig& cfg, const std::string& name = "invariance");

struct CrossCheck {
  double residual = 0.0;
  int rank_failures = 0;
};

/// A handle created with A = B = 1 over s in N(g, k) lies on both attaching
/// loci and projects back to s from each: the composite is the diagonal.
CrossCheck crosscheck_12(int g, int k, int samples, std::uint64_t seed, const mod::NumericConfig& num = {});
/// A boundary with theta = 0 added to s, then capped by a disc, returns s.
CrossCheck crosscheck_01(int g, int k, int samples, std::uint64_t seed, const mod::NumericConfig& num = {});

}  // namespace cobord2::fun
