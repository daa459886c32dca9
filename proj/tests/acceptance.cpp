// One line per acceptance criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cobord2/cdf.hpp"
#include "cobord2/functor.hpp"
#include "cobord2/hamsym.hpp"
#include "cobord2/lier_catalog.hpp"
#include "cobord2/suites.hpp"

using namespace cobord2;

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& what) {
  std::printf("[%s] %d %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool starts(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// Worst residual and pass count over the records whose name starts with `prefix`.
struct Tally {
  int n = 0, failed = 0;
  double worst = 0.0;
  std::vector<std::string> bad;
};

Tally tally(const VerificationReport& r, const std::string& prefix) {
  Tally t;
  for (const auto& c : r.checks) {
    if (!starts(c.name, prefix)) continue;
    ++t.n;
    t.worst = std::max(t.worst, c.residual);
    if (c.status != CheckStatus::Pass) {
      ++t.failed;
      t.bad.push_back(c.name + ": " + c.detail);
    }
  }
  return t;
}

std::string summary(const Tally& t) {
  std::ostringstream s;
  s << t.n - t.failed << "/" << t.n << " checks, worst " << format_real(t.worst);
  for (const auto& b : t.bad) s << "\n       " << b;
  return s.str();
}

cob::CobSeq seq(const std::vector<std::string>& items, const std::vector<std::string>& steps) {
  cob::CobSeq y;
  for (const auto& i : items) y.source.push_back(parse_item(i));
  for (const auto& s : steps) y.steps.push_back(cob::parse_step(s));
  return y;
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  auto cat = lier::parse_catalog(lier::default_catalog_text());
  const auto rep = lier::run_axiom_loops(cat, {});
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream w;
  w << "diagram axiom: " << rep.count(CheckStatus::Pass) << "/" << rep.checks.size() << " loops (<= 4 moves, Z2 Z3 S3 Q8) in "
    << s << " s";
  line(1, rep.all_pass() && !rep.checks.empty() && s < 30.0, w.str());
}

void criterion2(const VerificationReport& m) {
  const auto t = tally(m, "dimension ");
  line(2, t.failed == 0 && t.n == 9, "tangent dimension 6g+6k-6, g<=2 k<=3, 100 points: " + summary(t));
}

void criterion3(const VerificationReport& m) {
  const auto t = tally(m, "equivariance ");
  line(3, t.failed == 0 && t.n == 9 && t.worst < 1e-9, "moment equivariance, 1000 trials: " + summary(t));
}

void criterion4(const VerificationReport& m) {
  const auto rt = tally(m, "gluing roundtrip ");
  const auto rel = tally(m, "gluing relation ");
  const auto ex = tally(m, "gluing excised locus ");
  const bool ok = rt.failed == 0 && rt.worst < 1e-9 && rel.failed == 0 && rel.worst < 1e-10 && ex.failed == 0 && ex.worst == 0.0 &&
                  rt.n == 9;
  line(4, ok, "gluing: roundtrip " + summary(rt) + "; relation " + summary(rel) + "; Pi = -1 hits " + summary(ex));
}

void criterion5(const VerificationReport& m) {
  const auto t = tally(m, "rank ");
  int borderline = 0;
  for (const auto& c : m.checks) {
    if (!starts(c.name, "rank ")) continue;
    const auto p = c.detail.find("borderline rejects ");
    if (p != std::string::npos) borderline += std::stoi(c.detail.substr(p + 19));
  }
  line(5, t.failed == 0 && t.n > 0,
       "attaching words at rank 3 on >= 95/100 points: " + summary(t) + "; borderline rejects " + std::to_string(borderline));
}

void criterion6(const VerificationReport& m) {
  ham::HamSym h;
  const std::vector<std::string> two{"[in=x out=m]", "[in=m out=y]"};
  // 1-2: a handle and the 2-handle along its dual curve; the normal form is
  // the identity 2-morphism, i.e. the diagonal.
  const auto y12 = seq({"[in=x out=y]"}, {"h1 0 self x 1", "h2 0 x b1"});
  const auto d12 = fun::eval2(y12, h);
  const bool diag = ham::equal_2morphisms(d12, p2c::identity_diagram(d12.source), h);
  // 0-1: disc at an interface, joined, circle removed.
  const auto y01 = seq(two, {"zero 1 c", "h1 1 join m c", "remove 1 c"});
  const bool empty01 = ham::normalize_mod_equiv(fun::eval2(y01, h), h).rows.empty();
  const auto c12 = tally(m, "cancellation 1-2 ");
  const auto c01 = tally(m, "cancellation 0-1 ");
  const bool ok = diag && empty01 && c12.failed == 0 && c12.n > 0 && c12.worst < 1e-9 && c01.failed == 0 && c01.n > 0 &&
                  c01.worst < 1e-9;
  line(6, ok,
       std::string("handle cancellation: 1-2 ") + (diag ? "Diagonal" : "not Diagonal") + ", 0-1 " +
           (empty01 ? "empty" : "not empty") + "; numeric 1-2 " + summary(c12) + "; numeric 0-1 " + summary(c01));
}

void criterion7() {
  const std::set<std::string> kinds{"relabel",  "cylinder+", "cylinder-", "circles+", "circles-", "imbricate",
                                    "unimbricate", "switch", "create01", "cancel01", "create23", "cancel23",
                                    "create12", "cancel12"};
  std::set<std::string> seen;
  int files = 0, passed = 0, chains = 0;
  bool control_failed = false, control_found = false;
  std::vector<std::string> bad;
  fun::InvarianceConfig cfg;
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(COBORD2_DATA_DIR "/cerf")) paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    const auto f = cdf::load(p.string());
    const auto rep = suites::run_invariance(f, cfg, p.stem().string());
    if (p.stem() == "negative_control") {
      control_found = true;
      control_failed = rep.count(CheckStatus::Fail) > 0;
      continue;
    }
    ++files;
    if (rep.all_pass()) ++passed;
    else bad.push_back(p.stem().string());
    std::set<std::string> here;
    for (const auto& m : f.moves) here.insert(m.substr(0, m.find(' ')));
    seen.insert(here.begin(), here.end());
    if (here.size() >= 2) ++chains;
  }
  std::vector<std::string> missing;
  for (const auto& k : kinds)
    if (!seen.count(k)) missing.push_back(k);
  std::ostringstream w;
  w << "Cerf invariance: " << passed << "/" << files << " files, " << seen.size() << "/" << kinds.size() << " move kinds, "
    << chains << " chains, negative control " << (control_failed ? "fails" : "does not fail");
  for (const auto& b : bad) w << "\n       failed: " << b;
  for (const auto& k : missing) w << "\n       missing move: " << k;
  line(7, passed == files && files > 0 && missing.empty() && chains >= 2 && control_found && control_failed, w.str());
}

void criterion8(const std::string& first) {
  suites::ModuliConfig cfg;
  const auto second = suites::run_moduli(cfg).to_json();
  line(8, first == second, "byte-identical JSON, same seed and config: " + std::to_string(first.size()) + " bytes");
}

}  // namespace

int main() {
  criterion1();
  suites::ModuliConfig cfg;
  const auto m = suites::run_moduli(cfg);
  criterion2(m);
  criterion3(m);
  criterion4(m);
  criterion5(m);
  criterion6(m);
  criterion7();
  criterion8(m.to_json());
  std::printf("%s: %d failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
