// cobord2: verification driver.
//
//   cobord2 axioms [catalog]          diagram-axiom loops on a finite catalog
//   cobord2 moduli [--grid g,k ...]   numerical moduli suites
//   cobord2 functor eval <file.cdf>
//   cobord2 functor invariance <file.cdf> ...
//
// Exit status: 0 all checks pass, 1 a check failed, 2 bad input or usage.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cobord2/cdf.hpp"
#include "cobord2/lier_catalog.hpp"
#include "cobord2/suites.hpp"

using namespace cobord2;

namespace {

struct Common {
  std::uint64_t seed = 0;
  bool seed_flag = false;
  std::string out;
  bool time = false;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed_flag) return c.seed;
  if (const char* env = std::getenv("COBORD2_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("COBORD2_SEED is not an unsigned integer: ") + env);
  }
  return c.seed;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Base seed (overrides COBORD2_SEED)")->each([&](const std::string&) { c.seed_flag = true; });
  app->add_option("--out", c.out, "Write the JSON report here instead of stdout");
  app->add_flag("--time", c.time, "Include wall time in the report (breaks byte identity)");
}

int emit(VerificationReport& rep, const Common& c, std::chrono::steady_clock::time_point t0) {
  if (c.time) rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string js = rep.to_json();
  if (c.out.empty()) {
    std::cout << js;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << c.out << "\n";
      return 2;
    }
    f << js;
    std::cout << rep.suite << ": " << rep.count(CheckStatus::Pass) << " pass, " << rep.count(CheckStatus::Fail) << " fail, "
              << rep.count(CheckStatus::Unknown) << " unknown\n";
  }
  for (const auto& ch : rep.checks) {
    if (ch.status == CheckStatus::Fail) std::cerr << "FAIL " << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
  }
  return rep.count(CheckStatus::Fail) ? 1 : 0;
}

std::pair<int, int> parse_grid_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("grid point must be g,k: " + s);
  std::size_t u1 = 0, u2 = 0;
  const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
  const int g = std::stoi(a, &u1), k = std::stoi(b, &u2);
  if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("grid point must be g,k: " + s);
  if (g < 0 || k < 1) throw std::invalid_argument("grid point needs g >= 0 and k >= 1: " + s);
  return {g, k};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cobord2: partial 2-categories, SU(2) moduli and cobordism invariance checks"};
  app.require_subcommand(1);

  Common ca;
  std::string catalog_path;
  lier::AxiomConfig acfg;
  auto* axioms = app.add_subcommand("axioms", "Diagram-axiom loops over a finite group/biset catalog");
  axioms->add_option("catalog", catalog_path, "Catalog file (default: built-in Z2/Z3/S3/Q8 catalog)");
  axioms->add_option("--max-moves", acfg.max_moves, "Loop length bound")->check(CLI::PositiveNumber);
  axioms->add_option("--max-length", acfg.max_length, "Longest starting chain")->check(CLI::PositiveNumber);
  axioms->add_option("--budget", acfg.product_budget, "Skip chains whose carrier product exceeds this");
  add_common(axioms, ca);

  Common cm;
  suites::ModuliConfig mcfg;
  std::vector<std::string> grid;
  auto* moduli = app.add_subcommand("moduli", "Dimension, equivariance, gluing and rank suites");
  moduli->add_option("--grid", grid, "Grid points g,k (default: g <= 2, 1 <= k <= 3)");
  moduli->add_option("--trials", mcfg.trials, "Equivariance and gluing trials per grid point")->check(CLI::PositiveNumber);
  moduli->add_option("--points", mcfg.points, "Rank and dimension samples per grid point")->check(CLI::PositiveNumber);
  moduli->add_option("--tol", mcfg.num.residual_tol, "Residual tolerance")->check(CLI::PositiveNumber);
  moduli->add_option("--relation-tol", mcfg.num.relation_tol, "Relation residual tolerance")->check(CLI::PositiveNumber);
  moduli->add_option("--svd-ratio", mcfg.num.svd_ratio, "SVD rank threshold relative to the largest singular value")
      ->check(CLI::PositiveNumber);
  moduli->add_option("--fd-step", mcfg.num.fd_step, "Finite-difference step")->check(CLI::PositiveNumber);
  moduli->add_option("--branch-eps", mcfg.num.reject_distance, "Rejection distance from the excised locus")
      ->check(CLI::PositiveNumber);
  add_common(moduli, cm);

  auto* functor = app.add_subcommand("functor", "Evaluate or check cobordism decompositions");
  functor->require_subcommand(1);
  std::string eval_path;
  auto* eval = functor->add_subcommand("eval", "Dump the evaluated diagram and its normal form");
  eval->add_option("file", eval_path, "CDF file")->required();
  std::string eval_out;
  eval->add_option("--out", eval_out, "Write the dump here instead of stdout");

  Common cf;
  std::vector<std::string> inv_paths;
  fun::InvarianceConfig icfg;
  auto* inv = functor->add_subcommand("invariance", "Check @steps against @target under the @moves chain");
  inv->add_option("files", inv_paths, "CDF files")->required();
  inv->add_option("--samples", icfg.samples, "Numeric samples per face")->check(CLI::PositiveNumber);
  inv->add_option("--tol", icfg.num.residual_tol, "Residual tolerance")->check(CLI::PositiveNumber);
  add_common(inv, cf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*axioms) {
      const auto seed = resolve_seed(ca);
      auto cat = catalog_path.empty() ? lier::parse_catalog(lier::default_catalog_text(), seed)
                                      : lier::load_catalog(catalog_path, seed);
      auto rep = lier::run_axiom_loops(cat, acfg);
      rep.config["catalog"] = catalog_path.empty() ? "<default>" : std::filesystem::path(catalog_path).filename().string();
      rep.config["seed"] = seed;
      return emit(rep, ca, t0);
    }
    if (*moduli) {
      mcfg.seed = resolve_seed(cm);
      if (!grid.empty()) {
        mcfg.grid.clear();
        for (const auto& s : grid) mcfg.grid.push_back(parse_grid_point(s));
      }
      auto rep = suites::run_moduli(mcfg);
      return emit(rep, cm, t0);
    }
    if (*eval) {
      const auto f = cdf::load(eval_path);
      std::string dump;
      try {
        dump = suites::eval_dump(f);
      } catch (const cob::InvalidStep& e) {
        std::cerr << eval_path << ": " << e.what() << "\n";
        return 1;
      }
      if (eval_out.empty()) {
        std::cout << dump;
      } else {
        std::ofstream(eval_out, std::ios::binary) << dump;
      }
      return 0;
    }
    if (*inv) {
      icfg.seed = resolve_seed(cf);
      VerificationReport rep;
      rep.suite = "functor-invariance";
      rep.config["seed"] = icfg.seed;
      rep.config["samples"] = icfg.samples;
      rep.config["residual_tol"] = icfg.num.residual_tol;
      auto files = nlohmann::ordered_json::array();
      for (const auto& p : inv_paths) {
        const auto f = cdf::load(p);
        const auto name = std::filesystem::path(p).stem().string();
        files.push_back(name);
        rep.merge(suites::run_invariance(f, icfg, name));
      }
      rep.config["files"] = files;
      return emit(rep, cf, t0);
    }
  } catch (const lier::CatalogParseError& e) {
    std::cerr << "catalog: " << e.what() << "\n";
    return 2;
  } catch (const cdf::ParseError& e) {
    std::cerr << "cdf: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
