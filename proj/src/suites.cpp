#include "cobord2/suites.hpp"

#include <algorithm>
#include <cstdio>

namespace cobord2::suites {

std::vector<std::pair<int, int>> ModuliConfig::default_grid() {
  std::vector<std::pair<int, int>> g;
  for (int genus = 0; genus <= 2; ++genus) {
    for (int k = 1; k <= 3; ++k) g.emplace_back(genus, k);
  }
  return g;
}

std::vector<Word> attaching_words(int g, int k) {
  std::vector<Word> ws;
  for (int j = 1; j <= g; ++j) {
    ws.push_back(Word::parse("a" + std::to_string(j)));
    ws.push_back(Word::parse("b" + std::to_string(j)));
  }
  if (g >= 1) ws.push_back(Word::parse("a1 b1"));
  for (int i = 2; i <= k; ++i) ws.push_back(Word::parse("d" + std::to_string(i)));
  if (k >= 2) ws.push_back(Word::parse("d1"));
  if (k >= 3) ws.push_back(Word::parse("d2 d3"));
  return ws;
}

namespace {

std::string tag(int g, int k) { return "g=" + std::to_string(g) + " k=" + std::to_string(k); }

CheckRecord threshold(std::string name, double residual, double tol, std::uint64_t seed, std::string detail = "") {
  return {std::move(name), residual < tol ? CheckStatus::Pass : CheckStatus::Fail, residual, seed, std::move(detail)};
}

// An exception inside a check block becomes a failed record instead of ending the run.
template <class F>
void guarded(VerificationReport& rep, const std::string& name, std::uint64_t seed, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rep.add({name, CheckStatus::Fail, 0.0, seed, std::string("aborted: ") + e.what()});
  }
}

}  // namespace

VerificationReport run_moduli(const ModuliConfig& cfg) {
  VerificationReport rep;
  rep.suite = "moduli";
  auto& c = rep.config;
  c["seed"] = cfg.seed;
  c["trials"] = cfg.trials;
  c["points"] = cfg.points;
  auto grid = nlohmann::ordered_json::array();
  for (const auto& [g, k] : cfg.grid) grid.push_back({g, k});
  c["grid"] = grid;
  c["fd_step"] = cfg.num.fd_step;
  c["svd_ratio"] = cfg.num.svd_ratio;
  c["residual_tol"] = cfg.num.residual_tol;
  c["relation_tol"] = cfg.num.relation_tol;
  c["reject_distance"] = cfg.num.reject_distance;

  const auto& num = cfg.num;
  for (const auto& [g, k] : cfg.grid) {
    const std::string t = tag(g, k);
    const std::uint64_t base = mix_seed(cfg.seed, static_cast<std::uint64_t>(100 * g + k));
    auto seed_of = [&](std::uint64_t check) { return mix_seed(base, check); };
    const mod::ModuliChart chart{g, k};

    guarded(rep, "dimension " + t, seed_of(0), [&] {
      const auto s = seed_of(0);
      int bad = 0;
      for (int i = 0; i < cfg.points; ++i) {
        const auto p = mod::random_point(g, k, mix_seed(s, static_cast<std::uint64_t>(i)), num);
        bad += mod::tangent_dimension(p, num) != chart.dimension();
        bad += static_cast<int>(mod::locus_tangent(p, {}, num).basis.size()) != chart.dimension();
      }
      bad += chart.ambient_dimension() != chart.dimension();
      rep.add({"dimension " + t, bad == 0 ? CheckStatus::Pass : CheckStatus::Fail, static_cast<double>(bad), s,
               "expected " + std::to_string(chart.dimension()) + " at " + std::to_string(cfg.points) + " points"});
    });
    guarded(rep, "equivariance " + t, seed_of(1), [&] {  // with relation and action axioms
      const auto s = seed_of(1);
      double rel = 0, eq = 0, ax = 0;
      std::vector<bool> outgoing(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) outgoing[i] = i % 2 == 1;
      for (int i = 0; i < cfg.trials; ++i) {
        const auto st = mix_seed(s, static_cast<std::uint64_t>(i));
        const auto p = mod::random_point(g, k, st, num);
        const auto ga = mod::random_gauge(k, mix_seed(st, 1));
        const auto gb = mod::random_gauge(k, mix_seed(st, 2));
        rel = std::max(rel, mod::relation_residual(p));
        const auto m0 = mod::moment(p, outgoing);
        const auto m1 = mod::moment(mod::action(ga, p), outgoing);
        for (int b = 0; b < k; ++b) eq = std::max(eq, distance(m1[b], adjoint(ga[b], m0[b])));
        std::vector<UnitQuaternion> gab(static_cast<std::size_t>(k)), id(static_cast<std::size_t>(k));
        for (int b = 0; b < k; ++b) gab[b] = ga[b] * gb[b];
        ax = std::max({ax, mod::distance(mod::action(id, p), p),
                       mod::distance(mod::action(gab, p), mod::action(ga, mod::action(gb, p)))});
      }
      rep.add(threshold("relation " + t, rel, num.relation_tol, s));
      rep.add(threshold("equivariance " + t, eq, num.residual_tol, s, std::to_string(cfg.trials) + " trials"));
      rep.add(threshold("action axioms " + t, ax, num.relation_tol, s, std::to_string(cfg.trials) + " trials"));
    });
    // gluing: (g, k) at its last boundary when k >= 2, else a cylinder onto it
    guarded(rep, "gluing roundtrip " + t, seed_of(2), [&] {
      const auto s = seed_of(2);
      const int g1 = k >= 2 ? g : 0, k1 = k >= 2 ? k : 2;
      double rt = 0, rel = 0, closest = 1e300;
      int branch = 0;
      for (int i = 0; i < cfg.trials; ++i) {
        for (std::uint64_t attempt = 0;; ++attempt) {
          const auto st = mix_seed(mix_seed(s, static_cast<std::uint64_t>(i)), attempt);
          const auto p2 = mod::random_point(g, k, st, num);
          auto p1 = mod::random_point(g1, k1, mix_seed(st, 1), num);
          p1.theta[k1 - 2] = -mod::theta1_of(p2);
          if (mod::distance_to_excised(p1) < num.reject_distance) continue;
          try {
            const auto q = mod::glue(p1, k1, p2);
            rel = std::max(rel, mod::relation_residual(q));
            closest = std::min(closest, mod::distance_to_excised(q));
            rt = std::max(rt, mod::roundtrip_residual(p1, k1, p2));
          } catch (const BranchError&) {
            ++branch;
          }
          break;
        }
      }
      rep.add(threshold("gluing roundtrip " + t, rt, num.residual_tol, s, std::to_string(cfg.trials) + " trials"));
      rep.add(threshold("gluing relation " + t, rel, num.relation_tol, s));
      char buf[64];
      std::snprintf(buf, sizeof buf, "closest approach %.3e", closest);
      rep.add({"gluing excised locus " + t, branch == 0 ? CheckStatus::Pass : CheckStatus::Fail, static_cast<double>(branch), s,
               std::string(buf)});
    });
    const auto words = attaching_words(g, k);
    for (std::size_t w = 0; w < words.size(); ++w) {
      guarded(rep, "rank " + t + " [" + words[w].str() + "]", seed_of(10 + w), [&] {
        const auto s = seed_of(10 + w);
        int good = 0, borderline = 0, wrong = 0;
        for (int i = 0; i < cfg.points; ++i) {
          const auto p = mod::sample_on_locus(g, k, {words[w]}, mix_seed(s, static_cast<std::uint64_t>(i)), num);
          const auto tf = mod::locus_tangent(p, {words[w]}, num);
          if (tf.borderline) ++borderline;
          else if (tf.rank == 3) ++good;
          else ++wrong;
        }
        const int need = (95 * cfg.points + 99) / 100;
        rep.add({"rank " + t + " [" + words[w].str() + "]", good >= need ? CheckStatus::Pass : CheckStatus::Fail,
                 static_cast<double>(cfg.points - good), s,
                 std::to_string(good) + "/" + std::to_string(cfg.points) + " at rank 3; borderline rejects " +
                     std::to_string(borderline) + "; other ranks " + std::to_string(wrong)});
      });
    }
    if (g == 0) guarded(rep, "zero section " + t, seed_of(3), [&] {  // half-dimensional
      const auto s = seed_of(3);
      std::vector<Word> caps;
      for (int i = 2; i <= k; ++i) caps.push_back(Word::parse("d" + std::to_string(i)));
      int bad = 0;
      for (int i = 0; i < cfg.points; ++i) {
        const auto p = mod::sample_on_locus(g, k, caps, mix_seed(s, static_cast<std::uint64_t>(i)), num);
        bad += static_cast<int>(mod::locus_tangent(p, caps, num).basis.size()) * 2 != chart.dimension();
        bad += mod::membership_zero_section(p, [&] {
                 std::vector<int> all;
                 for (int b = 1; b <= k; ++b) all.push_back(b);
                 return all;
               }()) > num.residual_tol;
      }
      rep.add({"zero section " + t, bad == 0 ? CheckStatus::Pass : CheckStatus::Fail, static_cast<double>(bad), s,
               "kernel dimension " + std::to_string(3 * (k - 1))});
    });
    if (g >= 1) guarded(rep, "transverse pair " + t, seed_of(4), [&] {
      const auto s = seed_of(4);
      const std::vector<Word> pair{Word::parse("a1"), Word::parse("b1")};
      int bad = 0;
      for (int i = 0; i < cfg.points; ++i) {
        const auto p = mod::sample_on_locus(g, k, pair, mix_seed(s, static_cast<std::uint64_t>(i)), num);
        bad += mod::locus_tangent(p, pair, num).rank != 6;
      }
      rep.add({"transverse pair " + t, bad == 0 ? CheckStatus::Pass : CheckStatus::Fail, static_cast<double>(bad), s, "rank 6"});
    });
    if (g >= 1) guarded(rep, "cancellation 1-2 " + t, seed_of(5), [&] {
      const auto s12 = seed_of(5);
      const auto cc = fun::crosscheck_12(g - 1, k, cfg.points, s12, num);
      auto r = threshold("cancellation 1-2 " + t, cc.residual, num.residual_tol, s12,
                         "rank failures " + std::to_string(cc.rank_failures));
      if (cc.rank_failures) r.status = CheckStatus::Fail;
      rep.add(r);
    });
    guarded(rep, "cancellation 0-1 " + t, seed_of(6), [&] {
      const auto s01 = seed_of(6);
      const auto cc = fun::crosscheck_01(g, k, cfg.points, s01, num);
      auto r = threshold("cancellation 0-1 " + t, cc.residual, num.residual_tol, s01,
                         "rank failures " + std::to_string(cc.rank_failures));
      if (cc.rank_failures) r.status = CheckStatus::Fail;
      rep.add(r);
    });
  }
  return rep;
}

std::string eval_dump(const cdf::CdfFile& f) {
  ham::HamSym h;
  const auto d = fun::eval2(f.seq, h);
  const auto n = ham::normalize_mod_equiv(d, h);
  auto rows = [&](const p2c::StackDiagram& x) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& row : x.rows) {
      auto r = nlohmann::ordered_json::array();
      for (const auto& cell : row) {
        r.push_back(cell.is_face() ? h.describe2(cell.id) : "| " + ham::describe(h.space_of(cell.id)));
      }
      out.push_back(r);
    }
    return out;
  };
  auto seq = [&](const p2c::SeqMorphism& s) {
    auto out = nlohmann::ordered_json::array();
    for (auto id : s.items) out.push_back(ham::describe(h.space_of(id)));
    return out;
  };
  nlohmann::ordered_json j;
  j["suite"] = "functor-eval";
  j["source"] = seq(d.source);
  j["target"] = seq(d.target);
  j["rows"] = rows(d);
  j["normal_form"] = rows(n);
  j["identity"] = n.rows.empty();
  return j.dump(2) + "\n";
}

VerificationReport run_invariance(const cdf::CdfFile& f, const fun::InvarianceConfig& cfg, const std::string& name) {
  VerificationReport rep;
  rep.suite = "functor-invariance";
  rep.config["seed"] = cfg.seed;
  rep.config["samples"] = cfg.samples;
  rep.config["residual_tol"] = cfg.num.residual_tol;
  try {
    rep.merge(fun::invariance_check(f.seq, f.target_seq(), f.moves, cfg, name));
  } catch (const fun::MoveChainInvalid& e) {
    rep.add({name + " move chain", CheckStatus::Fail, 0.0, cfg.seed, e.what()});
  } catch (const cob::InvalidStep& e) {
    rep.add({name + " evaluation", CheckStatus::Fail, 0.0, cfg.seed, e.what()});
  }
  return rep;
}

}  // namespace cobord2::suites
