#include "cobord2/lier_catalog.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace cobord2::lier {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> t;
  std::istringstream in(line);
  std::string w;
  while (in >> w) t.push_back(w);
  return t;
}

int to_int(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CatalogParseError(line, "expected an integer, got '" + s + "'");
  }
}

}  // namespace

Catalog parse_catalog(const std::string& text, std::uint64_t probe_seed) {
  Catalog cat;
  cat.inst = std::make_unique<LieRFinite>(probe_seed);
  LieRFinite& L = *cat.inst;
  std::map<std::string, std::size_t> biset_pos;

  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) {
      const auto hash = l.find('#');
      if (hash != std::string::npos) l.erase(hash);
      lines.push_back(l);
    }
  }

  auto group_named = [&](const std::string& n, int line) {
    auto it = cat.groups.find(n);
    if (it == cat.groups.end()) throw CatalogParseError(line, "unknown group '" + n + "'");
    return it->second;
  };
  auto biset_named = [&](const std::string& n, int line) -> const FiniteBiset& {
    auto it = biset_pos.find(n);
    if (it == biset_pos.end()) throw CatalogParseError(line, "unknown biset '" + n + "'");
    return L.biset(cat.bisets[it->second]);
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int ln = static_cast<int>(i + 1);
    const auto t = tokens(lines[i]);
    if (t.empty()) continue;
    if (t[0] == "group") {
      if (t.size() < 3) throw CatalogParseError(ln, "group needs a name and a kind");
      if (cat.groups.count(t[1])) throw CatalogParseError(ln, "duplicate group '" + t[1] + "'");
      FiniteGroup g;
      try {
        if (t[2] == "cyclic" && t.size() == 4) {
          g = cyclic_group(to_int(t[3], ln));
        } else if (t[2] == "symmetric" && t.size() == 4 && t[3] == "3") {
          g = symmetric3();
        } else if (t[2] == "quaternion" && t.size() == 3) {
          g = quaternion8();
        } else if (t[2] == "table" && t.size() == 4) {
          const int n = to_int(t[3], ln);
          if (n < 1 || n > 64) throw CatalogParseError(ln, "table order must be in 1..64");
          std::vector<int> table;
          for (int r = 0; r < n; ++r) {
            if (++i >= lines.size()) throw CatalogParseError(ln, "table ends early");
            const auto row = tokens(lines[i]);
            if (row.size() != static_cast<std::size_t>(n)) throw CatalogParseError(static_cast<int>(i + 1), "table row has wrong length");
            for (const auto& e : row) table.push_back(to_int(e, static_cast<int>(i + 1)));
          }
          g = FiniteGroup::from_table(t[1], n, std::move(table));
        } else {
          throw CatalogParseError(ln, "unknown group kind '" + t[2] + "'");
        }
      } catch (const InvalidGroup& e) {
        throw CatalogParseError(ln, e.what());
      }
      // Catalog names replace the built-in ones so two declarations of the
      // same kind stay distinct objects.
      g.name = t[1];
      g.factors = {t[1]};
      cat.groups.emplace(t[1], L.add_group(g));
    } else if (t[0] == "biset") {
      if (t.size() < 4) throw CatalogParseError(ln, "biset needs a name, a kind and arguments");
      if (biset_pos.count(t[1])) throw CatalogParseError(ln, "duplicate biset '" + t[1] + "'");
      FiniteBiset b;
      if (t[2] == "regular" && t.size() == 4) {
        b = regular_biset(L.group_ptr(group_named(t[3], ln)));
      } else if (t[2] == "pants" && t.size() == 4) {
        const auto g = group_named(t[3], ln);
        b = pants_biset(L.group_ptr(g), L.group_ptr(L.product_object(g, g)));
      } else if ((t[2] == "unit" || t[2] == "counit") && t.size() == 4) {
        const auto g = group_named(t[3], ln);
        const auto one = L.add_group(trivial_group());
        b = t[2] == "unit" ? point_biset(L.group_ptr(one), L.group_ptr(g)) : point_biset(L.group_ptr(g), L.group_ptr(one));
      } else if (t[2] == "product" && t.size() == 5) {
        const FiniteBiset& x = biset_named(t[3], ln);
        const FiniteBiset& y = biset_named(t[4], ln);
        const auto lo = L.product_object(L.object_of(x.left), L.object_of(y.left));
        const auto ro = L.product_object(L.object_of(x.right), L.object_of(y.right));
        b = product_biset(x, y, L.group_ptr(lo), L.group_ptr(ro));
      } else {
        throw CatalogParseError(ln, "unknown biset kind '" + t[2] + "'");
      }
      b.name = t[1];
      try {
        // Built-in kinds are actions by construction; full checks on large
        // products would dominate load time.
        const auto cost = static_cast<std::uint64_t>(b.left->n) * static_cast<std::uint64_t>(b.left->n + b.right->n) *
                          static_cast<std::uint64_t>(b.m);
        if (cost <= (1u << 22)) b.validate();
      } catch (const InvalidBiset& e) {
        throw CatalogParseError(ln, e.what());
      }
      biset_pos.emplace(t[1], cat.bisets.size());
      cat.biset_names.push_back(t[1]);
      cat.bisets.push_back(L.add_atom(b));
    } else {
      throw CatalogParseError(ln, "unknown declaration '" + t[0] + "'");
    }
  }
  return cat;
}

Catalog load_catalog(const std::string& path, std::uint64_t probe_seed) {
  std::ifstream in(path);
  if (!in) throw CatalogParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), probe_seed);
}

std::string default_catalog_text() {
  std::string s;
  for (const char* g : {"Z2", "Z3", "S3", "Q8"}) {
    const std::string n = g;
    const std::string kind = n == "Z2" ? "cyclic 2" : n == "Z3" ? "cyclic 3" : n == "S3" ? "symmetric 3" : "quaternion";
    s += "group " + n + " " + kind + "\n";
    s += "biset Id" + n + " regular " + n + "\n";
    s += "biset P" + n + " pants " + n + "\n";
    s += "biset PxId" + n + " product P" + n + " Id" + n + "\n";
    s += "biset IdxP" + n + " product Id" + n + " P" + n + "\n";
    s += "biset IdId" + n + " product Id" + n + " Id" + n + "\n";
  }
  return s;
}

namespace {

struct Move {
  char kind;  // 'c' compose, 'd' decompose
  std::size_t index;
};

std::string seq_name(const LieRFinite& L, const p2c::SeqMorphism& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.items.size(); ++i) out += (i ? "," : "") + L.biset(s.items[i]).name;
  return out + ")";
}

}  // namespace

VerificationReport run_axiom_loops(Catalog& cat, const AxiomConfig& cfg) {
  LieRFinite& L = *cat.inst;
  VerificationReport rep;
  rep.suite = "axioms";

  // Starting chains of catalog bisets.
  std::vector<p2c::SeqMorphism> starts;
  std::function<void(std::vector<p2c::Simple1>&)> extend = [&](std::vector<p2c::Simple1>& cur) {
    if (!cur.empty()) starts.push_back(p2c::seq_of(L, cur));
    if (static_cast<int>(cur.size()) >= cfg.max_length) return;
    for (auto b : cat.bisets) {
      if (!cur.empty() && L.target1(cur.back()) != L.source1(b)) continue;
      cur.push_back(b);
      if (L.product_size(cur) <= cfg.product_budget) extend(cur);
      cur.pop_back();
    }
  };
  std::vector<p2c::Simple1> scratch;
  extend(scratch);

  auto neighbours = [&](const p2c::SeqMorphism& s) {
    std::vector<std::pair<Move, p2c::SeqMorphism>> out;
    for (std::size_t i = 0; i + 1 < s.items.size(); ++i) {
      std::optional<p2c::Simple1> c;
      try {
        c = L.try_compose1(s.items[i], s.items[i + 1]);
      } catch (const std::length_error&) {
        continue;
      }
      if (!c) continue;
      auto n = s;
      n.items[i] = *c;
      n.items.erase(n.items.begin() + static_cast<std::ptrdiff_t>(i + 1));
      out.push_back({{'c', i}, n});
    }
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      for (const auto& [p, q] : L.decompositions(s.items[i])) {
        auto n = s;
        n.items[i] = p;
        n.items.insert(n.items.begin() + static_cast<std::ptrdiff_t>(i + 1), q);
        out.push_back({{'d', i}, n});
      }
    }
    return out;
  };

  std::size_t loop_no = 0;
  for (const auto& start : starts) {
    std::vector<p2c::SeqMorphism> path{start};
    std::vector<Move> moves;
    std::function<void()> dfs = [&]() {
      if (moves.size() >= 2 && path.back() == start) {
        std::string mv;
        for (const auto& m : moves) mv += (mv.empty() ? "" : " ") + std::string(1, m.kind) + std::to_string(m.index);
        char num[16];
        std::snprintf(num, sizeof num, "%06zu", loop_no++);
        CheckRecord rec{std::string("loop ") + num + " " + seq_name(L, start) + " [" + mv + "]", CheckStatus::Pass, 0.0, 0, ""};
        try {
          const auto r = p2c::check_diagram_axiom(path, L);
          const auto D = p2c::identification_path_diagram(path, L);
          std::size_t oracle_fail = 0;
          for (auto probe : L.probes_into(start)) {
            if (!(L.set_level_relation(p2c::concat_v2(p2c::face_diagram(L, probe), D)).points == L.corr(probe).points)) ++oracle_fail;
          }
          for (auto probe : L.probes_out_of(start)) {
            if (!(L.set_level_relation(p2c::concat_v2(D, p2c::face_diagram(L, probe))).points == L.corr(probe).points)) ++oracle_fail;
          }
          if (!r.all_pass() || r.checks.empty() || oracle_fail) {
            rec.status = CheckStatus::Fail;
            rec.residual = static_cast<double>(r.count(CheckStatus::Fail) + oracle_fail);
            rec.detail = std::to_string(r.count(CheckStatus::Fail)) + " probe failures, " + std::to_string(oracle_fail) +
                         " set-level mismatches";
          }
        } catch (const std::exception& e) {
          rec.status = CheckStatus::Fail;
          rec.detail = e.what();
        }
        rep.add(std::move(rec));
      }
      if (static_cast<int>(moves.size()) >= cfg.max_moves) return;
      for (auto& [m, next] : neighbours(path.back())) {
        if (L.product_size(next.items) > cfg.product_budget) continue;
        path.push_back(next);
        moves.push_back(m);
        dfs();
        moves.pop_back();
        path.pop_back();
      }
    };
    dfs();
  }
  rep.config["max_moves"] = cfg.max_moves;
  rep.config["max_length"] = cfg.max_length;
  rep.config["product_budget"] = cfg.product_budget;
  rep.config["starts"] = starts.size();
  return rep;
}

}  // namespace cobord2::lier
