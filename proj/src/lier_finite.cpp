#include "cobord2/lier_finite.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

namespace cobord2::lier {

namespace {

std::vector<int> inverse_table(int n, const std::vector<int>& table) {
  std::vector<int> inv(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table[static_cast<std::size_t>(a * n + b)] == 0 && table[static_cast<std::size_t>(b * n + a)] == 0) {
        inv[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
  }
  return inv;
}

FiniteGroup make_group(std::string name, int n, std::vector<int> table) {
  FiniteGroup g;
  g.name = name;
  g.n = n;
  g.table = std::move(table);
  g.inv = inverse_table(n, g.table);
  g.factors = {std::move(name)};
  return g;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, int n, std::vector<int> table) {
  if (n < 1) throw InvalidGroup("group " + name + ": order must be positive");
  if (table.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InvalidGroup("group " + name + ": table has wrong size");
  }
  for (int v : table) {
    if (v < 0 || v >= n) throw InvalidGroup("group " + name + ": entry out of range");
  }
  auto at = [&](int a, int b) { return table[static_cast<std::size_t>(a * n + b)]; };
  for (int a = 0; a < n; ++a) {
    if (at(0, a) != a || at(a, 0) != a) throw InvalidGroup("group " + name + ": element 0 is not the identity");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (at(at(a, b), c) != at(a, at(b, c))) {
          throw InvalidGroup("group " + name + ": not associative at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
  }
  FiniteGroup g = make_group(std::move(name), n, std::move(table));
  for (int a = 0; a < n; ++a) {
    if (g.inv[static_cast<std::size_t>(a)] < 0) throw InvalidGroup("group " + g.name + ": element without inverse");
  }
  return g;
}

FiniteGroup trivial_group() { return make_group("Z1", 1, {0}); }

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw InvalidGroup("cyclic group of order < 1");
  std::vector<int> t(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
  }
  return make_group("Z" + std::to_string(n), n, std::move(t));
}

FiniteGroup symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<int> t(36);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] = perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
      t[static_cast<std::size_t>(a * 6 + b)] = index(c);
    }
  }
  return make_group("S3", 6, std::move(t));
}

// Index 2u + s stands for (-1)^s times unit u, units ordered 1, i, j, k.
FiniteGroup quaternion8() {
  // unit_mul[u][v] = {sign, unit}
  const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<int> t(64);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      const int s = (a % 2 + b % 2 + sign[ua][ub]) % 2;
      t[static_cast<std::size_t>(a * 8 + b)] = 2 * unit[ua][ub] + s;
    }
  }
  return make_group("Q8", 8, std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  FiniteGroup p;
  p.n = g.n * h.n;
  p.name = g.name + "x" + h.name;
  p.factors = g.factors;
  p.factors.insert(p.factors.end(), h.factors.begin(), h.factors.end());
  p.table.resize(static_cast<std::size_t>(p.n) * static_cast<std::size_t>(p.n));
  p.inv.resize(static_cast<std::size_t>(p.n));
  for (int a = 0; a < p.n; ++a) {
    const int a1 = a / h.n, a2 = a % h.n;
    p.inv[static_cast<std::size_t>(a)] = g.inverse(a1) * h.n + h.inverse(a2);
    for (int b = 0; b < p.n; ++b) {
      const int b1 = b / h.n, b2 = b % h.n;
      p.table[static_cast<std::size_t>(a * p.n + b)] = g.mul(a1, b1) * h.n + h.mul(a2, b2);
    }
  }
  return p;
}

void FiniteBiset::validate() const {
  if (!left || !right) throw InvalidBiset("biset " + name + ": missing group");
  if (m < 1) throw InvalidBiset("biset " + name + ": empty carrier");
  const int nl = left->n, nr = right->n;
  if (lact.size() != static_cast<std::size_t>(nl * m) || ract.size() != static_cast<std::size_t>(m * nr)) {
    throw InvalidBiset("biset " + name + ": action table has wrong size");
  }
  for (int v : lact) {
    if (v < 0 || v >= m) throw InvalidBiset("biset " + name + ": left action out of range");
  }
  for (int v : ract) {
    if (v < 0 || v >= m) throw InvalidBiset("biset " + name + ": right action out of range");
  }
  for (int x = 0; x < m; ++x) {
    if (act_left(0, x) != x || act_right(x, 0) != x) throw InvalidBiset("biset " + name + ": identity acts nontrivially");
    for (int g = 0; g < nl; ++g) {
      for (int h = 0; h < nl; ++h) {
        if (act_left(left->mul(g, h), x) != act_left(g, act_left(h, x))) {
          throw InvalidBiset("biset " + name + ": left table is not an action");
        }
      }
      for (int h = 0; h < nr; ++h) {
        if (act_right(act_left(g, x), h) != act_left(g, act_right(x, h))) {
          throw InvalidBiset("biset " + name + ": actions do not commute");
        }
      }
    }
    for (int g = 0; g < nr; ++g) {
      for (int h = 0; h < nr; ++h) {
        if (act_right(x, right->mul(g, h)) != act_right(act_right(x, g), h)) {
          throw InvalidBiset("biset " + name + ": right table is not an action");
        }
      }
    }
  }
}

FiniteBiset regular_biset(const GroupPtr& g) {
  FiniteBiset b;
  b.name = "Id_" + g->name;
  b.left = b.right = g;
  b.m = g->n;
  b.lact.resize(static_cast<std::size_t>(g->n * g->n));
  b.ract.resize(b.lact.size());
  for (int a = 0; a < g->n; ++a) {
    for (int x = 0; x < g->n; ++x) {
      b.lact[static_cast<std::size_t>(a * g->n + x)] = g->mul(a, x);
      b.ract[static_cast<std::size_t>(x * g->n + a)] = g->mul(x, a);
    }
  }
  return b;
}

FiniteBiset pants_biset(const GroupPtr& g, const GroupPtr& gxg) {
  const int n = g->n;
  if (gxg->n != n * n) throw InvalidBiset("pants: left group must be G x G");
  FiniteBiset b;
  b.name = "P_" + g->name;
  b.left = gxg;
  b.right = g;
  b.m = n * n;
  b.lact.resize(static_cast<std::size_t>(n * n * n * n));
  b.ract.resize(static_cast<std::size_t>(n * n * n));
  for (int x = 0; x < b.m; ++x) {
    const int a = x / n, c = x % n;
    for (int h = 0; h < n * n; ++h) {
      const int g0 = h / n, g1 = h % n;
      b.lact[static_cast<std::size_t>(h * b.m + x)] = g->mul(g0, a) * n + g->mul(g1, c);
    }
    for (int g2 = 0; g2 < n; ++g2) {
      b.ract[static_cast<std::size_t>(x * n + g2)] = g->mul(a, g2) * n + g->mul(c, g2);
    }
  }
  return b;
}

FiniteBiset point_biset(const GroupPtr& left, const GroupPtr& right) {
  FiniteBiset b;
  b.name = "pt_" + left->name + "_" + right->name;
  b.left = left;
  b.right = right;
  b.m = 1;
  b.lact.assign(static_cast<std::size_t>(left->n), 0);
  b.ract.assign(static_cast<std::size_t>(right->n), 0);
  return b;
}

FiniteBiset product_biset(const FiniteBiset& a, const FiniteBiset& b, const GroupPtr& left, const GroupPtr& right) {
  if (left->n != a.left->n * b.left->n || right->n != a.right->n * b.right->n) {
    throw InvalidBiset("product biset: group orders do not match");
  }
  FiniteBiset p;
  p.name = a.name + "*" + b.name;
  p.left = left;
  p.right = right;
  p.m = a.m * b.m;
  p.lact.resize(static_cast<std::size_t>(left->n * p.m));
  p.ract.resize(static_cast<std::size_t>(p.m * right->n));
  for (int x = 0; x < p.m; ++x) {
    const int xa = x / b.m, xb = x % b.m;
    for (int g = 0; g < left->n; ++g) {
      const int ga = g / b.left->n, gb = g % b.left->n;
      p.lact[static_cast<std::size_t>(g * p.m + x)] = a.act_left(ga, xa) * b.m + b.act_left(gb, xb);
    }
    for (int g = 0; g < right->n; ++g) {
      const int ga = g / b.right->n, gb = g % b.right->n;
      p.ract[static_cast<std::size_t>(x * right->n + g)] = a.act_right(xa, ga) * b.m + b.act_right(xb, gb);
    }
  }
  return p;
}

FiniteBiset adjoint_biset(const FiniteBiset& b) {
  FiniteBiset r;
  r.name = b.name + "^T";
  r.left = b.right;
  r.right = b.left;
  r.m = b.m;
  r.lact.resize(static_cast<std::size_t>(r.left->n * r.m));
  r.ract.resize(static_cast<std::size_t>(r.m * r.right->n));
  for (int x = 0; x < r.m; ++x) {
    for (int g = 0; g < r.left->n; ++g) r.lact[static_cast<std::size_t>(g * r.m + x)] = b.act_right(x, b.right->inverse(g));
    for (int g = 0; g < r.right->n; ++g) r.ract[static_cast<std::size_t>(x * r.right->n + g)] = b.act_left(b.left->inverse(g), x);
  }
  return r;
}

bool middle_action_free(const FiniteBiset& m, const FiniteBiset& n) {
  const FiniteGroup& g = *m.right;
  for (int a = 1; a < g.n; ++a) {
    bool fixes_m = false, fixes_n = false;
    const int ai = g.inverse(a);
    for (int x = 0; x < m.m && !fixes_m; ++x) fixes_m = m.act_right(x, ai) == x;
    for (int y = 0; y < n.m && !fixes_n; ++y) fixes_n = n.act_left(a, y) == y;
    if (fixes_m && fixes_n) return false;
  }
  return true;
}

namespace {

// A generating set, greedily: add elements outside the current subgroup.
std::vector<int> generators(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<char> in(static_cast<std::size_t>(g.n), 0);
  in[0] = 1;
  for (int a = 1; a < g.n; ++a) {
    if (in[static_cast<std::size_t>(a)]) continue;
    gens.push_back(a);
    std::vector<int> frontier;
    for (int x = 0; x < g.n; ++x) {
      if (in[static_cast<std::size_t>(x)]) frontier.push_back(x);
    }
    while (!frontier.empty()) {
      const int x = frontier.back();
      frontier.pop_back();
      for (int s : gens) {
        for (int y : {g.mul(x, s), g.mul(s, x)}) {
          if (!in[static_cast<std::size_t>(y)]) {
            in[static_cast<std::size_t>(y)] = 1;
            frontier.push_back(y);
          }
        }
      }
    }
  }
  return gens;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Collapse quotient_collapse(const std::vector<const FiniteBiset*>& chain) {
  if (chain.empty()) throw std::invalid_argument("quotient_collapse: empty chain");
  Collapse c;
  std::uint64_t total = 1;
  for (const auto* b : chain) {
    c.radix.push_back(b->m);
    total *= static_cast<std::uint64_t>(b->m);
  }
  if (total > (1u << 26)) throw std::length_error("quotient_collapse: product too large");
  const std::size_t k = chain.size();
  std::vector<std::uint64_t> stride(k, 1);
  for (std::size_t i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * static_cast<std::uint64_t>(c.radix[i + 1]);

  UnionFind uf(static_cast<std::size_t>(total));
  for (std::size_t j = 1; j < k; ++j) {
    const FiniteBiset& lhs = *chain[j - 1];
    const FiniteBiset& rhs = *chain[j];
    const FiniteGroup& g = *rhs.left;
    for (int s : generators(g)) {
      const int si = g.inverse(s);
      for (std::uint64_t code = 0; code < total; ++code) {
        const int x = static_cast<int>((code / stride[j - 1]) % static_cast<std::uint64_t>(c.radix[j - 1]));
        const int y = static_cast<int>((code / stride[j]) % static_cast<std::uint64_t>(c.radix[j]));
        const int x2 = lhs.act_right(x, si);
        const int y2 = rhs.act_left(s, y);
        const std::uint64_t code2 = code + (static_cast<std::uint64_t>(x2) - static_cast<std::uint64_t>(x)) * stride[j - 1] +
                                    (static_cast<std::uint64_t>(y2) - static_cast<std::uint64_t>(y)) * stride[j];
        uf.unite(static_cast<std::uint32_t>(code), static_cast<std::uint32_t>(code2));
      }
    }
  }

  c.class_of.assign(static_cast<std::size_t>(total), -1);
  std::vector<int> class_of_root(static_cast<std::size_t>(total), -1);
  for (std::uint64_t code = 0; code < total; ++code) {
    const auto r = uf.find(static_cast<std::uint32_t>(code));
    if (class_of_root[r] < 0) {
      class_of_root[r] = static_cast<int>(c.rep.size());
      c.rep.push_back(code);
    }
    c.class_of[code] = class_of_root[r];
  }

  FiniteBiset& out = c.biset;
  out.left = chain.front()->left;
  out.right = chain.back()->right;
  out.m = static_cast<int>(c.rep.size());
  for (std::size_t i = 0; i < k; ++i) out.name += (i ? ";" : "") + chain[i]->name;
  out.lact.resize(static_cast<std::size_t>(out.left->n * out.m));
  out.ract.resize(static_cast<std::size_t>(out.m * out.right->n));
  const FiniteBiset& first = *chain.front();
  const FiniteBiset& last = *chain.back();
  for (int cls = 0; cls < out.m; ++cls) {
    const std::uint64_t code = c.rep[static_cast<std::size_t>(cls)];
    const int x0 = static_cast<int>(code / stride[0]);
    const int xl = static_cast<int>(code % static_cast<std::uint64_t>(c.radix[k - 1]));
    for (int g = 0; g < out.left->n; ++g) {
      const std::uint64_t moved = code + (static_cast<std::uint64_t>(first.act_left(g, x0)) - static_cast<std::uint64_t>(x0)) * stride[0];
      out.lact[static_cast<std::size_t>(g * out.m + cls)] = c.class_of[moved];
    }
    for (int g = 0; g < out.right->n; ++g) {
      const std::uint64_t moved = code - static_cast<std::uint64_t>(xl) + static_cast<std::uint64_t>(last.act_right(xl, g));
      out.ract[static_cast<std::size_t>(cls * out.right->n + g)] = c.class_of[moved];
    }
  }
  return c;
}

std::optional<FiniteBiset> try_compose_bisets(const FiniteBiset& m, const FiniteBiset& n) {
  if (!(*m.right == *n.left)) return std::nullopt;
  if (!middle_action_free(m, n)) return std::nullopt;
  return quotient_collapse({&m, &n}).biset;
}

namespace {

bool assign_orbit(const FiniteBiset& a, const FiniteBiset& b, const std::vector<int>& lg, const std::vector<int>& rg,
                  int x0, int y0, std::vector<int>& phi, std::vector<char>& used, std::vector<int>& touched) {
  std::vector<int> queue{x0};
  phi[static_cast<std::size_t>(x0)] = y0;
  used[static_cast<std::size_t>(y0)] = 1;
  touched.push_back(x0);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int x = queue[qi];
    const int y = phi[static_cast<std::size_t>(x)];
    auto visit = [&](int x2, int y2) {
      int& slot = phi[static_cast<std::size_t>(x2)];
      if (slot >= 0) return slot == y2;
      if (used[static_cast<std::size_t>(y2)]) return false;
      slot = y2;
      used[static_cast<std::size_t>(y2)] = 1;
      touched.push_back(x2);
      queue.push_back(x2);
      return true;
    };
    for (int g : lg) {
      if (!visit(a.act_left(g, x), b.act_left(g, y))) return false;
    }
    for (int g : rg) {
      if (!visit(a.act_right(x, g), b.act_right(y, g))) return false;
    }
  }
  return true;
}

bool search_iso(const FiniteBiset& a, const FiniteBiset& b, const std::vector<int>& lg, const std::vector<int>& rg,
                std::vector<int>& phi, std::vector<char>& used) {
  int x0 = -1;
  for (int x = 0; x < a.m; ++x) {
    if (phi[static_cast<std::size_t>(x)] < 0) {
      x0 = x;
      break;
    }
  }
  if (x0 < 0) return true;
  for (int y0 = 0; y0 < b.m; ++y0) {
    if (used[static_cast<std::size_t>(y0)]) continue;
    std::vector<int> touched;
    if (assign_orbit(a, b, lg, rg, x0, y0, phi, used, touched) && search_iso(a, b, lg, rg, phi, used)) return true;
    for (int x : touched) {
      used[static_cast<std::size_t>(phi[static_cast<std::size_t>(x)])] = 0;
      phi[static_cast<std::size_t>(x)] = -1;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_biset_isomorphism(const FiniteBiset& a, const FiniteBiset& b) {
  if (a.m != b.m || !(*a.left == *b.left) || !(*a.right == *b.right)) return std::nullopt;
  const auto lg = generators(*a.left);
  const auto rg = generators(*a.right);
  std::vector<int> phi(static_cast<std::size_t>(a.m), -1);
  std::vector<char> used(static_cast<std::size_t>(b.m), 0);
  if (!search_iso(a, b, lg, rg, phi, used)) return std::nullopt;
  return phi;
}

}  // namespace cobord2::lier
