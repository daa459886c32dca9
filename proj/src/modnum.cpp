#include "cobord2/modnum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace cobord2::mod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double qdist_identity(const UnitQuaternion& q) { return distance(q, UnitQuaternion::identity()); }

void push(std::vector<double>& out, const AlgVector& v) {
  out.insert(out.end(), {v.a, v.b, v.c});
}
void push(std::vector<double>& out, const UnitQuaternion& q) {
  out.insert(out.end(), {q.w, q.x, q.y, q.z});
}

int index_of(const std::string& gen) { return std::stoi(gen.substr(1)); }

}  // namespace

std::vector<std::string> ModuliChart::generators() const {
  std::vector<std::string> r;
  for (int i = 2; i <= k; ++i) r.push_back("theta" + std::to_string(i));
  for (int i = 2; i <= k; ++i) r.push_back("Gamma" + std::to_string(i));
  for (int j = 1; j <= g; ++j) {
    r.push_back("A" + std::to_string(j));
    r.push_back("B" + std::to_string(j));
  }
  return r;
}

ChartPoint ChartPoint::trivial(int g, int k) {
  ChartPoint p;
  p.g = g;
  p.k = k;
  p.theta.assign(k - 1, AlgVector{});
  p.Gamma.assign(k - 1, UnitQuaternion::identity());
  p.A.assign(g, UnitQuaternion::identity());
  p.B.assign(g, UnitQuaternion::identity());
  return p;
}

std::vector<double> ChartPoint::flat() const {
  std::vector<double> r;
  for (const auto& t : theta) push(r, t);
  for (const auto& q : Gamma) push(r, q);
  for (int j = 0; j < g; ++j) {
    push(r, A[j]);
    push(r, B[j]);
  }
  return r;
}

double distance(const ChartPoint& p, const ChartPoint& q) {
  if (p.g != q.g || p.k != q.k) return kInf;
  const auto a = p.flat(), b = q.flat();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

UnitQuaternion boundary_holonomy(const ChartPoint& p, int i) {
  if (i == 1) return exp_su2(theta1_of(p));
  const auto& G = p.Gamma.at(i - 2);
  return G * exp_su2(p.theta.at(i - 2)) * G.inverse();
}

UnitQuaternion pi_product(const ChartPoint& p) {
  ProductChain c;
  for (int i = 2; i <= p.k; ++i) c *= boundary_holonomy(p, i);
  for (int j = 0; j < p.g; ++j) c *= commutator(p.A[j], p.B[j]);
  return c.value();
}

AlgVector theta1_of(const ChartPoint& p) { return log_su2(pi_product(p).inverse()); }

double relation_residual(const ChartPoint& p) { return qdist_identity(exp_su2(theta1_of(p)) * pi_product(p)); }

double distance_to_excised(const ChartPoint& p) {
  const UnitQuaternion q = pi_product(p);
  return std::sqrt((q.w + 1) * (q.w + 1) + q.x * q.x + q.y * q.y + q.z * q.z);
}

std::vector<AlgVector> moment(const ChartPoint& p, const std::vector<bool>& outgoing) {
  std::vector<AlgVector> m;
  m.push_back(theta1_of(p));
  for (const auto& t : p.theta) m.push_back(t);
  for (std::size_t i = 0; i < m.size() && i < outgoing.size(); ++i) {
    if (outgoing[i]) m[i] = -m[i];
  }
  return m;
}

ChartPoint action(const std::vector<UnitQuaternion>& gs, const ChartPoint& p) {
  ChartPoint r = p;
  const UnitQuaternion g1 = gs.at(0);
  for (int i = 2; i <= p.k; ++i) {
    const auto& gi = gs.at(i - 1);
    r.Gamma[i - 2] = g1 * p.Gamma[i - 2] * gi.inverse();
    r.theta[i - 2] = adjoint(gi, p.theta[i - 2]);
  }
  for (int j = 0; j < p.g; ++j) {
    r.A[j] = g1 * p.A[j] * g1.inverse();
    r.B[j] = g1 * p.B[j] * g1.inverse();
  }
  return r;
}

ChartPoint random_point(int g, int k, std::uint64_t seed, const NumericConfig& cfg) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = mix_seed(seed, attempt);
    std::uint64_t n = 0;
    ChartPoint p = ChartPoint::trivial(g, k);
    for (auto& t : p.theta) t = sample_ball(kPi, mix_seed(s, n++));
    for (auto& q : p.Gamma) q = sample_haar(mix_seed(s, n++));
    for (int j = 0; j < g; ++j) {
      p.A[j] = sample_haar(mix_seed(s, n++));
      p.B[j] = sample_haar(mix_seed(s, n++));
    }
    if (distance_to_excised(p) >= cfg.reject_distance) return p;
  }
}

std::vector<UnitQuaternion> random_gauge(int k, std::uint64_t seed) {
  std::vector<UnitQuaternion> r;
  for (int i = 0; i < k; ++i) r.push_back(sample_haar(mix_seed(seed, static_cast<std::uint64_t>(i))));
  return r;
}

ChartPoint glue(const ChartPoint& p1, int i, const ChartPoint& p2, double tol) {
  if (i < 2 || i > p1.k) throw std::invalid_argument("glue: boundary index must lie in 2..k1");
  const AlgVector ti = p1.theta[i - 2];
  const AlgVector phi1 = theta1_of(p2);
  if (distance(-ti, phi1) > tol) throw MomentMismatch("glue: moments differ on the glued circle");

  const UnitQuaternion Gi = p1.Gamma[i - 2];
  ProductChain rc;
  for (int l = i + 1; l <= p1.k; ++l) rc *= boundary_holonomy(p1, l);
  const UnitQuaternion R = rc.value();
  const UnitQuaternion conj = R.inverse() * Gi;

  ChartPoint q;
  q.g = p1.g + p2.g;
  q.k = p1.k + p2.k - 2;
  for (int l = 2; l < i; ++l) {
    q.theta.push_back(p1.theta[l - 2]);
    q.Gamma.push_back(p1.Gamma[l - 2]);
  }
  for (int m = 2; m <= p2.k; ++m) {
    q.theta.push_back(p2.theta[m - 2]);
    q.Gamma.push_back(Gi * p2.Gamma[m - 2]);
  }
  for (int l = i + 1; l <= p1.k; ++l) {
    q.theta.push_back(p1.theta[l - 2]);
    q.Gamma.push_back(p1.Gamma[l - 2]);
  }
  for (int j = 0; j < p2.g; ++j) {
    q.A.push_back(conj * p2.A[j] * conj.inverse());
    q.B.push_back(conj * p2.B[j] * conj.inverse());
  }
  q.A.insert(q.A.end(), p1.A.begin(), p1.A.end());
  q.B.insert(q.B.end(), p1.B.begin(), p1.B.end());
  return q;
}

std::pair<ChartPoint, ChartPoint> split(const ChartPoint& q, int g1, int k1, int i) {
  const int g2 = q.g - g1;
  const int k2 = q.k - k1 + 2;
  if (g2 < 0 || k2 < 1 || i < 2 || i > k1) throw std::invalid_argument("split: incompatible shapes");

  ChartPoint p1 = ChartPoint::trivial(g1, k1);
  ChartPoint p2 = ChartPoint::trivial(g2, k2);
  // Boundaries of q: p1's 2..i-1, p2's 2..k2, p1's i+1..k1.
  std::size_t n = 0;
  for (int l = 2; l < i; ++l, ++n) {
    p1.theta[l - 2] = q.theta[n];
    p1.Gamma[l - 2] = q.Gamma[n];
  }
  for (int m = 2; m <= k2; ++m, ++n) {
    p2.theta[m - 2] = q.theta[n];
    p2.Gamma[m - 2] = q.Gamma[n];
  }
  for (int l = i + 1; l <= k1; ++l, ++n) {
    p1.theta[l - 2] = q.theta[n];
    p1.Gamma[l - 2] = q.Gamma[n];
  }
  for (int j = 0; j < g1; ++j) {
    p1.A[j] = q.A[g2 + j];
    p1.B[j] = q.B[g2 + j];
  }
  ProductChain rc;
  for (int l = i + 1; l <= k1; ++l) rc *= boundary_holonomy(p1, l);
  const UnitQuaternion R = rc.value();
  for (int j = 0; j < g2; ++j) {
    p2.A[j] = R * q.A[j] * R.inverse();
    p2.B[j] = R * q.B[j] * R.inverse();
  }
  // Gauge Gamma_i = 1; theta_i closes p2's relation.
  p1.Gamma[i - 2] = UnitQuaternion::identity();
  p1.theta[i - 2] = -theta1_of(p2);
  return {p1, p2};
}

double roundtrip_residual(const ChartPoint& p1, int i, const ChartPoint& p2) {
  const ChartPoint q = glue(p1, i, p2);
  const auto [s1, s2] = split(q, p1.g, p1.k, i);
  const UnitQuaternion h = p1.Gamma[i - 2];
  std::vector<UnitQuaternion> g1(p1.k, UnitQuaternion::identity()), g2(p2.k, UnitQuaternion::identity());
  g1[i - 1] = h;
  g2[0] = h;
  return std::max(distance(action(g1, p1), s1), distance(action(g2, p2), s2));
}

UnitQuaternion holonomy(const ChartPoint& p, const Word& w) {
  ProductChain c;
  for (const auto& l : w.letters) {
    const int n = index_of(l.gen);
    UnitQuaternion x;
    switch (l.gen[0]) {
      case 'a': x = p.A.at(n - 1); break;
      case 'b': x = p.B.at(n - 1); break;
      case 'd': x = boundary_holonomy(p, n); break;
      case 'g': x = p.Gamma.at(n - 2); break;
      default: throw std::invalid_argument("holonomy: unknown generator " + l.gen);
    }
    c *= l.exp > 0 ? x : x.inverse();
  }
  return c.value();
}

double word_residual(const ChartPoint& p, const std::vector<Word>& words) {
  double r = 0.0;
  for (const auto& w : words) r = std::max(r, qdist_identity(holonomy(p, w)));
  return r;
}

ChartPoint perturb(const ChartPoint& p, const std::vector<double>& x) {
  ChartPoint r = p;
  std::size_t n = 0;
  auto v = [&]() {
    AlgVector a{x[n], x[n + 1], x[n + 2]};
    n += 3;
    return a;
  };
  for (auto& t : r.theta) t = t + v();
  for (auto& q : r.Gamma) q = q * exp_su2(v());
  for (int j = 0; j < r.g; ++j) {
    r.A[j] = r.A[j] * exp_su2(v());
    r.B[j] = r.B[j] * exp_su2(v());
  }
  return r;
}

namespace {

template <class F>
Eigen::MatrixXd central_jacobian(const ChartPoint& p, F&& f, double step) {
  const int dim = p.chart().ambient_dimension();
  const std::size_t rows = f(p).size();
  Eigen::MatrixXd J(static_cast<Eigen::Index>(rows), dim);
  std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
  for (int c = 0; c < dim; ++c) {
    x[c] = step;
    const auto fp = f(perturb(p, x));
    x[c] = -step;
    const auto fm = f(perturb(p, x));
    x[c] = 0.0;
    for (std::size_t r = 0; r < rows; ++r) J(static_cast<Eigen::Index>(r), c) = (fp[r] - fm[r]) / (2 * step);
  }
  return J;
}

std::vector<double> constraint_values(const ChartPoint& p, const std::vector<Word>& words) {
  std::vector<double> r;
  for (const auto& w : words) push(r, log_su2(holonomy(p, w)));
  return r;
}

}  // namespace

TangentFrame locus_tangent(const ChartPoint& p, const std::vector<Word>& constraints, const NumericConfig& cfg) {
  const int dim = p.chart().ambient_dimension();
  if (word_residual(p, constraints) > cfg.residual_tol) throw ConstraintViolated("locus_tangent: point is off the locus");
  TangentFrame t;
  if (constraints.empty() || dim == 0) {
    for (int c = 0; c < dim; ++c) {
      std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
      e[c] = 1.0;
      t.basis.push_back(std::move(e));
    }
    return t;
  }
  const Eigen::MatrixXd J =
      central_jacobian(p, [&](const ChartPoint& q) { return constraint_values(q, constraints); }, cfg.fd_step);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double thr = cfg.svd_ratio * smax;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    t.singular_values.push_back(s(i));
    if (s(i) > thr) ++t.rank;
    if (s(i) > thr * 1e-2 && s(i) < thr * 1e2) t.borderline = true;
  }
  const auto& V = svd.matrixV();
  for (int c = t.rank; c < dim; ++c) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (int r = 0; r < dim; ++r) v[r] = V(r, c);
    t.basis.push_back(std::move(v));
  }
  return t;
}

int tangent_dimension(const ChartPoint& p, const NumericConfig& cfg) {
  const int dim = p.chart().ambient_dimension();
  if (dim == 0) return 0;
  auto embed = [](const ChartPoint& q) {
    auto r = q.flat();
    push(r, theta1_of(q));
    return r;
  };
  const Eigen::MatrixXd J = central_jacobian(p, embed, cfg.fd_step);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > cfg.svd_ratio * s(0);
  return rank;
}

namespace {

// Closed-form solve; false if some word needs the general method.
bool solve_closed_form(ChartPoint& p, const std::vector<Word>& words) {
  for (const auto& raw : words) {
    const Word w = free_reduce(raw);
    if (w.letters.size() == 1) {
      const auto& l = w.letters[0];
      const int n = index_of(l.gen);
      if (l.gen[0] == 'a') {
        p.A.at(n - 1) = UnitQuaternion::identity();
        continue;
      }
      if (l.gen[0] == 'b') {
        p.B.at(n - 1) = UnitQuaternion::identity();
        continue;
      }
      if (l.gen[0] == 'd' && n >= 2) {
        p.theta.at(n - 2) = AlgVector{};
        continue;
      }
      return false;
    }
    // Product of distinct boundary loops d_i, i >= 2: solve for the last one.
    std::vector<int> ids;
    for (const auto& l : w.letters) {
      if (l.gen[0] != 'd' || index_of(l.gen) < 2) return false;
      ids.push_back(index_of(l.gen));
    }
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    Word prefix{{w.letters.begin(), w.letters.end() - 1}};
    const auto& last = w.letters.back();
    const int n = ids.back();
    const UnitQuaternion target = holonomy(p, prefix).inverse();  // D_n^{exp} must equal this
    const UnitQuaternion Dn = last.exp > 0 ? target : target.inverse();
    const auto& G = p.Gamma.at(n - 2);
    p.theta.at(n - 2) = log_su2(G.inverse() * Dn * G);
  }
  return true;
}

bool newton(ChartPoint& p, const std::vector<Word>& words, const NumericConfig& cfg) {
  for (int it = 0; it < 60; ++it) {
    std::vector<double> F;
    try {
      F = constraint_values(p, words);
    } catch (const BranchError&) {
      return false;
    }
    double fmax = 0.0;
    for (double f : F) fmax = std::max(fmax, std::abs(f));
    if (fmax < 1e-13) return true;
    const Eigen::MatrixXd J =
        central_jacobian(p, [&](const ChartPoint& q) { return constraint_values(q, words); }, cfg.fd_step);
    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(F.data(), static_cast<Eigen::Index>(F.size()));
    const Eigen::VectorXd dx = J.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    p = perturb(p, std::vector<double>(dx.data(), dx.data() + dx.size()));
  }
  return word_residual(p, words) < cfg.relation_tol;
}

}  // namespace

ChartPoint sample_on_locus(int g, int k, const std::vector<Word>& constraints, std::uint64_t seed,
                           const NumericConfig& cfg) {
  for (std::uint64_t attempt = 0; attempt < 50; ++attempt) {
    ChartPoint p = random_point(g, k, mix_seed(seed, attempt), cfg);
    bool ok = false;
    try {
      ok = solve_closed_form(p, constraints) || newton(p, constraints, cfg);
    } catch (const BranchError&) {
      ok = false;
    }
    if (!ok || distance_to_excised(p) < cfg.reject_distance) continue;
    // Newton can run theta_i onto the sphere |theta| = pi, outside the chart.
    bool inside = true;
    for (const auto& t : p.theta) inside = inside && t.norm() < kPi - cfg.reject_distance;
    if (!inside) continue;
    if (word_residual(p, constraints) <= cfg.relation_tol) return p;
  }
  throw SamplingFailed("sample_on_locus: no point found");
}

ChartPoint insert_handle(const ChartPoint& p, int j, const UnitQuaternion& a, const UnitQuaternion& b) {
  ChartPoint r = p;
  r.A.insert(r.A.begin() + j, a);
  r.B.insert(r.B.begin() + j, b);
  ++r.g;
  return r;
}

ChartPoint forget_handle(const ChartPoint& p, int j) {
  ChartPoint r = p;
  r.A.erase(r.A.begin() + j);
  r.B.erase(r.B.begin() + j);
  --r.g;
  return r;
}

ChartPoint insert_boundary(const ChartPoint& p, int pos, const AlgVector& theta, const UnitQuaternion& gamma) {
  ChartPoint r = p;
  r.theta.insert(r.theta.begin() + (pos - 2), theta);
  r.Gamma.insert(r.Gamma.begin() + (pos - 2), gamma);
  ++r.k;
  return r;
}

ChartPoint forget_boundary(const ChartPoint& p, int pos) {
  ChartPoint r = p;
  r.theta.erase(r.theta.begin() + (pos - 2));
  r.Gamma.erase(r.Gamma.begin() + (pos - 2));
  --r.k;
  return r;
}

double membership_diagonal(const ChartPoint& p, const ChartPoint& q) { return distance(p, q); }

double membership_identification(const ChartPoint& p1, int i, const ChartPoint& p2, const ChartPoint& q) {
  const double mismatch = distance(-p1.theta.at(i - 2), theta1_of(p2));
  return std::max(mismatch, distance(glue(p1, i, p2, kInf), q));
}

double membership_zero_section(const ChartPoint& p, const std::vector<int>& capped) {
  double r = 0.0;
  const auto m = moment(p);
  for (int i : capped) r = std::max(r, m.at(i - 1).norm());
  return r;
}

double membership_hol_trivial_handle(const ChartPoint& src, const Word& w, const ChartPoint& tgt, int j) {
  return std::max(word_residual(src, {w}), distance(forget_handle(src, j), tgt));
}

double membership_hol_trivial_boundary(const ChartPoint& src, int pos, const ChartPoint& tgt) {
  return std::max(qdist_identity(boundary_holonomy(src, pos)), distance(forget_boundary(src, pos), tgt));
}

}  // namespace cobord2::mod
