#include "cobord2/su2.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cobord2 {

double AlgVector::norm() const { return std::sqrt(a * a + b * b + c * c); }

double distance(const AlgVector& u, const AlgVector& v) {
  return std::max({std::abs(u.a - v.a), std::abs(u.b - v.b), std::abs(u.c - v.c)});
}

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion& o) const {
  return {w * o.w - x * o.x - y * o.y - z * o.z,
          w * o.x + x * o.w + y * o.z - z * o.y,
          w * o.y - x * o.z + y * o.w + z * o.x,
          w * o.z + x * o.y - y * o.x + z * o.w};
}

double UnitQuaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

UnitQuaternion UnitQuaternion::normalized() const {
  const double n = norm();
  return {w / n, x / n, y / n, z / n};
}

double distance(const UnitQuaternion& p, const UnitQuaternion& q) {
  return std::max({std::abs(p.w - q.w), std::abs(p.x - q.x), std::abs(p.y - q.y),
                   std::abs(p.z - q.z)});
}

ProductChain& ProductChain::operator*=(const UnitQuaternion& q) {
  acc_ = acc_ * q;
  if (++count_ % 16 == 0) acc_ = acc_.normalized();
  return *this;
}

UnitQuaternion exp_su2(const AlgVector& v) {
  const double r = v.norm();
  if (r == 0.0) return UnitQuaternion::identity();
  // sin(r)/r loses nothing for r > 1e-8; below that use the series.
  const double s = r > 1e-8 ? std::sin(r) / r : 1.0 - r * r / 6.0;
  return {std::cos(r), v.a * s, v.b * s, v.c * s};
}

AlgVector log_su2(const UnitQuaternion& q, double eps) {
  if (q.w <= -1.0 + eps) {
    throw BranchError("log_su2: holonomy at -1 (excluded locus)");
  }
  const double vn = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (vn == 0.0) return {};
  const double angle = std::atan2(vn, q.w);
  const double s = angle / vn;
  return {q.x * s, q.y * s, q.z * s};
}

AlgVector adjoint(const UnitQuaternion& g, const AlgVector& v) {
  const UnitQuaternion p{0.0, v.a, v.b, v.c};
  const UnitQuaternion r = g * p * g.inverse();
  return {r.x, r.y, r.z};
}

UnitQuaternion commutator(const UnitQuaternion& a, const UnitQuaternion& b) {
  return a * b * a.inverse() * b.inverse();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

UnitQuaternion sample_haar(std::uint64_t seed) {
  std::mt19937_64 gen(mix_seed(seed, 0));
  std::normal_distribution<double> n01(0.0, 1.0);
  UnitQuaternion q{n01(gen), n01(gen), n01(gen), n01(gen)};
  return q.normalized();
}

AlgVector sample_ball(double radius, std::uint64_t seed) {
  if (!(radius > 0.0 && radius <= kPi)) throw std::invalid_argument("sample_ball: radius out of (0, pi]");
  std::mt19937_64 gen(mix_seed(seed, 1));
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  AlgVector d{n01(gen), n01(gen), n01(gen)};
  const double dn = d.norm();
  // Inverse CDF of r^2 density; u < 1 strictly so r < radius.
  const double r = radius * std::cbrt(u01(gen));
  return d * (r / dn);
}

}  // namespace cobord2
