#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cobord2 {

inline constexpr double kPi = 3.14159265358979323846;

/// Points with real part within this of -1 are treated as the
/// excluded locus of the exponential chart.
inline constexpr double kBranchEpsilon = 1e-9;

class BranchError : public std::runtime_error {
 public:
  explicit BranchError(const std::string& what) : std::runtime_error(what) {}
};

/// Element of su(2), identified with a pure imaginary quaternion a*i + b*j + c*k.
/// The norm is the rotation angle of the corresponding one-parameter subgroup.
struct AlgVector {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double norm() const;
  double dot(const AlgVector& o) const { return a * o.a + b * o.b + c * o.c; }

  AlgVector operator+(const AlgVector& o) const { return {a + o.a, b + o.b, c + o.c}; }
  AlgVector operator-(const AlgVector& o) const { return {a - o.a, b - o.b, c - o.c}; }
  AlgVector operator-() const { return {-a, -b, -c}; }
  AlgVector operator*(double s) const { return {a * s, b * s, c * s}; }
  bool operator==(const AlgVector&) const = default;
};

double distance(const AlgVector& u, const AlgVector& v);

/// Unit quaternion w + x*i + y*j + z*k, i.e. an element of SU(2).
struct UnitQuaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static UnitQuaternion identity() { return {}; }

  UnitQuaternion operator*(const UnitQuaternion& o) const;
  UnitQuaternion inverse() const { return {w, -x, -y, -z}; }
  UnitQuaternion normalized() const;
  double norm() const;
  bool operator==(const UnitQuaternion&) const = default;
};

/// Max-abs difference of the four components.
double distance(const UnitQuaternion& p, const UnitQuaternion& q);

/// Accumulates a product chain and renormalizes every 16 factors.
class ProductChain {
 public:
  ProductChain& operator*=(const UnitQuaternion& q);
  UnitQuaternion value() const { return acc_; }

 private:
  UnitQuaternion acc_{};
  int count_ = 0;
};

UnitQuaternion exp_su2(const AlgVector& v);

/// Inverse of exp_su2 on the open ball of radius pi. Throws BranchError when
/// q.w <= -1 + eps. In distance terms that is about sqrt(2 eps) from -1.
AlgVector log_su2(const UnitQuaternion& q, double eps = kBranchEpsilon);

/// g v g^-1.
AlgVector adjoint(const UnitQuaternion& g, const AlgVector& v);

/// a b a^-1 b^-1.
UnitQuaternion commutator(const UnitQuaternion& a, const UnitQuaternion& b);

/// Splitmix64 finalizer; used to derive per-trial seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial);

/// Haar-distributed element: normalized 4-dimensional Gaussian.
UnitQuaternion sample_haar(std::uint64_t seed);

/// Uniform direction, radius with density proportional to r^2 on [0, radius).
AlgVector sample_ball(double radius, std::uint64_t seed);

}  // namespace cobord2
