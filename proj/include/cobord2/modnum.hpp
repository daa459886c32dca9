#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cobord2/su2.hpp"
#include "cobord2/word.hpp"

namespace cobord2::mod {

class MomentMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConstraintViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class SamplingFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NumericConfig {
  double fd_step = 1e-6;
  double svd_ratio = 1e-8;       // singular values below ratio * sigma_max count as zero
  double residual_tol = 1e-9;
  double relation_tol = 1e-10;
  double reject_distance = 1e-4;  // samplers resample points this close to Pi = -1; must exceed sqrt(2 * kBranchEpsilon)
};

/// Holonomy chart of N(g, k). Generator order: theta_2..theta_k,
/// Gamma_2..Gamma_k, A_1, B_1, ..., A_g, B_g.
struct ModuliChart {
  int g = 0;
  int k = 1;

  int dimension() const { return 6 * g + 6 * k - 6; }
  /// 3(k-1) + 3(k-1+2g), counted generator by generator.
  int ambient_dimension() const { return 3 * (k - 1) + 3 * (k - 1 + 2 * g); }
  std::vector<std::string> generators() const;
};

/// theta[i] and Gamma[i] belong to boundary i + 2; A[j], B[j] to handle j + 1.
struct ChartPoint {
  int g = 0;
  int k = 1;
  std::vector<AlgVector> theta;
  std::vector<UnitQuaternion> Gamma;
  std::vector<UnitQuaternion> A, B;

  ModuliChart chart() const { return {g, k}; }
  static ChartPoint trivial(int g, int k);
  /// Flat reals in generator order (3 per theta, 4 per quaternion w,x,y,z).
  std::vector<double> flat() const;
};

/// Max-abs coordinate difference; infinity if the charts differ.
double distance(const ChartPoint& p, const ChartPoint& q);

/// Holonomy of the loop around boundary i (1-based) seen from the base point.
UnitQuaternion boundary_holonomy(const ChartPoint& p, int i);
/// (Gamma_2 e^theta_2 Gamma_2^-1) ... [A_g, B_g].
UnitQuaternion pi_product(const ChartPoint& p);
AlgVector theta1_of(const ChartPoint& p);
/// |e^theta_1 Pi - 1|.
double relation_residual(const ChartPoint& p);
double distance_to_excised(const ChartPoint& p);

/// Signed boundary values theta_1..theta_k; boundaries flagged outgoing carry sign -1.
std::vector<AlgVector> moment(const ChartPoint& p, const std::vector<bool>& outgoing = {});

/// Gamma_i -> g_1 Gamma_i g_i^-1, theta_i -> Ad(g_i) theta_i, A, B -> Ad(g_1).
ChartPoint action(const std::vector<UnitQuaternion>& gs, const ChartPoint& p);

/// Haar holonomies and ball-distributed thetas; resamples near Pi = -1.
ChartPoint random_point(int g, int k, std::uint64_t seed, const NumericConfig& cfg = {});
std::vector<UnitQuaternion> random_gauge(int k, std::uint64_t seed);

/// Glues boundary i (2 <= i <= k1, outgoing) of p1 to boundary 1 (incoming)
/// of p2. Requires -theta_i(p1) == theta_1(p2). Result boundaries: p1's
/// 1..i-1, p2's 2..k2, p1's i+1..k1; handles: p2's, then p1's.
ChartPoint glue(const ChartPoint& p1, int i, const ChartPoint& p2, double tol = 1e-9);

/// Inverse of glue in the gauge Gamma_i = 1 on the first piece.
std::pair<ChartPoint, ChartPoint> split(const ChartPoint& q, int g1, int k1, int i);

/// Distance of split(glue(p1, p2)) from (p1, p2) after solving the gauge at the glued circle.
double roundtrip_residual(const ChartPoint& p1, int i, const ChartPoint& p2);

/// Word holonomy. Generators: a<j>, b<j>, d<i> (boundary loop), g<i> (arc, i >= 2).
UnitQuaternion holonomy(const ChartPoint& p, const Word& w);
double word_residual(const ChartPoint& p, const std::vector<Word>& words);

/// Moves p by x in ambient tangent coordinates: thetas additively,
/// holonomies by right multiplication with exp.
ChartPoint perturb(const ChartPoint& p, const std::vector<double>& x);

struct TangentFrame {
  int rank = 0;                          // rank of the constraint differential
  std::vector<std::vector<double>> basis;  // orthonormal kernel basis
  std::vector<double> singular_values;
  bool borderline = false;  // a singular value sits within two decades of the threshold
};

/// Kernel of the differential of p -> (log Hol_w(p))_w by central differences.
TangentFrame locus_tangent(const ChartPoint& p, const std::vector<Word>& constraints, const NumericConfig& cfg = {});

/// SVD rank of the chart embedding (all holonomies plus the dependent theta_1).
int tangent_dimension(const ChartPoint& p, const NumericConfig& cfg = {});

/// A point with Hol_w = 1 for every w: closed form for single generators and
/// products of boundary loops d2..dk, Gauss-Newton otherwise.
ChartPoint sample_on_locus(int g, int k, const std::vector<Word>& constraints, std::uint64_t seed,
                           const NumericConfig& cfg = {});

// Handle and boundary surgery on chart points (0-based positions).
ChartPoint insert_handle(const ChartPoint& p, int j, const UnitQuaternion& a, const UnitQuaternion& b);
ChartPoint forget_handle(const ChartPoint& p, int j);
/// Boundary inserted as number `pos` (>= 2) of the result.
ChartPoint insert_boundary(const ChartPoint& p, int pos, const AlgVector& theta, const UnitQuaternion& gamma);
ChartPoint forget_boundary(const ChartPoint& p, int pos);

// Membership residuals of the correspondence kinds.
double membership_diagonal(const ChartPoint& p, const ChartPoint& q);
double membership_identification(const ChartPoint& p1, int i, const ChartPoint& p2, const ChartPoint& q);
double membership_zero_section(const ChartPoint& p, const std::vector<int>& capped);
/// Hol_w(src) = 1 and tgt is src with handle j forgotten.
double membership_hol_trivial_handle(const ChartPoint& src, const Word& w, const ChartPoint& tgt, int j);
/// Hol_{d_pos}(src) = 1 and tgt is src with boundary pos forgotten.
double membership_hol_trivial_boundary(const ChartPoint& src, int pos, const ChartPoint& tgt);

}  // namespace cobord2::mod
