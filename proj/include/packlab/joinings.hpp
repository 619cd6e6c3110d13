#pragma once

// Pairs of representations of one free group: matched boundary samples,
// cross-ratio conformality diagnostics, the joint exponent for summed
// displacement and torus (circle-pair) volume counting.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "packlab/descartes.hpp"
#include "packlab/orbits.hpp"
#include "packlab/stats.hpp"

namespace packlab {

/// Disk D and its partner D' for one generator: g maps the exterior of D
/// onto the interior of D'.
struct PingPongDisks {
  std::string name;
  cplx center;
  double radius = 0.0;
  cplx inv_center;
  double inv_radius = 0.0;
};

/// Checks that the 2n disks are pairwise disjoint and that each generator
/// carries the boundary of its disk onto the boundary of the partner disk.
/// Throws NotSchottky otherwise.
void verify_pingpong(const GroupPresentation& pres, const std::vector<PingPongDisks>& disks);

class RepresentationPair {
 public:
  /// Throws InvalidInput unless the generator name lists are identical.
  RepresentationPair(GroupPresentation rho1, GroupPresentation rho2,
                     std::vector<PingPongDisks> pingpong1 = {}, std::vector<PingPongDisks> pingpong2 = {});

  const GroupPresentation& rho1() const noexcept { return rho1_; }
  const GroupPresentation& rho2() const noexcept { return rho2_; }
  const std::vector<PingPongDisks>& pingpong1() const noexcept { return pingpong1_; }
  const std::vector<PingPongDisks>& pingpong2() const noexcept { return pingpong2_; }

 private:
  GroupPresentation rho1_;
  GroupPresentation rho2_;
  std::vector<PingPongDisks> pingpong1_;
  std::vector<PingPongDisks> pingpong2_;
};

struct BoundaryPair {
  SpherePoint xi;
  SpherePoint eta;
  Word word;
};

struct BoundaryPairSample {
  std::vector<BoundaryPair> pairs;  // shortlex word order
  int depth = 0;
  std::size_t rejected = 0;  // words not loxodromic on both sides
};

/// Attracting fixed points of rho1(w) and rho2(w) for every reduced word of
/// length exactly depth. Requires depth >= 4; ping-pong disks, when given,
/// are verified first. Words failing the trace test on either side are
/// counted in `rejected`; NotLoxodromic when every word is rejected.
BoundaryPairSample boundary_pairs(const RepresentationPair& pair, int depth);

struct ConformalityReport {
  std::size_t quadruples_tested = 0;
  std::size_t draws = 0;
  double max_imag_in = 0.0;
  double max_imag_out = 0.0;
  double violating_fraction = 0.0;
  double tol_in = 0.0;
};

/// Draws random 4-subsets (deterministic in seed) until n_quadruples of them
/// have |Im cr(xi)| < tol_in or 10 * n_quadruples draws are spent; the
/// violating fraction counts accepted quadruples with |Im cr(eta)| > 10 tol_in.
/// Throws InsufficientConcyclic when fewer than n_quadruples / 10 pass.
ConformalityReport conformality_stat(const BoundaryPairSample& sample, std::size_t n_quadruples, double tol_in,
                                     std::uint64_t seed);

struct JointEnumeration {
  std::vector<double> summed;  // sorted d(rho1(g) o, o) + d(rho2(g) o, o) <= T
  double T = 0.0;
  bool complete = false;
};

/// Matched enumeration in the summed metric, dropping branches beyond T plus
/// both presentations' margins. Parallel over first letters.
JointEnumeration joint_enumerate(const RepresentationPair& pair, const H3Point& o, double T, int L_max);

/// Shell-slope estimate of the summed-displacement growth rate over
/// [T1, T2]. Throws InsufficientData if the enumeration is incomplete.
ExponentEstimate joint_exponent(const JointEnumeration& e, double T1, double T2);

struct TorusRecord {
  GeneralizedCircle c1;
  GeneralizedCircle c2;
  double vol = 0.0;  // rad(c1) * rad(c2)

  /// 1 / vol computed from the normalized curvatures |A1| |A2|.
  double inverse_volume() const noexcept { return c1.A() * c2.A(); }
};

/// How the second circle of each torus is obtained.
struct TorusPairing {
  std::optional<MoebiusMap> moebius;                    // C -> apply_circle(m, C)
  const std::vector<GeneralizedCircle>* paired = nullptr;  // C_i -> i-th circle of a second list

  static TorusPairing identity() { return {std::nullopt, nullptr}; }
  static TorusPairing by_moebius(const MoebiusMap& m) { return {m, nullptr}; }
  static TorusPairing by_list(const std::vector<GeneralizedCircle>& second) { return {std::nullopt, &second}; }
};

/// Normalized circles of a run, in run order (A = |curvature| exactly).
std::vector<GeneralizedCircle> circles_of(const PackingRun& run);
std::vector<GeneralizedCircle> transport(const std::vector<GeneralizedCircle>& circles, const MoebiusMap& m);

/// Tori (C, pairing(C)). Identity pairing uses C itself, untransported.
/// Throws MismatchedPairing when a paired list has a different length.
std::vector<TorusRecord> torus_records(const std::vector<GeneralizedCircle>& first, const TorusPairing& pairing);
/// N(t) = #{tori with vol >= 1/t} on the given thresholds, evaluated as
/// inverse volume <= t.
CountSeries torus_count(const std::vector<TorusRecord>& tori, const std::vector<double>& thresholds);

}  // namespace packlab
