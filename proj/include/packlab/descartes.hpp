#pragma once

// Exact integer Apollonian packings generated from a Descartes quadruple
// by the four dual-circle reflections.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "packlab/moebius.hpp"

namespace packlab {

using i128 = __int128;

std::string to_string(i128 v);
/// Parses a decimal integer; throws InvalidInput on malformed text.
i128 parse_i128(const std::string& text);

namespace checked {
/// Overflow-checked arithmetic; throws Error(ErrorCode::overflow).
i128 add(i128 a, i128 b);
i128 sub(i128 a, i128 b);
i128 mul(i128 a, i128 b);
}  // namespace checked

struct GaussianInt {
  i128 re = 0;
  i128 im = 0;

  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
  friend auto operator<=>(const GaussianInt&, const GaussianInt&) = default;
};

/// Four mutually tangent circles: curvatures k and curvature-centers
/// w = k * center. A negative curvature marks the bounding circle.
struct DescartesQuadruple {
  std::array<i128, 4> k{};
  std::array<GaussianInt, 4> w{};

  friend bool operator==(const DescartesQuadruple&, const DescartesQuadruple&) = default;
};

/// 2 sum k^2 - (sum k)^2, computed exactly.
i128 descartes_form(const std::array<i128, 4>& k);
bool satisfies_descartes(const DescartesQuadruple& q);
/// Complex relation 2 sum w^2 = (sum w)^2, checked exactly.
bool satisfies_extended(const DescartesQuadruple& q);

/// Reflection in the dual circle through the three circles other than i
/// (i in 0..3): k_i -> 2 sum_{j != i} k_j - k_i, same rule for w.
DescartesQuadruple reflect(const DescartesQuadruple& q, int i);

/// Curvatures (-1, 2, 2, 3): unit bounding circle at the origin, the two
/// curvature-2 circles at +-i/2 and the curvature-3 circle at 2/3.
DescartesQuadruple root_quadruple_bounded();

/// Builds a bounded root from curvatures alone by searching for a placement
/// with Gaussian-integer curvature-centers. Throws InvalidInput if the
/// Descartes relation fails, UnboundedRoot without exactly one negative
/// curvature, and InvalidInput if no placement is found.
DescartesQuadruple root_from_curvatures(const std::array<i128, 4>& k);

/// Circle i has center w_i / k_i and radius 1 / |k_i|. Throws ZeroCurvature
/// for lines.
std::array<GeneralizedCircle, 4> realize(const DescartesQuadruple& q);

/// Tangency oracle on realized circles: external tangency for two positive
/// curvatures, internal tangency when one is the bounding circle.
bool pairwise_tangent(const DescartesQuadruple& q, double tol = kTransportTol);

struct PackedCircle {
  i128 curvature = 0;
  GaussianInt curvature_center;
  int word_len = 0;

  cplx center() const;
  double radius() const;
  GeneralizedCircle circle() const;

  friend bool operator==(const PackedCircle&, const PackedCircle&) = default;
};

/// Canonical output order: curvature, then (re, im) of the curvature-center.
bool canonical_less(const PackedCircle& a, const PackedCircle& b);

enum class DedupPolicy { exact_curvature_center };

struct PackingRun {
  DescartesQuadruple root;
  i128 max_curvature = 0;
  std::vector<PackedCircle> circles;  // canonical order
  DedupPolicy dedup = DedupPolicy::exact_curvature_center;
};

/// Every circle of the packing with curvature <= t, each exactly once, in
/// canonical order. Breadth-first over reduced reflection words, pruning a
/// branch once its new curvature exceeds t. Subtrees below the four
/// depth-one reflections are explored in parallel.
///
/// Throws UnboundedRoot unless the root has exactly one negative curvature,
/// InvalidInput if t is below the largest root curvature or the root is not
/// a Descartes quadruple, Overflow when exact arithmetic would overflow.
PackingRun generate(const DescartesQuadruple& root, i128 t);

/// Curvature -> multiplicity.
std::map<i128, std::int64_t> curvature_census(const PackingRun& run);

}  // namespace packlab
