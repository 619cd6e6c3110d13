#pragma once

// JSON loaders for group presentations and representation pairs.
//
// Presentation: {"generators": [{"name": "a", "matrix": [[re,im],[re,im],[re,im],[re,im]]}, ...]}
// with entries a, b, c, d row-major.
//
// Pair: {"rho1": <presentation>, "rho2": <presentation>,
//        "pingpong": [{"name": "a", "disk": [cx,cy,r], "disk_inv": [cx,cy,r]}, ...]}
// The top-level "pingpong" list belongs to rho1. A presentation block may
// carry its own "pingpong" list, which is how rho2's disks are given.

#include <string>
#include <string_view>
#include <vector>

#include "packlab/joinings.hpp"
#include "packlab/orbits.hpp"

namespace packlab {

struct LoadOptions {
  /// Rescale matrices to determinant 1 instead of rejecting |det - 1| > 1e-9.
  bool normalize = false;
};

/// Throws InvalidInput on malformed JSON, a missing field or a determinant
/// off by more than 1e-9 (unless normalize is set).
GroupPresentation parse_presentation(std::string_view json_text, const LoadOptions& options = {});
RepresentationPair parse_pair(std::string_view json_text, const LoadOptions& options = {});

/// Ping-pong disks listed in a presentation block, reordered to generator
/// order. Empty when the block has none.
std::vector<PingPongDisks> parse_pingpong(std::string_view json_text);

std::string presentation_to_json(const GroupPresentation& pres);

/// Whole file as text; throws InvalidInput when unreadable.
std::string read_file(const std::string& path);

}  // namespace packlab
