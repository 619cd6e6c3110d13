#pragma once

// Single-threaded reference versions of the parallel kernels. Same
// contracts and byte-identical results; kept for tests and benchmarks.

#include <cstdint>
#include <vector>

#include "packlab/descartes.hpp"
#include "packlab/orbits.hpp"
#include "packlab/stats.hpp"

namespace packlab::reference {

/// One breadth-first queue over the whole reflection tree.
PackingRun generate(const DescartesQuadruple& root, i128 t);

Enumeration enumerate(const GroupPresentation& pres, const H3Point& o, double T, int L_max,
                      const EnumerateOptions& options = {});

LimitSample limit_sample(const GroupPresentation& pres, int depth, LimitMethod method);

std::vector<BoxCount> box_counts(const std::vector<cplx>& points, int level_lo, int level_hi);

std::int64_t region_count(const PackingRun& run, const Region& R, double t);

}  // namespace packlab::reference
