#include "packlab/reference.hpp"

namespace packlab::reference {

std::int64_t region_count(const PackingRun& run, const Region& R, double t) {
  std::int64_t count = 0;
  for (const auto& c : run.circles) {
    if (static_cast<double>(c.curvature) > t) continue;
    if (R.meets_circle(c.center(), c.radius())) ++count;
  }
  return count;
}

}  // namespace packlab::reference
