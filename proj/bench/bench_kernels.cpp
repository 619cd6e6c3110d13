// Serial reference kernels against their OpenMP versions.
//   bench_kernels [max_curvature] [threads]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "packlab/descartes.hpp"
#include "packlab/orbits.hpp"
#include "packlab/reference.hpp"
#include "packlab/stats.hpp"

using namespace packlab;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-14s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

GroupPresentation schottky() {
  // Two loxodromics with well-separated pairing disks.
  const double c = std::cosh(1.5), s = std::sinh(1.5);
  return GroupPresentation({{"a", MoebiusMap(c, s, s, c)}, {"b", MoebiusMap(c, cplx(0, s), cplx(0, -s), c)}});
}

}  // namespace

int main(int argc, char** argv) {
  const long long tmax = argc > 1 ? std::atoll(argv[1]) : (1LL << 14);
  if (argc > 2) omp_set_num_threads(std::atoi(argv[2]));
  std::printf("threads %d\n", omp_get_max_threads());

  const auto root = root_quadruple_bounded();
  PackingRun a, b;
  const double gs = seconds([&] { a = reference::generate(root, tmax); });
  const double gp = seconds([&] { b = generate(root, tmax); });
  report("generate", gs, gp, a.circles == b.circles);

  const Region r = Region::disk({0.2, 0.1}, 0.3);
  std::int64_t ca = 0, cb = 0;
  const double rs = seconds([&] {
    for (int i = 0; i < 20; ++i) ca = reference::region_count(b, r, static_cast<double>(tmax));
  });
  const double rp = seconds([&] {
    for (int i = 0; i < 20; ++i) cb = region_count(b, r, static_cast<double>(tmax));
  });
  report("region_count", rs, rp, ca == cb);

  const GroupPresentation g = schottky();
  const H3Point o = H3Point::origin();
  Enumeration ea, eb;
  const double es = seconds([&] { ea = reference::enumerate(g, o, 16.0, 64); });
  const double ep = seconds([&] { eb = enumerate(g, o, 16.0, 64); });
  bool same = ea.records.size() == eb.records.size();
  for (std::size_t i = 0; same && i < ea.records.size(); ++i) same = ea.records[i].word == eb.records[i].word;
  report("enumerate", es, ep, same);

  LimitSample la, lb;
  const double ls = seconds([&] { la = reference::limit_sample(g, 9, LimitMethod::loxodromic_fixed_points); });
  const double lp = seconds([&] { lb = limit_sample(g, 9, LimitMethod::loxodromic_fixed_points); });
  report("limit_sample", ls, lp, la.points == lb.points);

  std::vector<BoxCount> ba, bb;
  const double bs = seconds([&] { ba = reference::box_counts(lb.points, 0, 14); });
  const double bp = seconds([&] { bb = box_counts(lb.points, 0, 14); });
  bool bsame = ba.size() == bb.size();
  for (std::size_t i = 0; bsame && i < ba.size(); ++i) bsame = ba[i].occupied == bb[i].occupied;
  report("box_counts", bs, bp, bsame);
  return 0;
}
