#include <doctest.h>

#include "packlab/config.hpp"
#include "packlab/reference.hpp"

using namespace packlab;

namespace {

GroupPresentation fixture(const std::string& name) {
  return parse_presentation(read_file(std::string(PACKLAB_FIXTURES) + "/" + name));
}

bool same_records(const Enumeration& a, const Enumeration& b) {
  if (a.records.size() != b.records.size() || a.complete != b.complete || a.collisions != b.collisions) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.word != y.word || x.dist != y.dist || x.point.z != y.point.z || x.point.t != y.point.t) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("reference") {

TEST_CASE("generate") {
  for (const auto& root : {root_quadruple_bounded(), root_from_curvatures({-2, 3, 6, 7})}) {
    const auto a = generate(root, 3000);
    const auto b = reference::generate(root, 3000);
    CHECK(a.circles == b.circles);
  }
}

TEST_CASE("region_count") {
  const auto run = generate(root_quadruple_bounded(), 3000);
  for (const auto& r : {Region::disk(cplx(0.2, 0.1), 0.3), Region::rectangle(-0.5, 0.1, 0.0, 0.7)}) {
    for (double t : {50.0, 700.0, 3000.0}) CHECK(region_count(run, r, t) == reference::region_count(run, r, t));
  }
}

TEST_CASE("enumerate") {
  for (const char* name : {"schottky_fuchsian.json", "schottky_loxodromic.json", "gamma2.json"}) {
    const auto pres = fixture(name);
    const auto a = enumerate(pres, H3Point::origin(), 9.0, 60);
    const auto b = reference::enumerate(pres, H3Point::origin(), 9.0, 60);
    CHECK(same_records(a, b));
  }
}

TEST_CASE("limit_sample and box_counts") {
  for (const char* name : {"schottky_fuchsian.json", "schottky_loxodromic.json", "cyclic.json"}) {
    const auto pres = fixture(name);
    for (auto method : {LimitMethod::loxodromic_fixed_points, LimitMethod::orbit_accumulation}) {
      const auto a = limit_sample(pres, 7, method);
      const auto b = reference::limit_sample(pres, 7, method);
      CHECK(a.points == b.points);
      CHECK(a.chart.rotated == b.chart.rotated);
      const auto ca = box_counts(a.points, -2, 14);
      const auto cb = reference::box_counts(a.points, -2, 14);
      REQUIRE(ca.size() == cb.size());
      for (std::size_t i = 0; i < ca.size(); ++i) {
        CHECK(ca[i].level == cb[i].level);
        CHECK(ca[i].occupied == cb[i].occupied);
      }
    }
  }
}

}  // TEST_SUITE
