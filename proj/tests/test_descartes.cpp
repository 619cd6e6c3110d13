#include <doctest.h>

#include <algorithm>
#include <limits>
#include <optional>

#include "oracles.hpp"
#include "packlab/descartes.hpp"
#include "packlab/error.hpp"

using namespace packlab;

namespace {

std::set<oracle::CircleKey> keys(const PackingRun& run) {
  std::set<oracle::CircleKey> out;
  for (const auto& c : run.circles) out.emplace(c.curvature, c.curvature_center.re, c.curvature_center.im);
  return out;
}

std::optional<ErrorCode> code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("descartes") {

TEST_CASE("i128 text round trip") {
  CHECK(to_string(i128(0)) == "0");
  CHECK(to_string(-i128(42)) == "-42");
  const i128 big = i128(1) << 100;
  CHECK(parse_i128(to_string(big)) == big);
  CHECK(parse_i128(to_string(-big)) == -big);
  CHECK_THROWS_AS(parse_i128("12x"), Error);
  CHECK_THROWS_AS(parse_i128(""), Error);
}

TEST_CASE("checked arithmetic") {
  const i128 max = std::numeric_limits<i128>::max();
  CHECK(checked::add(2, 3) == 5);
  CHECK(code_of([&] { checked::add(max, 1); }) == ErrorCode::overflow);
  CHECK(code_of([&] { checked::mul(max / 2, 3); }) == ErrorCode::overflow);
  CHECK(code_of([&] { checked::sub(-max - 1, 1); }) == ErrorCode::overflow);
}

TEST_CASE("reflect examples") {
  const auto root = root_quadruple_bounded();
  CHECK(root.k == std::array<i128, 4>{-1, 2, 2, 3});
  CHECK(satisfies_descartes(root));
  CHECK(satisfies_extended(root));
  CHECK(reflect(root, 3).k[3] == 3);
  CHECK(reflect(root, 0).k[0] == 15);
  CHECK(reflect(root, 1).k[1] == 6);
  CHECK(reflect(root, 2).k[2] == 6);
  for (int i = 0; i < 4; ++i) {
    const auto r = reflect(root, i);
    CHECK(reflect(r, i) == root);
    CHECK(satisfies_descartes(r));
    CHECK(satisfies_extended(r));
  }
  CHECK(descartes_form({-1, 2, 2, 3}) == 0);
  CHECK(descartes_form({1, 1, 1, 1}) != 0);
}

TEST_CASE("root realization is tangent") {
  const auto root = root_quadruple_bounded();
  CHECK(pairwise_tangent(root));
  const auto c = realize(root);
  CHECK(c[0].radius() == doctest::Approx(1.0));
  CHECK(std::abs(c[0].center()) < 1e-15);
  CHECK(std::abs(c[3].center() - cplx(2.0 / 3.0, 0)) < 1e-15);
  CHECK(std::abs(std::abs(c[1].center()) - 0.5) < 1e-15);
  for (int i = 0; i < 4; ++i) CHECK(pairwise_tangent(reflect(root, i)));

  DescartesQuadruple with_line{{0, 0, 1, 1}, {}};
  CHECK(code_of([&] { realize(with_line); }) == ErrorCode::zero_curvature);
}

TEST_CASE("root_from_curvatures") {
  const auto q = root_from_curvatures({-1, 2, 2, 3});
  CHECK(satisfies_descartes(q));
  CHECK(satisfies_extended(q));
  CHECK(pairwise_tangent(q));
  const auto q2 = root_from_curvatures({-2, 3, 6, 7});
  CHECK(satisfies_extended(q2));
  CHECK(pairwise_tangent(q2));
  CHECK(code_of([] { root_from_curvatures({1, 1, 1, 1}); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { root_from_curvatures({0, 0, 1, 1}); }) == ErrorCode::unbounded_root);
}

TEST_CASE("generate small thresholds") {
  const auto root = root_quadruple_bounded();
  const auto r3 = generate(root, 3);
  REQUIRE(r3.circles.size() == 5);
  CHECK(r3.circles[0].curvature == -1);
  const auto census = curvature_census(r3);
  CHECK(census.at(2) == 2);
  CHECK(census.at(3) == 2);
  CHECK(std::is_sorted(r3.circles.begin(), r3.circles.end(), canonical_less));
  CHECK(code_of([&] { generate(root, 2); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { generate(DescartesQuadruple{{0, 0, 1, 1}, {}}, 10); }) == ErrorCode::unbounded_root);
}

TEST_CASE("generate matches the brute-force oracle") {
  for (const auto& root : {root_quadruple_bounded(), root_from_curvatures({-2, 3, 6, 7})}) {
    for (i128 t : {10, 30, 100}) {
      const auto run = generate(root, t);
      const auto got = keys(run);
      CHECK(got.size() == run.circles.size());
      const auto want = oracle::brute_force_packing(root, t, 9);
      CHECK(want == oracle::brute_force_packing(root, t, 11));
      CHECK(got == want);
    }
  }
}

TEST_CASE("generated circles are consistent") {
  const auto run = generate(root_quadruple_bounded(), 200);
  for (const auto& c : run.circles) {
    CHECK(c.curvature != 0);
    if (c.curvature > 0) {
      CHECK(std::abs(c.center()) + c.radius() <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("prefix consistency") {
  const auto root = root_quadruple_bounded();
  const auto big = generate(root, 500);
  for (i128 t : {3, 20, 137, 499}) {
    const auto small = generate(root, t);
    std::vector<PackedCircle> prefix;
    for (const auto& c : big.circles) {
      if (c.curvature <= t) prefix.push_back(c);
    }
    REQUIRE(prefix.size() == small.circles.size());
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      CHECK(prefix[i].curvature == small.circles[i].curvature);
      CHECK(prefix[i].curvature_center == small.circles[i].curvature_center);
    }
  }
}

TEST_CASE("overflow is reported") {
  DescartesQuadruple scaled = root_quadruple_bounded();
  const i128 s = i128(1) << 62;
  for (int i = 0; i < 4; ++i) {
    scaled.k[i] *= s;
    scaled.w[i].re *= s;
    scaled.w[i].im *= s;
  }
  CHECK(code_of([&] { generate(scaled, 16 * s); }) == ErrorCode::overflow);
  CHECK(code_of([&] { descartes_form(scaled.k); }) == ErrorCode::overflow);
}

}  // TEST_SUITE
