#include <doctest.h>

#include <cmath>
#include <optional>

#include "packlab/descartes.hpp"
#include "packlab/error.hpp"
#include "packlab/stats.hpp"

using namespace packlab;

namespace {

std::optional<ErrorCode> code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

CountSeries series_of(auto&& f, double lo, double hi) {
  std::vector<CountPoint> pts;
  for (double t : geometric_grid(lo, hi)) pts.push_back({t, static_cast<std::int64_t>(f(t))});
  return CountSeries(pts);
}

// Trial division, independent of the Miller-Rabin path.
int omega_slow(std::uint64_t n) {
  int r = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      n /= p;
      ++r;
    }
  }
  return n > 1 ? r + 1 : r;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("series invariants") {
  CHECK(code_of([] { CountSeries({{2.0, 1}, {1.0, 2}}); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { CountSeries({{1.0, 3}, {2.0, 2}}); }) == ErrorCode::invalid_input);
  const auto s = CountSeries::from_values({3.0, 1.0, 2.0, 2.0}, {1.0, 2.0, 2.5, 3.0});
  CHECK(s.points() == std::vector<CountPoint>{{1.0, 1}, {2.0, 3}, {2.5, 3}, {3.0, 4}});
  const auto g = geometric_grid(1.0, 2.0, 16);
  CHECK(g.size() == 17);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == doctest::Approx(2.0));
}

TEST_CASE("power-law fit examples") {
  const auto sq = series_of([](double t) { return t * t; }, 1000.0, 64000.0);
  const auto fit = fit_power_law(sq, 1000.0, 64000.0);
  CHECK(std::abs(fit.exponent - 2.0) < 1e-4);
  const auto exact = [] {
    std::vector<CountPoint> pts;
    for (int i = 0; i <= 20; ++i) pts.push_back({std::ldexp(1.0, i), std::int64_t(1) << (2 * i)});
    return CountSeries(pts);
  }();
  CHECK(std::abs(fit_power_law(exact, 1.0, 1048576.0).exponent - 2.0) < 1e-9);
  const auto flat = series_of([](double) { return 7.0; }, 1.0, 1000.0);
  CHECK(std::abs(fit_power_law(flat, 1.0, 1000.0).exponent) < 1e-12);
  CHECK(code_of([&] { fit_power_law(sq, 1000.0, 1100.0); }) == ErrorCode::insufficient_data);
  const auto zero = CountSeries::from_values({}, geometric_grid(1.0, 100.0));
  CHECK(code_of([&] { fit_power_law(zero, 1.0, 100.0); }) == ErrorCode::insufficient_data);
}

TEST_CASE("default fit window") {
  const auto sq = series_of([](double t) { return t * t; }, 1.0, 1024.0);
  const auto [lo, hi] = default_fit_window(sq);
  CHECK(lo == doctest::Approx(1024.0 / std::pow(2.0, 3.5)));
  CHECK(hi == doctest::Approx(1024.0 / std::sqrt(2.0)));
}

TEST_CASE("region predicates") {
  const auto d = Region::disk(0.0, 1.0);
  CHECK(d.meets_circle(0.0, 0.5));
  CHECK(d.meets_circle(2.0, 1.0));  // tangent
  CHECK_FALSE(d.meets_circle(3.0, 0.5));
  CHECK_FALSE(d.meets_circle(0.0, 5.0));  // encloses the disk
  const auto r = Region::rectangle(0.0, 1.0, 0.0, 1.0);
  CHECK(r.meets_circle(cplx(0.5, 0.5), 0.1));
  CHECK(r.meets_circle(cplx(-0.5, 0.5), 0.5));
  CHECK_FALSE(r.meets_circle(cplx(-0.5, 0.5), 0.4));
  CHECK_FALSE(r.meets_circle(cplx(0.5, 0.5), 2.0));  // rectangle strictly inside the circle
  CHECK(code_of([] { Region::disk(0.0, 0.0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { Region::rectangle(1.0, 0.0, 0.0, 1.0); }) == ErrorCode::invalid_input);
}

TEST_CASE("region counts") {
  const auto run = generate(root_quadruple_bounded(), 400);
  const auto whole = Region::disk(0.0, 1.0);
  CHECK(region_count(run, whole, 400.0) == static_cast<std::int64_t>(run.circles.size()));
  // mirror symmetry across the real axis
  const auto upper = Region::rectangle(-1.0, 1.0, 0.01, 1.0);
  const auto lower = Region::rectangle(-1.0, 1.0, -1.0, -0.01);
  CHECK(region_count(run, upper, 400.0) == region_count(run, lower, 400.0));
  CHECK(equidistribution_ratio(run, upper, lower, 400.0) == doctest::Approx(1.0));
  std::int64_t last = 0;
  for (double t : {10.0, 50.0, 100.0, 400.0}) {
    const auto n = region_count(run, upper, t);
    CHECK(n >= last);
    last = n;
  }
  const auto far = Region::disk(cplx(10, 10), 0.5);
  CHECK(code_of([&] { equidistribution_ratio(run, upper, far, 400.0); }) == ErrorCode::empty_denominator);
}

TEST_CASE("primality") {
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == (n >= 2 && omega_slow(n) == 1));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
  CHECK(count_prime_factors(1) == 0);
  CHECK(count_prime_factors(360) == 6);
  const std::uint64_t semi = 4294967291ULL * 4294967279ULL;
  CHECK(count_prime_factors(semi) == 2);
  for (std::uint64_t n = 2; n < 3000; ++n) CHECK(count_prime_factors(n) == omega_slow(n));
}

TEST_CASE("sieve examples") {
  const std::map<i128, std::int64_t> census{{2, 2}, {3, 2}, {6, 1}};
  const auto rep = sieve(census, 6, 2);
  CHECK(rep.prime_count == 4);
  CHECK(rep.almost_prime_counts.at(1) == 4);
  CHECK(rep.almost_prime_counts.at(2) == 5);

  const auto run = generate(root_quadruple_bounded(), 3000);
  const auto big = curvature_census(run);
  std::int64_t last_p = 0;
  for (std::int64_t T : {100, 1000, 3000}) {
    const auto r = sieve(big, T, 3);
    CHECK(r.prime_count >= last_p);
    CHECK(r.almost_prime_counts.at(1) <= r.almost_prime_counts.at(2));
    CHECK(r.almost_prime_counts.at(2) <= r.almost_prime_counts.at(3));
    last_p = r.prime_count;
  }
}

}  // TEST_SUITE
