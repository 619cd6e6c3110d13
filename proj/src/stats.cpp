#include "packlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "packlab/error.hpp"
#include "packlab/regression.hpp"

namespace packlab {

CountSeries::CountSeries(std::vector<CountPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].t > points_[i - 1].t)) throw Error(ErrorCode::invalid_input, "thresholds must increase");
    if (points_[i].n < points_[i - 1].n) throw Error(ErrorCode::invalid_input, "counts must be nondecreasing");
  }
}

CountSeries CountSeries::from_values(std::vector<double> values, const std::vector<double>& thresholds) {
  std::sort(values.begin(), values.end());
  std::vector<CountPoint> pts;
  pts.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto n = std::upper_bound(values.begin(), values.end(), t) - values.begin();
    pts.push_back({t, static_cast<std::int64_t>(n)});
  }
  return CountSeries(std::move(pts));
}

CountSeries CountSeries::from_run(const PackingRun& run, const std::vector<double>& thresholds) {
  std::vector<double> k;
  k.reserve(run.circles.size());
  for (const auto& c : run.circles) k.push_back(static_cast<double>(c.curvature));
  return from_values(std::move(k), thresholds);
}

std::vector<double> geometric_grid(double lo, double hi, int per_octave) {
  if (!(lo > 0.0) || !(hi >= lo) || per_octave < 1) throw Error(ErrorCode::invalid_input, "bad geometric grid");
  std::vector<double> out;
  const int steps = static_cast<int>(std::floor(std::log2(hi / lo) * per_octave + 1e-9));
  for (int i = 0; i <= steps; ++i) out.push_back(lo * std::exp2(static_cast<double>(i) / per_octave));
  if (out.back() < hi * (1.0 - 1e-12)) out.push_back(hi);
  return out;
}

PowerLawFit fit_power_law(const CountSeries& series, double lo, double hi) {
  std::vector<double> xs, ys;
  for (const auto& p : series.points()) {
    if (p.t < lo || p.t > hi) continue;
    if (p.n <= 0 || !(p.t > 0.0)) throw Error(ErrorCode::insufficient_data, "nonpositive value in fit window");
    xs.push_back(std::log(p.t));
    ys.push_back(std::log(static_cast<double>(p.n)));
  }
  if (xs.size() < 10) throw Error(ErrorCode::insufficient_data, "fewer than 10 points in fit window");
  const LinearFit fit = least_squares(xs, ys);
  return {fit.slope, fit.slope_stderr, lo, hi, fit.n};
}

std::pair<double, double> default_fit_window(const CountSeries& series) {
  if (series.empty()) throw Error(ErrorCode::insufficient_data, "empty series");
  const double top = series.points().back().t;
  return {top * std::exp2(-3.5), top * std::exp2(-0.5)};
}

Region Region::disk(cplx center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::invalid_input, "region disk needs positive radius");
  Region r;
  r.kind = Kind::disk;
  r.center = center;
  r.radius = radius;
  return r;
}

Region Region::rectangle(double x0, double x1, double y0, double y1) {
  if (!(x0 < x1) || !(y0 < y1)) throw Error(ErrorCode::invalid_input, "region rectangle needs positive area");
  Region r;
  r.kind = Kind::rectangle;
  r.x0 = x0;
  r.x1 = x1;
  r.y0 = y0;
  r.y1 = y1;
  return r;
}

bool Region::meets_circle(cplx c, double r) const noexcept {
  if (kind == Kind::disk) {
    const double d = std::abs(c - center);
    return std::abs(d - r) <= radius;
  }
  // Nearest and farthest points of the rectangle from the center.
  const double dx_near = std::max({x0 - c.real(), 0.0, c.real() - x1});
  const double dy_near = std::max({y0 - c.imag(), 0.0, c.imag() - y1});
  const double dx_far = std::max(std::abs(c.real() - x0), std::abs(c.real() - x1));
  const double dy_far = std::max(std::abs(c.imag() - y0), std::abs(c.imag() - y1));
  const double near = std::hypot(dx_near, dy_near);
  const double far = std::hypot(dx_far, dy_far);
  return near <= r && r <= far;
}

std::int64_t region_count(const PackingRun& run, const Region& R, double t) {
  const auto& circles = run.circles;
  const auto n = static_cast<std::int64_t>(circles.size());
  std::int64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& c = circles[static_cast<std::size_t>(i)];
    if (static_cast<double>(c.curvature) > t) continue;
    if (R.meets_circle(c.center(), c.radius())) ++count;
  }
  return count;
}

double equidistribution_ratio(const PackingRun& run, const Region& R1, const Region& R2, double t) {
  const std::int64_t den = region_count(run, R2, t);
  if (den == 0) throw Error(ErrorCode::empty_denominator, "second region contains no circles");
  return static_cast<double>(region_count(run, R1, t)) / static_cast<double>(den);
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

int omega_large(u64 n) {
  if (n == 1) return 0;
  if (is_prime(n)) return 1;
  const u64 d = pollard_rho(n);
  return omega_large(d) + omega_large(n / d);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all n < 2^64.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int count_prime_factors(std::uint64_t n) {
  if (n <= 1) return 0;
  int count = 0;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  }
  if (n == 1) return count;
  return count + omega_large(n);
}

SieveReport sieve(const std::map<i128, std::int64_t>& census, std::int64_t T, int r_max, double delta) {
  if (r_max < 1) throw Error(ErrorCode::invalid_input, "r_max must be at least 1");
  SieveReport rep;
  rep.T = T;
  rep.delta_used = delta;
  for (int r = 1; r <= r_max; ++r) rep.almost_prime_counts[r] = 0;
  for (const auto& [k, mult] : census) {
    if (k <= 0) continue;
    if (k > T) break;
    const auto n = static_cast<std::uint64_t>(k);
    if (is_prime(n)) rep.prime_count += mult;
    const int omega = count_prime_factors(n);
    for (int r = std::max(omega, 1); r <= r_max; ++r) rep.almost_prime_counts[r] += mult;
  }
  return rep;
}

}  // namespace packlab
