#pragma once

// Counting statistics over generated packings: threshold series, power-law
// fits, region counts and prime / almost-prime curvature sieves.

#include <cstdint>
#include <map>
#include <vector>

#include "packlab/descartes.hpp"

namespace packlab {

struct CountPoint {
  double t = 0.0;
  std::int64_t n = 0;

  friend bool operator==(const CountPoint&, const CountPoint&) = default;
};

/// Threshold -> count table: t strictly increasing, n nondecreasing.
class CountSeries {
 public:
  CountSeries() = default;
  /// Throws InvalidInput when the ordering invariants fail.
  explicit CountSeries(std::vector<CountPoint> points);

  /// n(t) = #{v in values : v <= t} on the given thresholds.
  static CountSeries from_values(std::vector<double> values, const std::vector<double>& thresholds);
  /// Curvature series of a run, N(t) = #{circles with curvature <= t}.
  static CountSeries from_run(const PackingRun& run, const std::vector<double>& thresholds);

  const std::vector<CountPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

 private:
  std::vector<CountPoint> points_;
};

/// per_octave geometric thresholds from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int per_octave = 16);

struct PowerLawFit {
  double exponent = 0.0;
  double std_error = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t points = 0;
};

/// Least-squares slope of log n against log t over the series points with
/// t in [lo, hi]. Throws InsufficientData with fewer than 10 window points
/// or a zero count inside the window.
PowerLawFit fit_power_law(const CountSeries& series, double lo, double hi);
/// Default window: the top three octaves of the data, excluding the top
/// half-octave.
std::pair<double, double> default_fit_window(const CountSeries& series);

struct Region {
  enum class Kind { disk, rectangle };
  Kind kind = Kind::disk;
  // disk
  cplx center;
  double radius = 0.0;
  // rectangle
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  /// Throws InvalidInput unless radius > 0.
  static Region disk(cplx center, double radius);
  /// Throws InvalidInput unless x0 < x1 and y0 < y1.
  static Region rectangle(double x0, double x1, double y0, double y1);

  /// True when the circle |z - c| = r meets the closed region.
  bool meets_circle(cplx c, double r) const noexcept;
};

/// Circles of the run with curvature <= t whose locus meets R. Chunked over
/// the circle list in parallel with a sum reduction.
std::int64_t region_count(const PackingRun& run, const Region& R, double t);

/// region_count(R1) / region_count(R2); throws EmptyDenominator when the
/// second count is zero.
double equidistribution_ratio(const PackingRun& run, const Region& R1, const Region& R2, double t);

bool is_prime(std::uint64_t n);
/// Number of prime factors counted with multiplicity (0 for n <= 1).
int count_prime_factors(std::uint64_t n);

struct SieveReport {
  std::int64_t T = 0;
  std::int64_t prime_count = 0;
  std::map<int, std::int64_t> almost_prime_counts;  // r -> count with Omega <= r
  double delta_used = 0.0;
};

/// Prime and almost-prime curvature counts over positive curvatures <= T.
/// almost_prime_counts[r] counts curvatures with at most r prime factors
/// (with multiplicity), r = 1..r_max.
SieveReport sieve(const std::map<i128, std::int64_t>& census, std::int64_t T, int r_max, double delta = 1.3057);

}  // namespace packlab
