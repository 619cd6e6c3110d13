#pragma once

// Finitely generated groups of Moebius maps: orbit enumeration in H^3,
// critical exponent, limit-set sampling, box-counting dimension and the
// empirical Patterson-Sullivan diagnostic.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "packlab/moebius.hpp"

namespace packlab {

struct Generator {
  std::string name;
  MoebiusMap map;
};

/// Letters are indexed 2i (generator i) and 2i + 1 (its inverse).
using Word = std::vector<std::uint8_t>;

class GroupPresentation {
 public:
  /// Throws InvalidInput for an empty list, duplicate names, the identity
  /// or projectively repeated generators (including inverses).
  explicit GroupPresentation(std::vector<Generator> generators);

  std::size_t rank() const noexcept { return generators_.size(); }
  std::size_t alphabet_size() const noexcept { return letters_.size(); }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const MoebiusMap& letter(std::size_t l) const { return letters_.at(l); }
  static std::size_t inverse_letter(std::size_t l) noexcept { return l ^ 1U; }

  MoebiusMap evaluate(const Word& w) const;
  /// Generator names joined by '.', inverses suffixed with "^-1".
  std::string format(const Word& w) const;
  /// Largest d(o, g o) over the generators.
  double max_displacement(const H3Point& o) const;

 private:
  std::vector<Generator> generators_;
  std::vector<MoebiusMap> letters_;
};

/// Visits every reduced word of length 1..max_len in shortlex order,
/// passing the word and its matrix. Visiting stops below a word when the
/// callback returns false.
template <class Fn>
void for_each_reduced_word(const GroupPresentation& pres, int max_len, Fn&& fn);

struct OrbitRecord {
  Word word;
  H3Point point;
  double dist = 0.0;
};

struct EnumerateOptions {
  /// FrontierOverflow is raised once a breadth-first level grows past this.
  std::size_t frontier_cap = 20'000'000;
};

struct Enumeration {
  std::vector<OrbitRecord> records;  // sorted by (dist, shortlex word)
  double T = 0.0;
  int max_length = 0;
  double margin = 0.0;
  /// True when no word of length max_length survived the distance filter,
  /// i.e. the ball of radius T is fully explored.
  bool complete = false;
  /// Pairs of distinct reduced words with projectively equal matrices.
  std::size_t collisions = 0;
};

/// Orbit points g o with reduced word length <= L_max and d(o, g o) <= T.
/// A branch is dropped once its distance exceeds T + margin, with margin
/// twice the largest generator displacement. Parallel over first letters.
Enumeration enumerate(const GroupPresentation& pres, const H3Point& o, double T, int L_max,
                      const EnumerateOptions& options = {});

struct ExponentEstimate {
  double value = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double std_error = 0.0;
  std::size_t sample_count = 0;
};

/// Least-squares slope of log N(T) against T over 48 equally spaced
/// thresholds in [T1, T2], N(T) = #{records with dist <= T}. Throws
/// InsufficientData when the enumeration is incomplete, does not cover T2,
/// or fewer than 10 distinct shell counts fall in the window.
ExponentEstimate critical_exponent(const Enumeration& e, double T1, double T2);
/// Same estimator over a sorted list of shell variables.
ExponentEstimate shell_slope(const std::vector<double>& sorted_values, double T1, double T2);

/// Boundary chart: identity, or the fixed sphere rotation taking Infinity
/// to i and 0 to -i. The rotation is used whenever raw points reach
/// Infinity or exceed kChartBound in modulus.
struct Chart {
  bool rotated = false;

  static constexpr double kChartBound = 1e6;
  static MoebiusMap rotation();
  SpherePoint to_chart(const SpherePoint& z) const;
  SpherePoint from_chart(const SpherePoint& z) const;
};

enum class LimitMethod { orbit_accumulation, loxodromic_fixed_points };

struct LimitSample {
  std::vector<cplx> points;  // chart coordinates
  LimitMethod method = LimitMethod::loxodromic_fixed_points;
  int depth = 0;
  Chart chart;
};

/// Loxodromic method: attracting fixed point of every reduced word of
/// length <= depth with |trace| > 2 + 1e-9, in shortlex word order.
/// Orbit method: shadows of orbit points over the same words whose
/// distance lies in the top decile. Throws NoLoxodromics when the trace test
/// never passes, InvalidInput when depth < 2.
LimitSample limit_sample(const GroupPresentation& pres, int depth, LimitMethod method);

struct BoxCount {
  int level = 0;  // box side 2^-level
  std::size_t occupied = 0;
};

/// Occupied dyadic boxes (grid anchored at the origin) for each level in
/// [level_lo, level_hi]. Levels are counted in parallel.
std::vector<BoxCount> box_counts(const std::vector<cplx>& points, int level_lo, int level_hi);

/// Slope of log N(eps) against log(1/eps) over eps = 2^-level. Requires at
/// least two points and a level span >= 3. Throws InsufficientResolution
/// when the finest level already separates every point while a coarser one
/// did not.
ExponentEstimate box_dimension(const LimitSample& sample, int level_lo, int level_hi);

/// Picks a window of `levels` dyadic levels whose finest level still has
/// at most points / oversample occupied boxes.
std::pair<int, int> auto_box_window(const std::vector<cplx>& points, int levels, double oversample = 20.0);

struct BoundaryAtom {
  cplx point;  // chart coordinate
  double weight = 0.0;
};

struct PsEmpirical {
  std::vector<BoundaryAtom> atoms;  // weights sum to 1
  double unnormalized_mass = 0.0;
  double discrepancy = 0.0;
  Chart chart;
};

/// Atoms at boundary shadows of the records with weight exp(-s dist),
/// normalized to mass 1. The conformality discrepancy is the maximum over
/// generators g and cells E of a cells_per_side^2 grid on the atoms'
/// bounding box of |nu(g E) - integral_E exp(s beta_xi(o, g^-1 o)) d nu|.
/// With cells_per_side = 1 the single cell is the whole sphere. A
/// diagnostic only.
PsEmpirical ps_empirical(const GroupPresentation& pres, const Enumeration& e, const H3Point& o, double s,
                         int cells_per_side = 4);

// ---------------------------------------------------------------------------

template <class Fn>
void for_each_reduced_word(const GroupPresentation& pres, int max_len, Fn&& fn) {
  if (max_len < 1) return;
  struct Item {
    Word word;
    MoebiusMap m;
  };
  std::vector<Item> level;
  for (std::size_t l = 0; l < pres.alphabet_size(); ++l) {
    Word w{static_cast<std::uint8_t>(l)};
    if (fn(static_cast<const Word&>(w), pres.letter(l))) level.push_back({std::move(w), pres.letter(l)});
  }
  for (int len = 2; len <= max_len && !level.empty(); ++len) {
    std::vector<Item> next;
    for (const auto& item : level) {
      const std::size_t forbidden = GroupPresentation::inverse_letter(item.word.back());
      for (std::size_t l = 0; l < pres.alphabet_size(); ++l) {
        if (l == forbidden) continue;
        Word w = item.word;
        w.push_back(static_cast<std::uint8_t>(l));
        MoebiusMap m = item.m * pres.letter(l);
        if (fn(static_cast<const Word&>(w), static_cast<const MoebiusMap&>(m))) next.push_back({std::move(w), m});
      }
    }
    level = std::move(next);
  }
}

}  // namespace packlab
