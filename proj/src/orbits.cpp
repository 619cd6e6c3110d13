#include "packlab/orbits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <set>

#include "packlab/error.hpp"
#include "packlab/regression.hpp"

namespace packlab {

GroupPresentation::GroupPresentation(std::vector<Generator> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw Error(ErrorCode::invalid_input, "presentation needs at least one generator");
  if (generators_.size() > 127) throw Error(ErrorCode::invalid_input, "too many generators");
  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (g.name.empty()) throw Error(ErrorCode::invalid_input, "generator names must be nonempty");
    if (!names.insert(g.name).second) throw Error(ErrorCode::invalid_input, "duplicate generator name " + g.name);
    if (std::abs(g.map.det() - cplx(1.0, 0.0)) > kTransportTol) {
      throw Error(ErrorCode::invalid_input, "generator " + g.name + " is not det-normalized");
    }
    if (projectively_equal(g.map, MoebiusMap::identity(), kTransportTol)) {
      throw Error(ErrorCode::invalid_input, "generator " + g.name + " is the identity");
    }
    letters_.push_back(g.map);
    letters_.push_back(g.map.inverse());
  }
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    for (std::size_t j = i + 1; j < letters_.size(); ++j) {
      if (projectively_equal(letters_[i], letters_[j], kTransportTol)) {
        throw Error(ErrorCode::invalid_input, "generators repeat (or are involutions) up to sign: " +
                                                  generators_[i / 2].name + ", " + generators_[j / 2].name);
      }
    }
  }
}

MoebiusMap GroupPresentation::evaluate(const Word& w) const {
  MoebiusMap m;
  for (auto l : w) m = m * letter(l);
  return m;
}

std::string GroupPresentation::format(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += generators_.at(w[i] / 2).name;
    if (w[i] % 2) out += "^-1";
  }
  return out.empty() ? "e" : out;
}

double GroupPresentation::max_displacement(const H3Point& o) const {
  double best = 0.0;
  for (const auto& g : generators_) best = std::max(best, h3_distance(o, h3_apply(g.map, o)));
  return best;
}

namespace {

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool record_less(const OrbitRecord& a, const OrbitRecord& b) {
  if (a.dist != b.dist) return a.dist < b.dist;
  return shortlex_less(a.word, b.word);
}

// Sign- and rounding-canonical key of a projective matrix.
std::array<long long, 8> projective_key(const MoebiusMap& m) {
  std::array<double, 8> v{m.a().real(), m.a().imag(), m.b().real(), m.b().imag(),
                          m.c().real(), m.c().imag(), m.d().real(), m.d().imag()};
  for (double x : v) {
    if (std::abs(x) > 1e-7) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      break;
    }
  }
  std::array<long long, 8> key{};
  for (int i = 0; i < 8; ++i) key[i] = std::llround(v[i] * 1e7);
  return key;
}

struct Pending {
  Word word;
  MoebiusMap m;
};

struct SubtreeResult {
  std::vector<OrbitRecord> records;
  std::vector<std::array<long long, 8>> keys;
  bool complete = true;
};

SubtreeResult enumerate_subtree(const GroupPresentation& pres, const H3Point& o, double T, double limit, int L_max,
                                std::size_t first, std::size_t cap) {
  SubtreeResult out;
  std::vector<Pending> level{{Word{static_cast<std::uint8_t>(first)}, pres.letter(first)}};
  for (int len = 1; len <= L_max && !level.empty(); ++len) {
    std::vector<Pending> next;
    for (auto& item : level) {
      const H3Point p = h3_apply(item.m, o);
      const double d = h3_distance(o, p);
      if (d <= T) {
        out.records.push_back({item.word, p, d});
        out.keys.push_back(projective_key(item.m));
      }
      if (d > limit) continue;
      if (len == L_max) {
        out.complete = false;
        continue;
      }
      const std::size_t forbidden = GroupPresentation::inverse_letter(item.word.back());
      for (std::size_t l = 0; l < pres.alphabet_size(); ++l) {
        if (l == forbidden) continue;
        Word w = item.word;
        w.push_back(static_cast<std::uint8_t>(l));
        next.push_back({std::move(w), item.m * pres.letter(l)});
      }
    }
    if (next.size() > cap) {
      throw Error(ErrorCode::frontier_overflow, "orbit frontier exceeds cap; lower T or L_max");
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace

Enumeration enumerate(const GroupPresentation& pres, const H3Point& o, double T, int L_max,
                      const EnumerateOptions& options) {
  if (!(T > 0.0)) throw Error(ErrorCode::invalid_input, "enumeration radius must be positive");
  if (L_max < 1) throw Error(ErrorCode::invalid_input, "L_max must be at least 1");
  Enumeration e;
  e.T = T;
  e.max_length = L_max;
  e.margin = 2.0 * pres.max_displacement(o);
  const double limit = T + e.margin;
  const auto n = static_cast<int>(pres.alphabet_size());

  std::vector<SubtreeResult> parts(n);
  std::vector<std::exception_ptr> failures(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int l = 0; l < n; ++l) {
    try {
      parts[l] = enumerate_subtree(pres, o, T, limit, L_max, static_cast<std::size_t>(l), options.frontier_cap);
    } catch (...) {
      failures[l] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<std::array<long long, 8>> keys{projective_key(MoebiusMap::identity())};
  e.records.push_back({Word{}, o, 0.0});
  e.complete = true;
  for (auto& part : parts) {
    e.complete = e.complete && part.complete;
    e.records.insert(e.records.end(), std::make_move_iterator(part.records.begin()),
                     std::make_move_iterator(part.records.end()));
    keys.insert(keys.end(), part.keys.begin(), part.keys.end());
  }
  std::sort(e.records.begin(), e.records.end(), record_less);
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i] == keys[i - 1]) ++e.collisions;
  }
  return e;
}

ExponentEstimate shell_slope(const std::vector<double>& sorted_values, double T1, double T2) {
  if (!(T1 < T2)) throw Error(ErrorCode::invalid_input, "shell window requires T1 < T2");
  constexpr int kShells = 48;
  std::vector<double> xs, ys;
  std::set<std::size_t> distinct;
  for (int k = 0; k < kShells; ++k) {
    const double t = T1 + (T2 - T1) * k / (kShells - 1);
    const auto count = static_cast<std::size_t>(
        std::upper_bound(sorted_values.begin(), sorted_values.end(), t) - sorted_values.begin());
    if (count == 0) continue;
    distinct.insert(count);
    xs.push_back(t);
    ys.push_back(std::log(static_cast<double>(count)));
  }
  if (distinct.size() < 10) {
    throw Error(ErrorCode::insufficient_data, "fewer than 10 distinct shells in the window");
  }
  const LinearFit fit = least_squares(xs, ys);
  ExponentEstimate est;
  est.value = fit.slope;
  est.std_error = fit.slope_stderr;
  est.window_lo = T1;
  est.window_hi = T2;
  est.sample_count = static_cast<std::size_t>(
      std::upper_bound(sorted_values.begin(), sorted_values.end(), T2) - sorted_values.begin());
  return est;
}

ExponentEstimate critical_exponent(const Enumeration& e, double T1, double T2) {
  if (!e.complete) throw Error(ErrorCode::insufficient_data, "enumeration is incomplete; raise L_max");
  if (T2 > e.T) throw Error(ErrorCode::insufficient_data, "window extends past the enumeration radius");
  std::vector<double> d;
  d.reserve(e.records.size());
  for (const auto& r : e.records) d.push_back(r.dist);
  return shell_slope(d, T1, T2);
}

MoebiusMap Chart::rotation() {
  const double h = 1.0 / std::sqrt(2.0);
  return {cplx(h, 0.0), cplx(0.0, -h), cplx(0.0, -h), cplx(h, 0.0)};
}

SpherePoint Chart::to_chart(const SpherePoint& z) const { return rotated ? apply_point(rotation(), z) : z; }

SpherePoint Chart::from_chart(const SpherePoint& z) const {
  return rotated ? apply_point(rotation().inverse(), z) : z;
}

namespace {

Chart choose_chart(const std::vector<SpherePoint>& raw) {
  Chart chart;
  for (const auto& p : raw) {
    if (p.is_infinite() || std::abs(p.value()) > Chart::kChartBound) {
      chart.rotated = true;
      break;
    }
  }
  return chart;
}

struct WordPoint {
  SpherePoint point;
  double dist = 0.0;
  bool valid = false;
};

// Per-level results of one first-letter subtree, in shortlex order.
std::vector<std::vector<WordPoint>> sample_subtree(const GroupPresentation& pres, const H3Point& o, int depth,
                                                   std::size_t first, LimitMethod method) {
  std::vector<std::vector<WordPoint>> levels(depth);
  struct Item {
    std::uint8_t last;
    MoebiusMap m;
  };
  std::vector<Item> level{{static_cast<std::uint8_t>(first), pres.letter(first)}};
  for (int len = 1; len <= depth; ++len) {
    auto& out = levels[len - 1];
    out.reserve(level.size());
    for (const auto& item : level) {
      WordPoint wp;
      if (method == LimitMethod::loxodromic_fixed_points) {
        if (is_loxodromic(item.m)) {
          wp.point = attracting_fixed_point(item.m);
          wp.valid = true;
        }
      } else {
        const H3Point p = h3_apply(item.m, o);
        wp.point = SpherePoint(p.z);
        wp.dist = h3_distance(o, p);
        wp.valid = true;
      }
      out.push_back(wp);
    }
    if (len == depth) break;
    std::vector<Item> next;
    next.reserve(level.size() * (pres.alphabet_size() - 1));
    for (const auto& item : level) {
      const std::size_t forbidden = GroupPresentation::inverse_letter(item.last);
      for (std::size_t l = 0; l < pres.alphabet_size(); ++l) {
        if (l == forbidden) continue;
        next.push_back({static_cast<std::uint8_t>(l), item.m * pres.letter(l)});
      }
    }
    level = std::move(next);
  }
  return levels;
}

}  // namespace

LimitSample limit_sample(const GroupPresentation& pres, int depth, LimitMethod method) {
  if (depth < 2) throw Error(ErrorCode::invalid_input, "limit sample depth must be at least 2");
  const auto n = static_cast<int>(pres.alphabet_size());
  const H3Point o = H3Point::origin();
  std::vector<std::vector<std::vector<WordPoint>>> parts(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int l = 0; l < n; ++l) parts[l] = sample_subtree(pres, o, depth, static_cast<std::size_t>(l), method);

  std::vector<WordPoint> ordered;
  for (int len = 0; len < depth; ++len) {
    for (int l = 0; l < n; ++l) {
      const auto& v = parts[l][len];
      ordered.insert(ordered.end(), v.begin(), v.end());
    }
  }

  std::vector<SpherePoint> raw;
  if (method == LimitMethod::loxodromic_fixed_points) {
    for (const auto& wp : ordered) {
      if (wp.valid) raw.push_back(wp.point);
    }
    if (raw.empty()) throw Error(ErrorCode::no_loxodromics, "no enumerated word passes |trace| > 2");
  } else {
    std::vector<double> d;
    d.reserve(ordered.size());
    for (const auto& wp : ordered) d.push_back(wp.dist);
    std::vector<double> sorted = d;
    const auto cut = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() * 9 / 10);
    std::nth_element(sorted.begin(), cut, sorted.end());
    const double threshold = *cut;
    for (const auto& wp : ordered) {
      if (wp.dist >= threshold) raw.push_back(wp.point);
    }
  }

  LimitSample sample;
  sample.method = method;
  sample.depth = depth;
  sample.chart = choose_chart(raw);
  sample.points.reserve(raw.size());
  for (const auto& p : raw) {
    const SpherePoint q = sample.chart.to_chart(p);
    // Only z = -i is sent to Infinity by the rotation.
    sample.points.push_back(q.is_infinite() ? cplx(0.0, 1.0) * Chart::kChartBound : q.value());
  }
  return sample;
}

namespace {

std::size_t count_level(const std::vector<cplx>& points, int level) {
  const double scale = std::ldexp(1.0, level);
  std::vector<std::pair<long long, long long>> cells;
  cells.reserve(points.size());
  for (const auto& p : points) {
    cells.emplace_back(static_cast<long long>(std::floor(p.real() * scale)),
                       static_cast<long long>(std::floor(p.imag() * scale)));
  }
  std::sort(cells.begin(), cells.end());
  return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

std::size_t distinct_points(const std::vector<cplx>& points) {
  std::vector<std::pair<double, double>> v;
  v.reserve(points.size());
  for (const auto& p : points) v.emplace_back(p.real(), p.imag());
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

}  // namespace

std::vector<BoxCount> box_counts(const std::vector<cplx>& points, int level_lo, int level_hi) {
  if (level_hi < level_lo) throw Error(ErrorCode::invalid_input, "empty box-count level range");
  if (level_hi > 50 || level_lo < -50) throw Error(ErrorCode::invalid_input, "box-count levels out of range");
  const int n = level_hi - level_lo + 1;
  std::vector<BoxCount> out(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) out[i] = {level_lo + i, count_level(points, level_lo + i)};
  return out;
}

ExponentEstimate box_dimension(const LimitSample& sample, int level_lo, int level_hi) {
  if (sample.points.size() < 2) throw Error(ErrorCode::insufficient_data, "box counting needs at least two points");
  if (level_hi - level_lo < 3) throw Error(ErrorCode::invalid_input, "box window must span at least 3 dyadic levels");
  const auto counts = box_counts(sample.points, level_lo, level_hi);
  const std::size_t distinct = distinct_points(sample.points);
  if (counts.back().occupied >= distinct && counts.front().occupied < distinct) {
    throw Error(ErrorCode::insufficient_resolution, "finest boxes separate every sample point");
  }
  std::vector<double> xs, ys;
  for (const auto& c : counts) {
    xs.push_back(c.level * std::log(2.0));
    ys.push_back(std::log(static_cast<double>(c.occupied)));
  }
  const LinearFit fit = least_squares(xs, ys);
  ExponentEstimate est;
  est.value = std::clamp(fit.slope, 0.0, 2.0);
  est.std_error = fit.slope_stderr;
  est.window_lo = std::ldexp(1.0, -level_hi);
  est.window_hi = std::ldexp(1.0, -level_lo);
  est.sample_count = sample.points.size();
  return est;
}

std::pair<int, int> auto_box_window(const std::vector<cplx>& points, int levels, double oversample) {
  if (points.empty()) throw Error(ErrorCode::insufficient_data, "empty sample");
  const double budget = static_cast<double>(distinct_points(points)) / oversample;
  double extent = 0.0;
  for (const auto& p : points) extent = std::max({extent, std::abs(p.real()), std::abs(p.imag())});
  // Coarsest useful level: a single box of side about the sample extent.
  const int start = extent > 0.0 ? -static_cast<int>(std::ceil(std::log2(extent))) : 0;
  int finest = start;
  for (int level = start; level <= start + 48; ++level) {
    if (static_cast<double>(count_level(points, level)) > budget) break;
    finest = level;
  }
  return {finest - levels + 1, finest};
}

PsEmpirical ps_empirical(const GroupPresentation& pres, const Enumeration& e, const H3Point& o, double s,
                         int cells_per_side) {
  if (!(s > 0.0) || s > 2.0) throw Error(ErrorCode::invalid_input, "conformal dimension must lie in (0, 2]");
  if (cells_per_side < 1) throw Error(ErrorCode::invalid_input, "partition needs at least one cell");
  if (e.records.empty()) throw Error(ErrorCode::insufficient_data, "no orbit records");

  PsEmpirical out;
  std::vector<SpherePoint> raw;
  raw.reserve(e.records.size());
  for (const auto& r : e.records) raw.emplace_back(r.point.z);
  out.chart = choose_chart(raw);

  std::vector<SpherePoint> xi;  // sphere coordinates of the atoms
  xi.reserve(raw.size());
  for (std::size_t i = 0; i < e.records.size(); ++i) {
    const double w = std::exp(-s * e.records[i].dist);
    out.unnormalized_mass += w;
    out.atoms.push_back({out.chart.to_chart(raw[i]).value(), w});
    xi.push_back(raw[i]);
  }
  for (auto& a : out.atoms) a.weight /= out.unnormalized_mass;

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& a : out.atoms) {
    x0 = std::min(x0, a.point.real());
    x1 = std::max(x1, a.point.real());
    y0 = std::min(y0, a.point.imag());
    y1 = std::max(y1, a.point.imag());
  }
  auto axis_cell = [cells_per_side](double v, double lo, double hi) -> int {
    if (v < lo || v > hi) return -1;
    if (hi == lo) return 0;
    return std::min(cells_per_side - 1, static_cast<int>((v - lo) / (hi - lo) * cells_per_side));
  };
  auto cell_of = [&](const SpherePoint& sphere_point) -> int {
    if (cells_per_side == 1) return 0;  // the whole sphere
    const SpherePoint c = out.chart.to_chart(sphere_point);
    if (c.is_infinite()) return -1;
    const int ix = axis_cell(c.value().real(), x0, x1);
    const int iy = axis_cell(c.value().imag(), y0, y1);
    return ix < 0 || iy < 0 ? -1 : ix * cells_per_side + iy;
  };

  const std::size_t cells = static_cast<std::size_t>(cells_per_side) * cells_per_side;
  for (const auto& g : pres.generators()) {
    const MoebiusMap ginv = g.map.inverse();
    const H3Point ginv_o = h3_apply(ginv, o);
    std::vector<double> pushed(cells, 0.0), predicted(cells, 0.0);
    for (std::size_t i = 0; i < xi.size(); ++i) {
      const double w = out.atoms[i].weight;
      // nu(g E) collects atoms whose preimage under g lands in E.
      const int pre = cell_of(apply_point(ginv, xi[i]));
      if (pre >= 0) pushed[pre] += w;
      const int own = cell_of(xi[i]);
      if (own >= 0) predicted[own] += w * std::exp(s * busemann(xi[i], o, ginv_o));
    }
    for (std::size_t j = 0; j < cells; ++j) {
      out.discrepancy = std::max(out.discrepancy, std::abs(pushed[j] - predicted[j]));
    }
  }
  return out;
}

}  // namespace packlab
